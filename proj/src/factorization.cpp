#include "vst/factorization.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "vst/error.hpp"
#include "vst/layers.hpp"

namespace vst {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

LabeledGraph OneFactorization::labeled() const {
  LabeledGraph g;
  g.n = n;
  g.d = d;
  g.next.resize(n * d);
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t v = 0; v < n; ++v) g.next[v * d + f] = succ[f][v];
  }
  return g;
}

void check_one_factorization(const OneFactorization& f, const Digraph& g) {
  if (f.n != g.n) throw Error(Errc::validation, "factorization vertex count differs from the digraph");
  if (f.factor_of.size() != g.arcs.size() || g.arcs.size() != f.n * f.d) {
    throw Error(Errc::validation, "factorization does not cover the digraph's " + std::to_string(g.arcs.size()) +
                                      " arcs");
  }
  if (f.succ.size() != f.d || f.arc_of.size() != f.d) throw Error(Errc::validation, "wrong number of factors");
  for (std::size_t k = 0; k < f.d; ++k) {
    if (f.succ[k].size() != f.n || f.arc_of[k].size() != f.n) {
      throw Error(Errc::validation, "factor " + std::to_string(k) + " has the wrong size");
    }
    std::vector<bool> hit(f.n, false);
    for (std::size_t v = 0; v < f.n; ++v) {
      auto w = f.succ[k][v];
      if (w >= f.n || hit[w]) {
        throw Error(Errc::validation, "factor " + std::to_string(k) + " is not a bijection at vertex " +
                                          std::to_string(v));
      }
      hit[w] = true;
    }
  }
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    auto k = f.factor_of[a];
    auto [s, t] = g.arcs[a];
    if (k >= f.d || f.arc_of[k][s] != a || f.succ[k][s] != t) {
      throw Error(Errc::validation, "arc " + std::to_string(a) + " is not claimed consistently by one factor");
    }
  }
}

namespace {

// Augmenting-path perfect matching on the double cover restricted to arcs
// still available. Returns the chosen arc per left vertex.
std::vector<std::size_t> perfect_matching(const Digraph& g, const std::vector<std::vector<std::size_t>>& out,
                                          const std::vector<bool>& available) {
  const std::size_t n = g.n;
  std::vector<std::size_t> left(n, kNone), right(n, kNone);  // arc ids
  for (std::size_t u = 0; u < n; ++u) {
    for (auto a : out[u]) {
      if (available[a] && right[g.arcs[a].second] == kNone) {
        left[u] = a;
        right[g.arcs[a].second] = a;
        break;
      }
    }
  }
  std::vector<std::size_t> via(n);  // right vertex -> arc used to reach it
  std::vector<std::size_t> stamp(n, kNone);
  for (std::size_t root = 0; root < n; ++root) {
    if (left[root] != kNone) continue;
    std::deque<std::size_t> queue{root};
    std::size_t free_right = kNone;
    while (!queue.empty() && free_right == kNone) {
      auto x = queue.front();
      queue.pop_front();
      for (auto a : out[x]) {
        if (!available[a]) continue;
        auto y = g.arcs[a].second;
        if (stamp[y] == root) continue;
        stamp[y] = root;
        via[y] = a;
        if (right[y] == kNone) {
          free_right = y;
          break;
        }
        queue.push_back(g.arcs[right[y]].first);
      }
    }
    if (free_right == kNone) throw Error(Errc::internal, "regular double cover lacks a perfect matching");
    // Flip the alternating path back to the root.
    auto y = free_right;
    while (true) {
      auto a = via[y];
      auto x = g.arcs[a].first;
      auto previous = left[x];
      left[x] = a;
      right[y] = a;
      if (x == root) break;
      y = g.arcs[previous].second;
    }
  }
  return left;
}

std::vector<std::vector<std::size_t>> out_arcs(const Digraph& g) {
  std::vector<std::vector<std::size_t>> out(g.n);
  for (std::size_t a = 0; a < g.arcs.size(); ++a) out[g.arcs[a].first].push_back(a);
  return out;
}

OneFactorization from_matchings(const Digraph& g, std::size_t d, const std::vector<std::vector<std::size_t>>& rounds) {
  OneFactorization f;
  f.n = g.n;
  f.d = d;
  f.factor_of.assign(g.arcs.size(), 0);
  f.succ.assign(d, std::vector<Vertex>(g.n));
  f.arc_of.assign(d, std::vector<std::size_t>(g.n));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t u = 0; u < g.n; ++u) {
      auto a = rounds[k][u];
      f.factor_of[a] = static_cast<std::uint32_t>(k);
      f.succ[k][u] = g.arcs[a].second;
      f.arc_of[k][u] = a;
    }
  }
  return f;
}

}  // namespace

OneFactorization one_factorize(const Digraph& g) {
  const auto d = g.require_regular();
  auto out = out_arcs(g);
  std::vector<bool> available(g.arcs.size(), true);
  std::vector<std::vector<std::size_t>> rounds;
  for (std::size_t k = 0; k < d; ++k) {
    auto m = perfect_matching(g, out, available);
    for (auto a : m) available[a] = false;
    rounds.push_back(std::move(m));
  }
  return from_matchings(g, d, rounds);
}

SpanningFactorization spanning_factorization_from_cayley(const CosetGraph& g, const WordSet& w) {
  if (!g.is_cayley()) {
    throw Error(Errc::unsupported_input, "generator classes are 1-factors only for Cayley graphs");
  }
  check_word_set(g.labels(), w);
  SpanningFactorization out;
  auto& f = out.base;
  f.n = g.vertex_count();
  f.d = g.degree();
  f.factor_of.resize(f.n * f.d);
  f.succ.assign(f.d, std::vector<Vertex>(f.n));
  f.arc_of.assign(f.d, std::vector<std::size_t>(f.n));
  for (std::size_t v = 0; v < f.n; ++v) {
    for (std::size_t j = 0; j < f.d; ++j) {
      f.factor_of[v * f.d + j] = static_cast<std::uint32_t>(j);
      f.succ[j][v] = g.target(static_cast<Vertex>(v), static_cast<std::uint32_t>(j));
      f.arc_of[j][v] = v * f.d + j;
    }
  }
  out.words = w.words;
  auto check = verify_spanning(f, out.words, as_digraph(g));
  if (!check) throw Error(Errc::internal, "Cayley word set failed the spanning check: " + check.reason);
  return out;
}

SpanningCheck verify_spanning(const OneFactorization& f, std::span<const Word> words) {
  SpanningCheck r;
  if (words.size() != f.n) {
    r.reason = "word list has " + std::to_string(words.size()) + " words for " + std::to_string(f.n) +
               " vertices, so the endpoints cannot be all vertices";
    return r;
  }
  if (!words.empty() && !words[0].empty()) {
    r.reason = "the first word must be empty";
    return r;
  }
  for (const auto& w : words) {
    for (auto k : w) {
      if (k >= f.d) {
        r.reason = "factor index " + std::to_string(k) + " out of range";
        return r;
      }
    }
  }
  std::vector<std::size_t> owner(f.n);
  for (Vertex v = 0; v < f.n; ++v) {
    std::fill(owner.begin(), owner.end(), kNone);
    for (std::size_t i = 0; i < words.size(); ++i) {
      Vertex x = v;
      for (auto k : words[i]) x = f.succ[k][x];
      if (owner[x] != kNone) {
        r.reason = "from vertex " + std::to_string(v) + " words " + std::to_string(owner[x]) + " and " +
                   std::to_string(i) + " both end at " + std::to_string(x);
        r.vertex = v;
        r.first = owner[x];
        r.second = i;
        return r;
      }
      owner[x] = i;
    }
  }
  r.ok = true;
  return r;
}

SpanningCheck verify_spanning(const OneFactorization& f, std::span<const Word> words, const Digraph& g) {
  try {
    check_one_factorization(f, g);
  } catch (const Error& e) {
    SpanningCheck r;
    r.reason = e.what();
    return r;
  }
  return verify_spanning(f, words);
}

namespace {

struct BudgetExhausted {};

class FactorizationSearch {
 public:
  FactorizationSearch(const Digraph& g, const SearchOptions& options) : g_(g), options_(options) {}

  SearchOutcome run() {
    SearchOutcome out;
    d_ = g_.require_regular();
    if (!strongly_connected(g_)) throw Error(Errc::not_connected, "not connected: digraph is not strongly connected");
    out_ = out_arcs(g_);
    try {
      for (std::uint32_t extra = 0; extra <= options_.max_extra_length; ++extra) {
        extra_ = extra;
        std::vector<bool> available(g_.arcs.size(), true);
        std::vector<std::vector<std::size_t>> rounds;
        if (enumerate_level(0, available, rounds)) break;
      }
    } catch (const BudgetExhausted&) {
      out.nodes = nodes_;
      out.best_depth = best_depth_;
      out.factorizations_tried = tried_;
      out.report = "unknown: budget of " + std::to_string(options_.budget) + " nodes exhausted after " +
                   std::to_string(tried_) + " factorizations; deepest partial word list had " +
                   std::to_string(best_depth_) + " of " + std::to_string(g_.n) + " words";
      return out;
    }
    out.nodes = nodes_;
    out.best_depth = best_depth_;
    out.factorizations_tried = tried_;
    if (found_) {
      out.result = std::move(found_);
      out.is_short = found_extra_ == 0;
      auto check = verify_spanning(out.result->base, out.result->words, g_);
      if (!check) throw Error(Errc::internal, "search produced an invalid spanning factorization: " + check.reason);
      out.report = std::string(out.is_short ? "short" : "non-short") + " spanning factorization found after " +
                   std::to_string(tried_) + " factorizations and " + std::to_string(nodes_) + " nodes";
    } else {
      out.exhausted = true;
      out.report = "none: no spanning factorization with words at most " +
                   std::to_string(options_.max_extra_length) + " longer than the distance";
    }
    return out;
  }

 private:
  void tick() {
    if (++nodes_ > options_.budget) throw BudgetExhausted{};
  }

  // Enumerates factor `level` as a perfect matching on the remaining arcs.
  // Vertex 0 always takes its lowest remaining arc, so label permutations of
  // the same decomposition are not revisited.
  bool enumerate_level(std::size_t level, std::vector<bool>& available,
                       std::vector<std::vector<std::size_t>>& rounds) {
    if (level == d_) {
      ++tried_;
      auto f = from_matchings(g_, d_, rounds);
      return try_words(f);
    }
    std::vector<std::size_t> chosen(g_.n, kNone);
    std::vector<bool> right_used(g_.n, false);
    return match_vertex(0, level, available, rounds, chosen, right_used);
  }

  bool match_vertex(std::size_t u, std::size_t level, std::vector<bool>& available,
                    std::vector<std::vector<std::size_t>>& rounds, std::vector<std::size_t>& chosen,
                    std::vector<bool>& right_used) {
    if (u == g_.n) {
      for (auto a : chosen) available[a] = false;
      rounds.push_back(chosen);
      bool done = enumerate_level(level + 1, available, rounds);
      rounds.pop_back();
      for (auto a : chosen) available[a] = true;
      return done;
    }
    for (auto a : out_[u]) {
      if (!available[a] || right_used[g_.arcs[a].second]) continue;
      tick();
      chosen[u] = a;
      right_used[g_.arcs[a].second] = true;
      bool viable = true;
      for (std::size_t x = u + 1; x < g_.n && viable; ++x) {
        viable = std::any_of(out_[x].begin(), out_[x].end(), [&](std::size_t b) {
          return available[b] && !right_used[g_.arcs[b].second];
        });
      }
      if (viable && match_vertex(u + 1, level, available, rounds, chosen, right_used)) return true;
      right_used[g_.arcs[a].second] = false;
      chosen[u] = kNone;
      if (u == 0) break;
    }
    return false;
  }

  struct WordCandidate {
    Word word;
    std::vector<Vertex> image;  // v -> v * word
  };

  bool try_words(const OneFactorization& f) {
    const std::size_t n = g_.n;
    auto lg = f.labeled();
    std::vector<std::vector<std::int64_t>> dist(n);
    auto dg = as_digraph(lg);
    for (Vertex v = 0; v < n; ++v) dist[v] = bfs_distances(dg, v);
    const auto& d0 = dist[0];
    std::vector<std::int64_t> slack(n, std::numeric_limits<std::int64_t>::max());
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex t = 1; t < n; ++t) slack[x] = std::min(slack[x], dist[x][t] - d0[t]);
    }

    // Candidate words per target, shortest first.
    std::vector<std::vector<WordCandidate>> cands(n);
    Word word;
    std::function<void(Vertex)> grow = [&](Vertex x) {
      auto len = static_cast<std::int64_t>(word.size());
      if (x != 0 && len >= d0[x] && len <= d0[x] + extra_) {
        tick();
        WordCandidate c{word, std::vector<Vertex>(n)};
        for (Vertex v = 0; v < n; ++v) c.image[v] = evaluate_word(lg, v, word);
        cands[x].push_back(std::move(c));
      }
      for (std::uint32_t k = 0; k < f.d; ++k) {
        auto y = lg.succ(x, k);
        if (len + 1 + slack[y] > static_cast<std::int64_t>(extra_)) continue;
        word.push_back(k);
        grow(y);
        word.pop_back();
      }
    };
    grow(0);
    for (auto& c : cands) {
      std::stable_sort(c.begin(), c.end(), [](const WordCandidate& a, const WordCandidate& b) {
        return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
      });
    }

    used_.assign(n * n, 0);
    for (Vertex v = 0; v < n; ++v) used_[v * n + v] = 1;
    assigned_.assign(n, kNone);
    if (!place(1, cands, d0)) return false;

    SpanningFactorization sf;
    sf.base = f;
    sf.words.assign(n, Word{});
    for (Vertex t = 1; t < n; ++t) sf.words[t] = cands[t][assigned_[t]].word;
    found_ = std::move(sf);
    found_extra_ = extra_;
    return true;
  }

  bool fits(const WordCandidate& c) const {
    const std::size_t n = g_.n;
    for (Vertex v = 0; v < n; ++v) {
      if (used_[v * n + c.image[v]]) return false;
    }
    return true;
  }

  bool place(std::size_t depth, const std::vector<std::vector<WordCandidate>>& cands,
             const std::vector<std::int64_t>& d0) {
    const std::size_t n = g_.n;
    best_depth_ = std::max(best_depth_, depth);
    if (depth == n) return true;
    // Most constrained target first.
    std::size_t target = kNone, fewest = kNone;
    for (Vertex t = 1; t < n; ++t) {
      if (assigned_[t] != kNone) continue;
      std::size_t count = 0;
      for (const auto& c : cands[t]) {
        if (fits(c) && ++count >= fewest) break;
      }
      if (count < fewest || (count == fewest && d0[t] < d0[target])) {
        fewest = count;
        target = t;
      }
      if (fewest == 0) return false;
    }
    for (std::size_t i = 0; i < cands[target].size(); ++i) {
      const auto& c = cands[target][i];
      if (!fits(c)) continue;
      tick();
      for (Vertex v = 0; v < n; ++v) used_[v * n + c.image[v]] = 1;
      assigned_[target] = i;
      if (place(depth + 1, cands, d0)) return true;
      assigned_[target] = kNone;
      for (Vertex v = 0; v < n; ++v) used_[v * n + c.image[v]] = 0;
    }
    return false;
  }

  const Digraph& g_;
  SearchOptions options_;
  std::size_t d_ = 0;
  std::vector<std::vector<std::size_t>> out_;
  std::uint32_t extra_ = 0;
  std::uint64_t nodes_ = 0;
  std::size_t best_depth_ = 0;
  std::size_t tried_ = 0;
  std::vector<std::uint8_t> used_;
  std::vector<std::size_t> assigned_;
  std::optional<SpanningFactorization> found_;
  std::uint32_t found_extra_ = 0;
};

}  // namespace

SearchOutcome search_spanning_factorization(const Digraph& g, const SearchOptions& options) {
  return FactorizationSearch(g, options).run();
}

}  // namespace vst
