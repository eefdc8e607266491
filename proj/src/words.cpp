#include "vst/words.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "vst/error.hpp"

namespace vst {

std::size_t WordSet::total_length() const {
  std::size_t s = 0;
  for (const auto& w : words) s += w.size();
  return s;
}

Vertex evaluate_word(const LabeledGraph& g, Vertex start, std::span<const std::uint32_t> word) {
  Vertex v = start;
  for (auto j : word) {
    if (j >= g.d) throw Error(Errc::structural, "label " + std::to_string(j) + " out of range for degree " +
                                                    std::to_string(g.d));
    v = g.succ(v, j);
  }
  return v;
}

namespace {

std::vector<std::int64_t> label_distances(const LabeledGraph& g, Vertex source) {
  std::vector<std::int64_t> dist(g.n, -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (std::uint32_t j = 0; j < g.d; ++j) {
      auto w = g.succ(v, j);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  for (auto x : dist) {
    if (x < 0) throw Error(Errc::not_connected, "not connected: some vertex is unreachable from vertex 0");
  }
  return dist;
}

std::vector<std::vector<Vertex>> layers_of(const std::vector<std::int64_t>& dist) {
  std::vector<std::vector<Vertex>> layers;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    auto k = static_cast<std::size_t>(dist[v]);
    if (k >= layers.size()) layers.resize(k + 1);
    layers[k].push_back(static_cast<Vertex>(v));
  }
  return layers;
}

}  // namespace

WordSet bfs_word_set(const LabeledGraph& g, WordMode mode) {
  WordSet out;
  out.words.assign(g.n, Word{});
  if (g.n == 0) return out;
  if (mode == WordMode::first_found) {
    std::vector<bool> seen(g.n, false);
    std::deque<Vertex> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (std::uint32_t j = 0; j < g.d; ++j) {
        auto w = g.succ(v, j);
        if (!seen[w]) {
          seen[w] = true;
          out.words[w] = out.words[v];
          out.words[w].push_back(j);
          queue.push_back(w);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(Errc::not_connected, "not connected: some vertex is unreachable from vertex 0");
    }
    return out;
  }

  auto dist = label_distances(g, 0);
  auto layers = layers_of(dist);
  std::vector<std::vector<std::pair<Vertex, std::uint32_t>>> incoming(g.n);
  for (Vertex u = 0; u < g.n; ++u) {
    for (std::uint32_t j = 0; j < g.d; ++j) incoming[g.succ(u, j)].emplace_back(u, j);
  }
  std::vector<std::uint64_t> counts(g.d, 0);
  for (std::size_t k = 1; k < layers.size(); ++k) {
    for (auto v : layers[k]) {
      // Candidate (count of incoming generator, generator, parent).
      std::tuple<std::uint64_t, std::uint32_t, Vertex> best{~0ull, ~0u, ~0u};
      for (auto [u, j] : incoming[v]) {
        if (dist[u] + 1 == dist[v]) best = std::min(best, std::make_tuple(counts[j], j, u));
      }
      auto [c, j, u] = best;
      out.words[v] = out.words[u];
      out.words[v].push_back(j);
      for (auto x : out.words[v]) ++counts[x];
    }
  }
  return out;
}

WordSet bfs_word_set(const CosetGraph& g, WordMode mode) {
  if (!g.is_cayley()) {
    throw Error(Errc::unsupported_input,
                "generator words need a Cayley graph (trivial subgroup); use a spanning factorization for coset graphs");
  }
  return bfs_word_set(g.labels(), mode);
}

void check_word_set(const LabeledGraph& g, const WordSet& w) {
  if (w.words.size() != g.n) {
    throw Error(Errc::validation, "word set has " + std::to_string(w.words.size()) + " entries for " +
                                      std::to_string(g.n) + " vertices");
  }
  if (!w.words.empty() && !w.words[0].empty()) throw Error(Errc::validation, "the identity word must be empty");
  std::vector<std::int64_t> dist;
  if (w.shortest) dist = label_distances(g, 0);
  for (std::size_t v = 1; v < g.n; ++v) {
    if (evaluate_word(g, 0, w.words[v]) != v) {
      throw Error(Errc::validation, "word for vertex " + std::to_string(v) + " does not reach it");
    }
    if (w.shortest && static_cast<std::int64_t>(w.words[v].size()) != dist[v]) {
      throw Error(Errc::validation, "word for vertex " + std::to_string(v) + " is not a shortest word");
    }
  }
}

std::vector<std::uint64_t> generator_occurrences(std::span<const Word> words, std::size_t d) {
  std::vector<std::uint64_t> counts(d, 0);
  for (const auto& w : words) {
    for (auto j : w) {
      if (j >= d) {
        throw Error(Errc::structural, "generator index " + std::to_string(j) + " out of range for degree " +
                                          std::to_string(d));
      }
      ++counts[j];
    }
  }
  return counts;
}

std::vector<std::uint64_t> generator_occurrences(const WordSet& w, std::size_t d) {
  return generator_occurrences(std::span<const Word>(w.words), d);
}

std::uint64_t regular_bound_for(const WordSet& w, std::size_t d) {
  auto counts = generator_occurrences(w, d);
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

namespace {

using CountVec = std::vector<std::uint32_t>;

struct Candidate {
  CountVec counts;
  Word word;
};

class RegularBoundSearch {
 public:
  RegularBoundSearch(const LabeledGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  ExactRegularBound run() {
    ExactRegularBound out;
    auto heuristic = bfs_word_set(g_, WordMode::load_balanced);
    out.witness = heuristic;
    out.value = regular_bound_for(heuristic, g_.d);
    out.exact = true;
    if (g_.n <= 1) return out;

    auto dist = label_distances(g_, 0);
    std::uint64_t total = 0;
    for (auto x : dist) total += static_cast<std::uint64_t>(x);
    const std::uint64_t floor_bound = (total + g_.d - 1) / g_.d;
    if (out.value == floor_bound) return out;

    if (!build_candidates(dist)) {
      out.exact = false;
      out.nodes = nodes_;
      return out;
    }

    order_.clear();
    for (Vertex v = 1; v < g_.n; ++v) order_.push_back(v);
    std::sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      return std::make_tuple(cands_[a].size(), dist[a], a) < std::make_tuple(cands_[b].size(), dist[b], b);
    });
    suffix_min_.assign(order_.size() + 1, CountVec(g_.d, 0));
    for (std::size_t i = order_.size(); i-- > 0;) {
      for (std::size_t j = 0; j < g_.d; ++j) {
        std::uint32_t m = ~0u;
        for (const auto& c : cands_[order_[i]]) m = std::min(m, c.counts[j]);
        suffix_min_[i][j] = suffix_min_[i + 1][j] + m;
      }
    }

    incumbent_ = out.value;
    floor_ = floor_bound;
    counts_.assign(g_.d, 0);
    choice_.assign(g_.n, 0);
    dfs(0);

    out.nodes = nodes_;
    out.exact = !aborted_;
    if (improved_) {
      out.value = incumbent_;
      out.witness.words.assign(g_.n, Word{});
      out.witness.shortest = true;
      for (Vertex v = 1; v < g_.n; ++v) out.witness.words[v] = cands_[v][best_choice_[v]].word;
    }
    return out;
  }

 private:
  bool build_candidates(const std::vector<std::int64_t>& dist) {
    auto layers = layers_of(dist);
    cands_.assign(g_.n, {});
    cands_[0].push_back({CountVec(g_.d, 0), Word{}});
    std::vector<std::vector<std::pair<Vertex, std::uint32_t>>> incoming(g_.n);
    for (Vertex u = 0; u < g_.n; ++u) {
      for (std::uint32_t j = 0; j < g_.d; ++j) incoming[g_.succ(u, j)].emplace_back(u, j);
    }
    std::uint64_t stored = 0;
    for (std::size_t k = 1; k < layers.size(); ++k) {
      for (auto v : layers[k]) {
        std::map<CountVec, Word> best;
        for (auto [u, j] : incoming[v]) {
          if (dist[u] + 1 != dist[v]) continue;
          for (const auto& c : cands_[u]) {
            auto counts = c.counts;
            ++counts[j];
            auto word = c.word;
            word.push_back(j);
            auto it = best.find(counts);
            if (it == best.end()) {
              best.emplace(std::move(counts), std::move(word));
            } else if (word < it->second) {
              it->second = std::move(word);
            }
          }
        }
        for (auto& [counts, word] : best) cands_[v].push_back({counts, word});
        std::sort(cands_[v].begin(), cands_[v].end(),
                  [](const Candidate& a, const Candidate& b) { return a.word < b.word; });
        stored += cands_[v].size();
        if (stored > budget_) return false;
      }
    }
    nodes_ = stored;
    return true;
  }

  void dfs(std::size_t i) {
    if (aborted_ || done_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    for (std::size_t j = 0; j < g_.d; ++j) {
      if (counts_[j] + suffix_min_[i][j] >= incumbent_) return;
    }
    if (i == order_.size()) {
      incumbent_ = *std::max_element(counts_.begin(), counts_.end());
      best_choice_ = choice_;
      improved_ = true;
      if (incumbent_ <= floor_) done_ = true;
      return;
    }
    const auto v = order_[i];
    const auto& cs = cands_[v];
    std::vector<std::pair<std::uint64_t, std::size_t>> ranked;
    ranked.reserve(cs.size());
    for (std::size_t c = 0; c < cs.size(); ++c) {
      std::uint64_t m = 0;
      for (std::size_t j = 0; j < g_.d; ++j) m = std::max<std::uint64_t>(m, counts_[j] + cs[c].counts[j]);
      ranked.emplace_back(m, c);
    }
    std::sort(ranked.begin(), ranked.end());
    for (auto [m, c] : ranked) {
      if (m >= incumbent_) break;
      for (std::size_t j = 0; j < g_.d; ++j) counts_[j] += cs[c].counts[j];
      choice_[v] = c;
      dfs(i + 1);
      for (std::size_t j = 0; j < g_.d; ++j) counts_[j] -= cs[c].counts[j];
      if (aborted_ || done_) return;
    }
  }

  const LabeledGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Candidate>> cands_;
  std::vector<Vertex> order_;
  std::vector<CountVec> suffix_min_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::size_t> choice_, best_choice_;
  std::uint64_t incumbent_ = 0, floor_ = 0;
  bool aborted_ = false, done_ = false, improved_ = false;
};

}  // namespace

ExactRegularBound regular_bound_exact(const LabeledGraph& g, std::uint64_t budget) {
  return RegularBoundSearch(g, budget).run();
}

ExactRegularBound regular_bound_exact(const CosetGraph& g, std::uint64_t budget) {
  if (!g.is_cayley()) {
    throw Error(Errc::unsupported_input, "the regular bound is defined over generator words of a Cayley graph");
  }
  return regular_bound_exact(g.labels(), budget);
}

}  // namespace vst
