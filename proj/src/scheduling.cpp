#include "vst/scheduling.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "vst/error.hpp"

namespace vst {

std::uint32_t Schedule::makespan() const {
  std::uint32_t m = 0;
  for (const auto& w : times) {
    if (!w.empty()) m = std::max(m, w.back());
  }
  return m;
}

void validate_schedule(std::span<const Word> words, std::size_t d, const Schedule& s) {
  if (s.times.size() != words.size()) {
    throw Error(Errc::contract, "schedule covers " + std::to_string(s.times.size()) + " words, expected " +
                                    std::to_string(words.size()));
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> slot_owner(d);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> used;  // (label, time) -> word
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (s.times[i].size() != words[i].size()) {
      throw Error(Errc::contract, "word " + std::to_string(i) + " has " + std::to_string(words[i].size()) +
                                      " letters but " + std::to_string(s.times[i].size()) + " times");
    }
    std::uint32_t prev = 0;
    for (std::size_t p = 0; p < words[i].size(); ++p) {
      auto label = words[i][p];
      auto t = s.times[i][p];
      if (label >= d) throw Error(Errc::contract, "label out of range in word " + std::to_string(i));
      if (t <= prev) {
        throw Error(Errc::contract, "times do not increase along word " + std::to_string(i));
      }
      prev = t;
      auto [it, fresh] = used.emplace(std::make_pair(label, t), i);
      if (!fresh) {
        throw Error(Errc::contract, "label " + std::to_string(label) + " used twice at time " + std::to_string(t) +
                                        " (words " + std::to_string(it->second) + " and " + std::to_string(i) + ")");
      }
    }
  }
}

Schedule greedy_schedule(std::span<const Word> words, std::size_t d) {
  std::vector<std::size_t> order(words.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return words[a].size() > words[b].size(); });
  std::vector<std::vector<char>> used(d);
  Schedule s;
  s.times.resize(words.size());
  for (auto i : order) {
    std::uint32_t t = 0;
    for (auto label : words[i]) {
      if (label >= d) throw Error(Errc::structural, "label out of range in word " + std::to_string(i));
      auto& row = used[label];
      ++t;
      while (t < row.size() && row[t]) ++t;
      if (t >= row.size()) row.resize(t + 1, 0);
      row[t] = 1;
      s.times[i].push_back(t);
    }
  }
  return s;
}

namespace {

struct Aborted {};

class ScheduleSearch {
 public:
  ScheduleSearch(std::span<const Word> words, std::size_t d, std::uint64_t budget)
      : words_(words), d_(d), budget_(budget) {
    std::map<Word, std::size_t> group_of;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].empty()) continue;
      auto [it, fresh] = group_of.emplace(words[i], groups_.size());
      if (fresh) groups_.push_back({});
      groups_[it->second].members.push_back(i);
    }
  }

  // Fills `out` and returns true when makespan <= t is achievable.
  bool feasible_at(std::uint32_t t, Schedule& out) {
    t_ = t;
    used_.assign(d_ * (t + 1), 0);
    remaining_.assign(d_, 0);
    free_.assign(d_, t);
    for (const auto& w : words_) {
      for (auto label : w) ++remaining_[label];
    }
    for (auto& g : groups_) {
      g.next = 0;
      g.prev_first = 0;
    }
    times_.assign(words_.size(), {});
    unplaced_ = 0;
    for (const auto& g : groups_) unplaced_ += g.members.size();
    if (!dfs()) return false;
    out.times = times_;
    return true;
  }

  [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  struct Group {
    std::vector<std::size_t> members;
    std::size_t next = 0;
    std::uint32_t prev_first = 0;
  };

  [[nodiscard]] bool is_free(std::uint32_t label, std::uint32_t t) const { return !used_[label * (t_ + 1) + t]; }

  // Number of increasing slot tuples still open for `w` (saturating).
  [[nodiscard]] std::uint64_t count_tuples(const Word& w, std::uint32_t after) const {
    const auto len = static_cast<std::uint32_t>(w.size());
    std::vector<std::uint64_t> ways(t_ + 1, 0), next(t_ + 1, 0);
    for (std::uint32_t t = std::max(1u, after + 1); t + len - 1 <= t_; ++t) ways[t] = is_free(w[0], t) ? 1 : 0;
    for (std::uint32_t p = 1; p < len; ++p) {
      std::fill(next.begin(), next.end(), 0);
      std::uint64_t prefix = 0;
      for (std::uint32_t t = 1; t <= t_; ++t) {
        if (t >= p + 1 && t + (len - 1 - p) <= t_ && is_free(w[p], t)) next[t] = prefix;
        prefix = std::min<std::uint64_t>(prefix + ways[t], 1ull << 60);
      }
      std::swap(ways, next);
    }
    std::uint64_t total = 0;
    for (auto x : ways) total = std::min<std::uint64_t>(total + x, 1ull << 60);
    return total;
  }

  bool dfs() {
    if (unplaced_ == 0) return true;
    for (std::size_t label = 0; label < d_; ++label) {
      if (remaining_[label] > free_[label]) return false;
    }
    std::size_t pick = groups_.size();
    std::uint64_t fewest = ~0ull;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const auto& grp = groups_[g];
      if (grp.next == grp.members.size()) continue;
      auto c = count_tuples(words_[grp.members[grp.next]], grp.prev_first);
      if (c < fewest) {
        fewest = c;
        pick = g;
        if (c == 0) return false;
      }
    }
    auto& grp = groups_[pick];
    const auto index = grp.members[grp.next];
    const auto saved_prev = grp.prev_first;
    ++grp.next;
    --unplaced_;
    auto& slots = times_[index];
    slots.assign(words_[index].size(), 0);
    bool ok = place_letter(index, 0, saved_prev + 1, grp);
    ++unplaced_;
    --grp.next;
    grp.prev_first = saved_prev;
    return ok;
  }

  bool place_letter(std::size_t index, std::size_t p, std::uint32_t from, Group& grp) {
    const auto& w = words_[index];
    const auto len = static_cast<std::uint32_t>(w.size());
    if (p == w.size()) {
      if (++nodes_ > budget_) throw Aborted{};
      grp.prev_first = times_[index][0];
      return dfs();
    }
    const auto label = w[p];
    const std::uint32_t lo = std::max<std::uint32_t>(from, static_cast<std::uint32_t>(p) + 1);
    const std::uint32_t hi = t_ - (len - 1 - static_cast<std::uint32_t>(p));
    for (std::uint32_t t = lo; t <= hi; ++t) {
      if (!is_free(label, t)) continue;
      used_[label * (t_ + 1) + t] = 1;
      --remaining_[label];
      --free_[label];
      times_[index][p] = t;
      bool ok = place_letter(index, p + 1, t + 1, grp);
      used_[label * (t_ + 1) + t] = 0;
      ++remaining_[label];
      ++free_[label];
      if (ok) return true;
    }
    return false;
  }

  std::span<const Word> words_;
  std::size_t d_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::uint32_t t_ = 0;
  std::vector<Group> groups_;
  std::vector<std::uint8_t> used_;
  std::vector<std::uint32_t> remaining_, free_;
  std::vector<std::vector<std::uint32_t>> times_;
  std::size_t unplaced_ = 0;
};

}  // namespace

ExactSchedule exact_min_schedule(std::span<const Word> words, std::size_t d, std::uint32_t t_max,
                                 std::uint64_t budget) {
  ExactSchedule out;
  std::vector<std::uint32_t> load(d, 0);
  std::uint32_t longest = 0;
  for (const auto& w : words) {
    longest = std::max(longest, static_cast<std::uint32_t>(w.size()));
    for (auto label : w) {
      if (label >= d) throw Error(Errc::structural, "label out of range");
      ++load[label];
    }
  }
  out.lower_bound = std::max(longest, load.empty() ? 0u : *std::max_element(load.begin(), load.end()));
  if (out.lower_bound > t_max) return out;  // proven infeasible

  auto greedy = greedy_schedule(words, d);
  const auto upper = greedy.makespan();
  ScheduleSearch search(words, d, budget);
  try {
    for (std::uint32_t t = out.lower_bound; t < upper && t <= t_max; ++t) {
      Schedule s;
      if (search.feasible_at(t, s)) {
        out.nodes = search.nodes();
        out.feasible = true;
        out.makespan = s.makespan();
        out.schedule = std::move(s);
        return out;
      }
    }
  } catch (const Aborted&) {
    out.exact = false;
  }
  out.nodes = search.nodes();
  if (upper <= t_max) {
    out.feasible = true;
    out.makespan = upper;
    out.schedule = std::move(greedy);
  }
  return out;
}

void JobShopInstance::validate() const {
  if (machines == 0) throw Error(Errc::input, "job shop needs at least one machine");
  for (auto m : one_step) {
    if (m >= machines) throw Error(Errc::input, "machine id out of range");
  }
  for (auto [a, b] : two_step) {
    if (a >= machines || b >= machines) throw Error(Errc::input, "machine id out of range");
  }
}

std::vector<Word> JobShopInstance::as_words() const {
  std::vector<Word> out;
  for (auto m : one_step) out.push_back({m});
  for (auto [a, b] : two_step) out.push_back({a, b});
  return out;
}

std::vector<std::uint32_t> JobShopInstance::loads() const {
  std::vector<std::uint32_t> load(machines, 0);
  for (auto m : one_step) ++load[m];
  for (auto [a, b] : two_step) {
    ++load[a];
    ++load[b];
  }
  return load;
}

Corollary4Verdict corollary4_feasible(const JobShopInstance& inst) {
  inst.validate();
  Corollary4Verdict v;
  const auto steps = inst.one_step.size() + 2 * inst.two_step.size();
  v.t = static_cast<std::uint32_t>((steps + inst.machines - 1) / inst.machines);
  std::vector<std::uint32_t> firsts(inst.machines, 0), seconds(inst.machines, 0);
  for (auto [a, b] : inst.two_step) {
    ++firsts[a];
    ++seconds[b];
  }
  auto load = inst.loads();
  for (std::uint32_t m = 0; m < inst.machines; ++m) {
    if (load[m] > v.t && !v.overloaded_machine) v.overloaded_machine = m;
    bool exclusive = load[m] == v.t && v.t > 0 && (firsts[m] == v.t || seconds[m] == v.t);
    if (exclusive && !v.exclusive_machine) v.exclusive_machine = m;
  }
  v.feasible = !v.overloaded_machine && !v.exclusive_machine;
  return v;
}

std::uint32_t LayerTwoProfile::max_combined() const {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < first.size(); ++i) m = std::max(m, first[i] + second[i]);
  return m;
}

LayerTwoProfile layer_two_profile(std::span<const Word> words, std::size_t d) {
  LayerTwoProfile p;
  p.first.assign(d, 0);
  p.second.assign(d, 0);
  for (const auto& w : words) {
    if (w.size() != 2) continue;
    if (w[0] >= d || w[1] >= d) throw Error(Errc::structural, "label out of range");
    ++p.first[w[0]];
    ++p.second[w[1]];
  }
  return p;
}

std::uint32_t corollary6_bound(const LayerTwoProfile& profile) { return 1 + profile.max_combined(); }

Diameter2Result diameter2_schedule(const LabeledGraph& g, std::span<const Word> words, std::uint64_t budget) {
  auto dist = bfs_distances(as_digraph(g), 0);
  std::int64_t diameter = 0;
  for (auto x : dist) {
    if (x < 0) throw Error(Errc::not_connected, "not connected: some vertex is unreachable");
    diameter = std::max(diameter, x);
  }
  if (diameter > 2) {
    throw Error(Errc::scope, "diameter-2 construction needs diameter <= 2, got " + std::to_string(diameter));
  }
  if (words.size() != g.n) throw Error(Errc::input, "need one word per vertex");
  std::vector<bool> label_seen(g.d, false);
  std::size_t layer1 = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    const auto& w = words[v];
    if (static_cast<std::int64_t>(w.size()) != dist[v] || evaluate_word(g, 0, w) != v) {
      throw Error(Errc::input, "word for vertex " + std::to_string(v) + " is not a shortest word reaching it");
    }
    if (w.size() == 1) {
      ++layer1;
      label_seen[w[0]] = true;
    }
  }
  if (layer1 != g.d || std::find(label_seen.begin(), label_seen.end(), false) != label_seen.end()) {
    throw Error(Errc::input,
                "duplicate generators: the first layer must hold one distinct vertex per generator");
  }

  Diameter2Result r;
  r.words.assign(words.begin(), words.end());
  r.profile = layer_two_profile(words, g.d);
  r.corollary6 = corollary6_bound(r.profile);
  r.instance.machines = g.d;
  for (const auto& w : words) {
    if (w.size() == 1) r.instance.one_step.push_back(w[0]);
    if (w.size() == 2) r.instance.two_step.emplace_back(w[0], w[1]);
  }
  r.corollary4 = corollary4_feasible(r.instance);
  r.theta = r.corollary4.t;

  if (diameter <= 1) {
    r.diameter_one = true;
    r.schedule.times.resize(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].size() == 1) r.schedule.times[i] = {1};
    }
    r.makespan = r.schedule.makespan();
    r.layer_two_fits = true;
    return r;
  }

  r.layer_two_fits = true;
  for (std::size_t j = 0; j < g.d; ++j) {
    if (r.profile.first[j] + r.profile.second[j] + 1 > r.theta) r.layer_two_fits = false;
  }

  auto exact = exact_min_schedule(words, g.d, r.corollary6, budget);
  r.exact = exact.exact;
  if (!exact.schedule) {
    if (exact.exact) throw Error(Errc::internal, "no schedule within the layer-two bound");
    exact.schedule = greedy_schedule(words, g.d);
  }
  r.schedule = std::move(*exact.schedule);
  validate_schedule(words, g.d, r.schedule);
  r.makespan = r.schedule.makespan();
  if (r.makespan > r.corollary6) {
    throw Error(Errc::internal, "makespan " + std::to_string(r.makespan) + " exceeds the layer-two bound");
  }
  if (r.exact) {
    if (r.layer_two_fits && r.makespan != r.theta) {
      throw Error(Errc::internal, "balanced diameter-2 instance did not schedule in theta");
    }
    if (r.corollary4.feasible != (r.makespan == r.theta)) {
      throw Error(Errc::internal, "job-shop feasibility predicate disagrees with exact search");
    }
    r.exclusivity_exception = r.makespan == r.theta + 1;
  }
  return r;
}

Diameter2Result diameter2_schedule(const CosetGraph& g,
                                   const std::optional<std::vector<std::pair<Vertex, Word>>>& layer2_words,
                                   std::uint64_t budget) {
  if (!g.is_cayley()) {
    throw Error(Errc::unsupported_input, "generator words need a Cayley graph; pass a spanning factorization instead");
  }
  const auto& lg = g.labels();
  auto dist = bfs_distances(as_digraph(lg), 0);
  std::vector<Word> words(lg.n);
  if (!layer2_words) {
    auto best = regular_bound_exact(lg, budget);
    words = best.witness.words;
  } else {
    std::vector<bool> have(lg.n, false);
    for (std::uint32_t j = 0; j < lg.d; ++j) {
      auto v = lg.succ(0, j);
      if (v == 0 || have[v]) {
        throw Error(Errc::input, "duplicate generators: generator " + std::to_string(j) +
                                     " does not reach a new first-layer vertex");
      }
      have[v] = true;
      words[v] = {j};
    }
    for (const auto& [v, w] : *layer2_words) {
      if (v >= lg.n || dist[v] != 2 || w.size() != 2 || have[v] || evaluate_word(lg, 0, w) != v) {
        throw Error(Errc::input, "supplied word for vertex " + std::to_string(v) + " is not a two-letter word to a "
                                     "second-layer vertex");
      }
      have[v] = true;
      words[v] = w;
    }
    for (Vertex v = 1; v < lg.n; ++v) {
      if (!have[v]) throw Error(Errc::input, "no word supplied for vertex " + std::to_string(v));
    }
  }
  return diameter2_schedule(lg, words, budget);
}

Classification classify(std::span<const Word> words, std::size_t d, const Schedule& s, const LayerProfile& profile) {
  Classification c;
  auto counts = generator_occurrences(words, d);
  std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  c.max_load = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  c.average_load = (total + d - 1) / d;
  const auto nd = static_cast<std::uint64_t>(profile.vertices) * d;
  c.distance_bound = (profile.pair_distance_sum() + nd - 1) / nd;
  c.makespan = s.makespan();
  c.balanced = c.max_load == c.average_load;
  c.is_short = c.average_load == c.distance_bound;
  c.optimal = c.max_load == c.distance_bound;
  c.minimum = c.makespan == c.max_load;
  if (!(c.distance_bound <= c.average_load && c.average_load <= c.max_load && c.max_load <= c.makespan)) {
    throw Error(Errc::internal, "ordering chain violated: " + std::to_string(c.distance_bound) + " <= " +
                                    std::to_string(c.average_load) + " <= " + std::to_string(c.max_load) +
                                    " <= " + std::to_string(c.makespan));
  }
  return c;
}

}  // namespace vst
