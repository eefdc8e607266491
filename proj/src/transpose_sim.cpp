#include "vst/transpose_sim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "vst/error.hpp"

namespace vst {

namespace {

// Own check of the two schedule rules; the simulator does not reuse the
// scheduler's validator.
void require_consistent(std::span<const Word> words, std::size_t d, const Schedule& s) {
  if (s.times.size() != words.size()) throw Error(Errc::contract, "schedule and word list differ in size");
  std::set<std::pair<std::uint32_t, std::uint32_t>> taken;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (s.times[i].size() != words[i].size()) {
      throw Error(Errc::contract, "schedule entry " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t p = 0; p < words[i].size(); ++p) {
      if (words[i][p] >= d) throw Error(Errc::contract, "label out of range");
      if (p > 0 && s.times[i][p] <= s.times[i][p - 1]) {
        throw Error(Errc::contract, "schedule times do not increase along word " + std::to_string(i));
      }
      if (s.times[i][p] == 0) throw Error(Errc::contract, "time slots start at 1");
      if (!taken.emplace(words[i][p], s.times[i][p]).second) {
        throw Error(Errc::contract, "label " + std::to_string(words[i][p]) + " scheduled twice at time " +
                                        std::to_string(s.times[i][p]));
      }
    }
  }
}

std::vector<TimedPath> expand(const LabeledGraph& g, std::span<const Word> words, const Schedule& s) {
  std::vector<TimedPath> paths;
  paths.reserve(g.n * (words.empty() ? 0 : words.size() - 1));
  for (Vertex h = 0; h < g.n; ++h) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].empty()) continue;
      TimedPath path;
      path.source = h;
      Vertex at = h;
      for (std::size_t p = 0; p < words[i].size(); ++p) {
        path.steps.push_back({at, words[i][p], s.times[i][p]});
        at = g.succ(at, words[i][p]);
      }
      path.destination = at;
      paths.push_back(std::move(path));
    }
  }
  return paths;
}

}  // namespace

std::vector<TimedPath> expand_cayley_paths(const CosetGraph& g, const WordSet& words, const Schedule& schedule) {
  if (!g.is_cayley()) throw Error(Errc::unsupported_input, "generator paths need a Cayley graph");
  if (words.words.size() != g.vertex_count()) throw Error(Errc::contract, "word set does not cover every vertex");
  require_consistent(words.words, g.degree(), schedule);
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    if (evaluate_word(g.labels(), 0, words.words[v]) != v) {
      throw Error(Errc::contract, "word for vertex " + std::to_string(v) + " does not reach it");
    }
  }
  return expand(g.labels(), words.words, schedule);
}

std::vector<TimedPath> expand_factor_paths(const SpanningFactorization& f, const Schedule& schedule) {
  auto check = verify_spanning(f.base, f.words);
  if (!check) throw Error(Errc::contract, "refusing to expand a word list that is not spanning: " + check.reason);
  require_consistent(f.words, f.base.d, schedule);
  return expand(f.base.labeled(), f.words, schedule);
}

TransposeTrace run_transpose(const LabeledGraph& g, std::span<const TimedPath> paths) {
  TransposeTrace trace;
  std::vector<bool> ok(paths.size(), true);
  std::uint32_t horizon = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& path = paths[i];
    std::uint32_t prev = 0;
    for (const auto& step : path.steps) {
      if (step.tail >= g.n || step.label >= g.d || step.time <= prev) ok[i] = false;
      prev = step.time;
    }
    if (path.source >= g.n || path.destination >= g.n || path.steps.empty() ||
        path.steps.front().tail != path.source) {
      ok[i] = false;
    }
    if (!ok[i]) {
      trace.malformed.emplace_back(path.source, path.destination);
      continue;
    }
    horizon = std::max(horizon, prev);
  }
  trace.horizon = horizon;

  // Per slot, the (path, step) pairs that move.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves(horizon + 1);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!ok[i]) continue;
    for (std::size_t k = 0; k < paths[i].steps.size(); ++k) moves[paths[i].steps[k].time].emplace_back(i, k);
  }
  std::vector<Vertex> position(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) position[i] = paths[i].source;

  for (std::uint32_t t = 1; t <= horizon; ++t) {
    std::unordered_map<std::uint64_t, Packet> busy;
    for (auto [i, k] : moves[t]) {
      if (!ok[i]) continue;
      const auto& step = paths[i].steps[k];
      const Packet packet{paths[i].source, paths[i].destination};
      if (position[i] != step.tail) {
        ok[i] = false;
        trace.malformed.push_back(packet);
        continue;
      }
      const auto key = static_cast<std::uint64_t>(step.tail) * g.d + step.label;
      auto [it, fresh] = busy.emplace(key, packet);
      if (!fresh) trace.conflicts.push_back({t, step.tail, step.label, it->second, packet});
      const auto head = g.succ(step.tail, step.label);
      trace.occupancy.push_back({t, step.tail, head, step.label, packet});
      position[i] = head;
    }
  }

  std::map<Packet, std::size_t> delivered;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!ok[i]) continue;
    if (position[i] != paths[i].destination) {
      trace.malformed.emplace_back(paths[i].source, paths[i].destination);
      continue;
    }
    ++delivered[{paths[i].source, paths[i].destination}];
  }
  for (const auto& [packet, count] : delivered) {
    if (count > 1) trace.duplicates.push_back(packet);
  }
  for (Vertex a = 0; a < g.n; ++a) {
    for (Vertex b = 0; b < g.n; ++b) {
      if (a != b && !delivered.contains({a, b})) trace.undelivered.emplace_back(a, b);
    }
  }
  std::sort(trace.occupancy.begin(), trace.occupancy.end(), [](const Occupancy& x, const Occupancy& y) {
    return std::tie(x.time, x.tail, x.label) < std::tie(y.time, y.tail, y.label);
  });
  return trace;
}

}  // namespace vst
