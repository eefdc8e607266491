#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vst/coset_graph.hpp"
#include "vst/factorization.hpp"
#include "vst/scheduling.hpp"
#include "vst/words.hpp"

namespace vst {

struct TimedStep {
  Vertex tail = 0;
  std::uint32_t label = 0;  // generator or factor index
  std::uint32_t time = 0;
};

struct TimedPath {
  Vertex source = 0;
  Vertex destination = 0;
  std::vector<TimedStep> steps;
};

using Packet = std::pair<Vertex, Vertex>;  // (source, destination)

struct Occupancy {
  std::uint32_t time = 0;
  Vertex tail = 0;
  Vertex head = 0;
  std::uint32_t label = 0;
  Packet packet;
};

struct Conflict {
  std::uint32_t time = 0;
  Vertex tail = 0;
  std::uint32_t label = 0;
  Packet first;
  Packet second;
};

struct TransposeTrace {
  std::uint32_t horizon = 0;  // measured tau
  std::vector<Occupancy> occupancy;  // sorted by (time, tail, label)
  std::vector<Conflict> conflicts;
  std::vector<Packet> undelivered;
  std::vector<Packet> malformed;   // path not incident, not increasing, or wrong endpoints
  std::vector<Packet> duplicates;  // delivered more than once

  [[nodiscard]] bool valid() const noexcept {
    return conflicts.empty() && undelivered.empty() && malformed.empty() && duplicates.empty();
  }
};

// Paths h*w(g) for every vertex h and non-identity g, with the times the
// schedule gave to w(g). schedule.times[i] belongs to words.words[i].
// Errc::contract if the schedule is not valid for the words.
[[nodiscard]] std::vector<TimedPath> expand_cayley_paths(const CosetGraph& g, const WordSet& words,
                                                         const Schedule& schedule);

// Paths v*w_i for every vertex v and non-empty w_i. Refused (Errc::contract)
// unless the word list passes the spanning check.
[[nodiscard]] std::vector<TimedPath> expand_factor_paths(const SpanningFactorization& f, const Schedule& schedule);

// Steps through time slots 1..tau, recording (edge, time) use. Edge identity
// is (tail, label). Problems are reported in the trace, never thrown.
[[nodiscard]] TransposeTrace run_transpose(const LabeledGraph& g, std::span<const TimedPath> paths);

}  // namespace vst
