#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vst/coset_graph.hpp"
#include "vst/layers.hpp"
#include "vst/words.hpp"

namespace vst {

/// Time slot (1-based) for every letter of every word. times[i][p] belongs
/// to position p of word i. Equivalent to the d x T array view: row = label,
/// column = time, entry = the occurrence scheduled there.
struct Schedule {
  std::vector<std::vector<std::uint32_t>> times;

  [[nodiscard]] std::uint32_t makespan() const;
};

// Throws Errc::contract unless times increase strictly within each word and
// no label uses a slot twice.
void validate_schedule(std::span<const Word> words, std::size_t d, const Schedule& s);

// Longest words first (ties by index); each letter takes the earliest slot
// after its predecessor that its label has not used.
[[nodiscard]] Schedule greedy_schedule(std::span<const Word> words, std::size_t d);

inline constexpr std::uint64_t kDefaultScheduleBudget = 10'000'000;

struct ExactSchedule {
  std::optional<Schedule> schedule;
  bool feasible = false;      // a schedule with makespan <= t_max exists
  bool exact = true;          // false: node budget ran out before a proof
  std::uint32_t makespan = 0; // of `schedule` when present
  std::uint32_t lower_bound = 0;
  std::uint64_t nodes = 0;
};

// Minimum-makespan schedule with makespan <= t_max, by branch and bound:
// words are placed whole, most constrained word first, identical words in
// increasing order of first slot.
[[nodiscard]] ExactSchedule exact_min_schedule(std::span<const Word> words, std::size_t d, std::uint32_t t_max,
                                               std::uint64_t budget = kDefaultScheduleBudget);

/// Unit-time jobs of one or two steps on d machines.
struct JobShopInstance {
  std::size_t machines = 0;
  std::vector<std::uint32_t> one_step;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> two_step;

  void validate() const;
  [[nodiscard]] std::vector<Word> as_words() const;
  [[nodiscard]] std::vector<std::uint32_t> loads() const;
};

struct Corollary4Verdict {
  std::uint32_t t = 0;  // ceil((s1 + 2 s2) / d)
  bool feasible = false;
  std::optional<std::uint32_t> overloaded_machine;
  std::optional<std::uint32_t> exclusive_machine;
};

// Feasible at T iff every machine has at most T steps and no machine that is
// loaded to exactly T has only first steps or only second steps of two-step
// jobs. One-step jobs count as neither type.
[[nodiscard]] Corollary4Verdict corollary4_feasible(const JobShopInstance& inst);

/// M(delta), N(delta): how often each label is the first / second letter of a
/// two-letter word.
struct LayerTwoProfile {
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> second;

  [[nodiscard]] std::uint32_t max_combined() const;
};

[[nodiscard]] LayerTwoProfile layer_two_profile(std::span<const Word> words, std::size_t d);

// 1 + max (M + N); 1 for an empty profile.
[[nodiscard]] std::uint32_t corollary6_bound(const LayerTwoProfile& profile);

struct Diameter2Result {
  std::vector<Word> words;  // full word list, words[0] empty
  Schedule schedule;
  LayerTwoProfile profile;
  JobShopInstance instance;
  Corollary4Verdict corollary4;
  std::uint64_t theta = 0;
  std::uint32_t makespan = 0;
  std::uint32_t corollary6 = 0;
  bool diameter_one = false;
  bool layer_two_fits = false;  // M + N <= theta - 1 for every label
  bool exclusivity_exception = false;  // minimum schedule needs theta + 1
  bool exact = true;
};

// Diameter-2 schedule for a labeled graph with a spanning word list whose
// layer-1 words are one letter per label and layer-2 words are two letters.
// Errc::scope for diameter > 2; Errc::input for duplicate generators.
[[nodiscard]] Diameter2Result diameter2_schedule(const LabeledGraph& g, std::span<const Word> words,
                                                 std::uint64_t budget = kDefaultScheduleBudget);
// Cayley graph: layer-2 words are chosen by exhaustive search minimising
// max (M + N) unless supplied explicitly (one per layer-2 vertex, keyed by vertex).
[[nodiscard]] Diameter2Result diameter2_schedule(
    const CosetGraph& g, const std::optional<std::vector<std::pair<Vertex, Word>>>& layer2_words = std::nullopt,
    std::uint64_t budget = kDefaultScheduleBudget);

struct Classification {
  bool balanced = false;
  bool is_short = false;
  bool optimal = false;
  bool minimum = false;
  std::uint64_t distance_bound = 0;  // ceil(sum k N_k / (n d))
  std::uint64_t average_load = 0;    // ceil(sum_i count(F_i) / d)
  std::uint64_t max_load = 0;
  std::uint64_t makespan = 0;
};

// Evaluates the four equalities and asserts their ordering chain
// (Errc::internal when violated).
[[nodiscard]] Classification classify(std::span<const Word> words, std::size_t d, const Schedule& s,
                                      const LayerProfile& profile);

}  // namespace vst
