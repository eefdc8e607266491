#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vst/coset_graph.hpp"

namespace vst {

// A word is a sequence of generator (or factor) labels, read left to right.
using Word = std::vector<std::uint32_t>;

/// One word per vertex: words[v] leads from vertex 0 to v. words[0] is empty.
struct WordSet {
  std::vector<Word> words;
  bool shortest = true;

  [[nodiscard]] std::size_t total_length() const;
};

enum class WordMode { first_found, load_balanced };

[[nodiscard]] Vertex evaluate_word(const LabeledGraph& g, Vertex start, std::span<const std::uint32_t> word);

// Breadth-first shortest words from the identity vertex. Only defined for
// Cayley graphs; proper coset graphs raise Errc::unsupported_input.
//  first_found:   BFS parent, generators scanned in index order.
//  load_balanced: per layer, each vertex takes the incoming generator with
//                 the smallest running count (ties: generator, then parent).
[[nodiscard]] WordSet bfs_word_set(const CosetGraph& g, WordMode mode);
[[nodiscard]] WordSet bfs_word_set(const LabeledGraph& g, WordMode mode);

// Throws Errc::validation if a word misses its vertex, or if the set claims
// to be shortest and some word is longer than the BFS distance.
void check_word_set(const LabeledGraph& g, const WordSet& w);

// Per-label occurrence totals. Errc::structural for labels >= d.
[[nodiscard]] std::vector<std::uint64_t> generator_occurrences(std::span<const Word> words, std::size_t d);
[[nodiscard]] std::vector<std::uint64_t> generator_occurrences(const WordSet& w, std::size_t d);

// max_delta count(delta) for this particular W.
[[nodiscard]] std::uint64_t regular_bound_for(const WordSet& w, std::size_t d);

inline constexpr std::uint64_t kDefaultWordSearchBudget = 10'000'000;

struct ExactRegularBound {
  std::uint64_t value = 0;
  WordSet witness;
  bool exact = false;  // false: budget ran out, value is the best found
  std::uint64_t nodes = 0;
};

// Minimum over all shortest word sets of the maximum generator count, by
// depth-first search with pruning against the incumbent.
[[nodiscard]] ExactRegularBound regular_bound_exact(const CosetGraph& g,
                                                    std::uint64_t budget = kDefaultWordSearchBudget);
[[nodiscard]] ExactRegularBound regular_bound_exact(const LabeledGraph& g,
                                                    std::uint64_t budget = kDefaultWordSearchBudget);

}  // namespace vst
