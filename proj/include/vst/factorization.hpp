#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vst/coset_graph.hpp"
#include "vst/words.hpp"

namespace vst {

/// Partition of a d-regular digraph's arcs into d vertex bijections.
struct OneFactorization {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::uint32_t> factor_of;  // per arc of the source digraph
  std::vector<std::vector<Vertex>> succ;        // succ[f][v]
  std::vector<std::vector<std::size_t>> arc_of; // arc_of[f][v]: arc used by factor f at v

  // Factor successor table in the common labeled view (label = factor).
  [[nodiscard]] LabeledGraph labeled() const;
};

/// 1-factorization plus word list; words[i] is followed from every vertex.
/// words[0] is empty and, by construction here, 0*words[i] == i.
struct SpanningFactorization {
  OneFactorization base;
  std::vector<Word> words;
};

// Throws Errc::validation if a factor is not a bijection or the factors do
// not partition the arcs of `g`.
void check_one_factorization(const OneFactorization& f, const Digraph& g);

// Bipartite double cover u' -> v'' per arc, peeled into d perfect matchings
// by augmenting paths. Errc::validation names an irregular vertex.
[[nodiscard]] OneFactorization one_factorize(const Digraph& g);

// Factor j = every arc labelled with generator j; words copied from `w`.
[[nodiscard]] SpanningFactorization spanning_factorization_from_cayley(const CosetGraph& g, const WordSet& w);

struct SpanningCheck {
  bool ok = false;
  std::string reason;
  std::optional<Vertex> vertex;  // base where two words collide
  std::optional<std::size_t> first, second;

  explicit operator bool() const noexcept { return ok; }
};

// Every vertex v must see n distinct endpoints v*w_i. The three-argument form
// also checks that `f` is a 1-factorization of `g`.
[[nodiscard]] SpanningCheck verify_spanning(const OneFactorization& f, std::span<const Word> words);
[[nodiscard]] SpanningCheck verify_spanning(const OneFactorization& f, std::span<const Word> words,
                                            const Digraph& g);

struct SearchOptions {
  std::uint64_t budget = 10'000'000;  // search nodes: matching steps plus word placements
  std::uint32_t max_extra_length = 1; // words may exceed the distance by this much after short search fails
};

struct SearchOutcome {
  std::optional<SpanningFactorization> result;
  bool is_short = false;             // every word has length = distance from vertex 0
  bool exhausted = false;            // whole search space explored without success
  std::uint64_t nodes = 0;
  std::size_t best_depth = 0;        // most words placed in any partial assignment
  std::size_t factorizations_tried = 0;
  std::string report;
};

// Backtracking over matching decompositions of the double cover and, for
// each, over per-vertex word choices in BFS order (short words first),
// checking distinct endpoints from all bases as each word is placed.
[[nodiscard]] SearchOutcome search_spanning_factorization(const Digraph& g, const SearchOptions& options = {});

}  // namespace vst
