#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vst/group.hpp"

namespace vst {

using Vertex = std::uint32_t;

/// Regular digraph whose out-arcs carry labels 0..d-1, one arc per label per
/// vertex. Generators of a Cayley coset graph and the factors of a
/// 1-factorization both fit this view. Edge identity is (tail, label).
struct LabeledGraph {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<Vertex> next;  // next[v * d + label]

  [[nodiscard]] Vertex succ(Vertex v, std::uint32_t label) const { return next[v * d + label]; }
};

/// Arc list with multi-arcs allowed. Arc identity is its index.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> arcs;

  [[nodiscard]] std::vector<std::size_t> out_degrees() const;
  [[nodiscard]] std::vector<std::size_t> in_degrees() const;
  // Common in/out degree, or nullopt when some vertex differs.
  [[nodiscard]] std::optional<std::size_t> regular_degree() const;
  // Throws Errc::validation naming the first irregular vertex.
  std::size_t require_regular() const;
  // Throws Errc::structural for arcs with endpoints >= n.
  void check() const;
};

[[nodiscard]] bool strongly_connected(const Digraph& g);

class CosetGraph {
 public:
  CosetGraph(Group group, std::vector<Element> generators, std::vector<Element> subgroup,
             std::vector<Element> representatives, LabeledGraph labels);

  [[nodiscard]] const Group& group() const noexcept { return group_; }
  [[nodiscard]] const std::vector<Element>& generators() const noexcept { return generators_; }
  [[nodiscard]] const std::vector<Element>& subgroup() const noexcept { return subgroup_; }
  [[nodiscard]] const std::vector<Element>& representatives() const noexcept { return reps_; }
  [[nodiscard]] const LabeledGraph& labels() const noexcept { return labels_; }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return labels_.n; }
  [[nodiscard]] std::size_t degree() const noexcept { return labels_.d; }
  [[nodiscard]] Vertex target(Vertex v, std::uint32_t generator) const { return labels_.succ(v, generator); }
  [[nodiscard]] bool is_cayley() const noexcept { return subgroup_.size() == 1; }

  // Vertex whose coset contains g.
  [[nodiscard]] std::optional<Vertex> vertex_of(const Element& g) const;

 private:
  Group group_;
  std::vector<Element> generators_;
  std::vector<Element> subgroup_;
  std::vector<Element> reps_;  // sorted; reps_[0] is the identity coset H
  LabeledGraph labels_;
};

// True iff {delta*h} == {h*delta} as sets.
[[nodiscard]] bool validate_coset_condition(const Group& group, std::span<const Element> delta,
                                            std::span<const Element> h);

// Vertices are the lexicographically least members of each coset gH, sorted,
// so vertex 0 is H itself. Edge (v, j) goes to the coset of rep(v)*delta_j.
[[nodiscard]] CosetGraph build_cayley_coset_graph(const GroupSpec& spec,
                                                  std::size_t cap = kDefaultEnumerationCap);

// Arcs ordered by (tail, generator); arc index = v * d + j.
[[nodiscard]] Digraph as_digraph(const CosetGraph& g);
[[nodiscard]] Digraph as_digraph(const LabeledGraph& g);

// One line per arc: "src dst gen". For a raw digraph, gen is the arc's rank
// among its tail's out-arcs.
[[nodiscard]] std::string arc_dump(const CosetGraph& g);
[[nodiscard]] std::string arc_dump(const Digraph& g);

// --- Petersen fixture: S5 acting on 2-subsets of {1..5} ---------------------

// Degree-5 permutations p with p({1,2}) = {1,2}; twelve of them.
[[nodiscard]] std::vector<Element> petersen_stabilizer();
// S5 with Delta = (13)(24), (13)(25), (14)(25) and H = the stabilizer.
[[nodiscard]] GroupSpec petersen_spec();

struct ConjugationCheck {
  Permutation conjugate;        // delta^-1 * x * delta
  bool matches_expected = false;  // conjugate == (12)(345)
  bool in_stabilizer = false;     // conjugate fixes {1,2} setwise
  bool cosets_merge = false;      // x*delta*B == delta*B
  bool cosets_distinct = false;   // x*B != B

  [[nodiscard]] bool ok() const noexcept {
    return matches_expected && in_stabilizer && cosets_merge && cosets_distinct;
  }
};

// Defaults reproduce x = (34)(125), delta_1 = (13)(24).
[[nodiscard]] ConjugationCheck petersen_conjugation_check(
    const Permutation& x = Permutation::from_cycles("(34)(125)", 5),
    const Permutation& delta = Permutation::from_cycles("(13)(24)", 5));

}  // namespace vst
