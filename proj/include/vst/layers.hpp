#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vst/coset_graph.hpp"

namespace vst {

/// Distance structure seen from one base vertex, plus the all-pairs count.
struct LayerProfile {
  std::vector<std::uint64_t> n;     // n[k]: vertices at distance exactly k from the base
  std::vector<std::uint64_t> big_n; // big_n[k]: ordered pairs at distance k
  std::size_t diameter = 0;         // largest k with n[k] > 0 (from the base)
  std::size_t vertices = 0;
  std::size_t degree = 0;
  std::uint64_t theta = 0;          // ceil(sum k n[k] / d)

  [[nodiscard]] std::uint64_t distance_sum() const;      // sum k n[k]
  [[nodiscard]] std::uint64_t pair_distance_sum() const; // sum k big_n[k]
};

// Distances from `source`; -1 for unreachable vertices.
[[nodiscard]] std::vector<std::int64_t> bfs_distances(const Digraph& g, Vertex source);

// Requires a regular, strongly connected digraph (Errc::validation /
// Errc::not_connected otherwise). big_n comes from an exact BFS per source,
// spread over `jobs` threads.
[[nodiscard]] LayerProfile layer_profile(const Digraph& g, Vertex base = 0, unsigned jobs = 1);
// Also checks that every base vertex sees the same n[] (vertex symmetry);
// a mismatch is Errc::internal.
[[nodiscard]] LayerProfile layer_profile(const CosetGraph& g, Vertex base = 0, unsigned jobs = 1);

[[nodiscard]] std::uint64_t average_diameter_bound(const LayerProfile& profile);

// S_r(v): vertices within distance r, ascending.
[[nodiscard]] std::vector<Vertex> ball(const Digraph& g, Vertex v, std::size_t r);
// L_r = S_r(v) - S_{r-1}(v); L_0 = {v}.
[[nodiscard]] std::vector<Vertex> layer(const Digraph& g, Vertex v, std::size_t r);

}  // namespace vst
