#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "vst/error.hpp"
#include "vst/layers.hpp"
#include "vst/network.hpp"

using namespace vst;

namespace {

struct Case {
  const char* name;
  oracle::Adj ref;
  std::vector<std::uint64_t> n;
  std::uint64_t theta;
};

std::vector<Case> corpus() {
  return {
      {"c4", oracle::cyclic(4, {1}), {1, 1, 1, 1}, 6},
      {"q3", oracle::hypercube(3), {1, 3, 3, 1}, 4},
      {"z7-124", oracle::cyclic(7, {1, 2, 4}), {1, 3, 3}, 3},
      {"z5-12", oracle::cyclic(5, {1, 2}), {1, 2, 2}, 3},
      {"petersen", oracle::petersen(), {1, 3, 6}, 5},
      {"k4", oracle::cyclic(4, {1, 2, 3}), {1, 3}, 1},
  };
}

}  // namespace

TEST_CASE("layer profiles agree with the oracle") {
  for (const auto& c : corpus()) {
    CAPTURE(c.name);
    auto net = Network::builtin(c.name);
    auto p = layer_profile(net.coset());
    CHECK(oracle::layer_counts(c.ref) == c.n);
    CHECK(p.n == c.n);
    CHECK(p.theta == c.theta);
    CHECK(average_diameter_bound(p) == c.theta);
    CHECK(oracle::theta_all_pairs(c.ref) == c.theta);
    CHECK(p.big_n == oracle::pair_counts(c.ref));
    CHECK(p.diameter + 1 == c.n.size());
    std::uint64_t total = 0;
    for (auto x : p.n) total += x;
    CHECK(total == p.vertices);
    // Vertex symmetry: N_k = P n_k, and the two theta formulas agree.
    for (std::size_t k = 0; k < p.n.size(); ++k) CHECK(p.big_n[k] == p.vertices * p.n[k]);
    const auto nd = p.vertices * p.degree;
    CHECK((p.pair_distance_sum() + nd - 1) / nd == p.theta);
  }
}

TEST_CASE("profile is the same from every base") {
  auto net = Network::builtin("petersen");
  auto base0 = layer_profile(net.coset(), 0);
  for (Vertex v = 1; v < 10; ++v) CHECK(layer_profile(net.coset(), v).n == base0.n);
}

TEST_CASE("threaded all-sources BFS gives the same counts") {
  auto net = Network::builtin("q3");
  CHECK(layer_profile(net.digraph(), 0, 4).big_n == layer_profile(net.digraph(), 0, 1).big_n);
}

TEST_CASE("raw digraph that is not vertex symmetric") {
  // 2-regular on four vertices, with vertex 0 seeing a different layer pattern.
  Digraph g{4, {{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 2}, {1, 3}, {2, 1}, {3, 0}}};
  auto p = layer_profile(g);
  oracle::Adj adj{4, 2, std::vector<std::vector<std::uint32_t>>(4)};
  for (auto [a, b] : g.arcs) adj.out[a].push_back(b);
  CHECK(p.big_n == oracle::pair_counts(adj));
  CHECK(p.n == oracle::layer_counts(adj));
}

TEST_CASE("disconnected digraph") {
  Digraph g{4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}};
  try {
    (void)layer_profile(g);
    FAIL("expected not connected");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_connected);
  }
}

TEST_CASE("balls and layers") {
  auto q3 = Network::builtin("q3").digraph();
  CHECK(ball(q3, 0, 1).size() == 4);
  CHECK(layer(q3, 0, 0) == std::vector<Vertex>{0});
  auto pet = Network::builtin("petersen").digraph();
  CHECK(layer(pet, 0, 2).size() == 6);
  for (std::size_t r = 1; r <= 3; ++r) {
    auto inner = ball(q3, 5, r - 1), outer = ball(q3, 5, r);
    CHECK(std::includes(outer.begin(), outer.end(), inner.begin(), inner.end()));
  }
  std::size_t covered = 0;
  for (std::size_t r = 0; r <= 3; ++r) covered += layer(q3, 5, r).size();
  CHECK(covered == 8);
}
