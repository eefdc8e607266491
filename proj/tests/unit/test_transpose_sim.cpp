#include <doctest.h>

#include <random>
#include <set>

#include "vst/error.hpp"
#include "vst/factorization.hpp"
#include "vst/layers.hpp"
#include "vst/network.hpp"
#include "vst/scheduling.hpp"
#include "vst/transpose_sim.hpp"

using namespace vst;

namespace {

// Random valid schedule: words in random order, each letter at a random
// free slot after its predecessor.
Schedule random_schedule(const std::vector<Word>& words, std::size_t d, std::mt19937_64& rng) {
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  Schedule s;
  s.times.resize(words.size());
  for (auto i : order) {
    std::uint32_t t = 0;
    for (auto label : words[i]) {
      t += 1 + static_cast<std::uint32_t>(rng() % 3);
      while (used.count({label, t})) ++t;
      used.emplace(label, t);
      s.times[i].push_back(t);
    }
  }
  (void)d;
  return s;
}

void check_trace(const TransposeTrace& t, std::size_t n, std::size_t steps) {
  CHECK(t.valid());
  CHECK(t.conflicts.empty());
  CHECK(t.undelivered.empty());
  CHECK(t.occupancy.size() == steps);
  std::set<std::pair<Vertex, Vertex>> delivered;
  for (const auto& o : t.occupancy) delivered.insert(o.packet);
  CHECK(delivered.size() == n * (n - 1));
}

}  // namespace

TEST_CASE("C4 expansion") {
  auto g = Network::builtin("c4").coset();
  auto w = bfs_word_set(g, WordMode::first_found);
  auto s = greedy_schedule(w.words, 1);
  auto paths = expand_cayley_paths(g, w, s);
  CHECK(paths.size() == 12);
  auto t = run_transpose(g.labels(), paths);
  check_trace(t, 4, 4 * 6);
  CHECK(t.horizon == 6);
}

TEST_CASE("path counts") {
  auto z7 = Network::builtin("z7-124").coset();
  auto w7 = bfs_word_set(z7, WordMode::load_balanced);
  CHECK(expand_cayley_paths(z7, w7, greedy_schedule(w7.words, 3)).size() == 42);

  auto q3 = Network::builtin("q3").coset();
  auto wq = bfs_word_set(q3, WordMode::load_balanced);
  auto paths = expand_cayley_paths(q3, wq, greedy_schedule(wq.words, 3));
  CHECK(paths.size() == 56);
  for (const auto& p : paths) CHECK(p.steps.size() <= 3);
  auto f = spanning_factorization_from_cayley(q3, wq);
  CHECK(expand_factor_paths(f, greedy_schedule(f.words, 3)).size() == 56);
}

TEST_CASE("random valid schedules never conflict (Cayley)") {
  std::mt19937_64 rng(99);
  for (const char* name : {"c4", "q3", "z5-12", "z7-124"}) {
    auto g = Network::builtin(name).coset();
    const auto theta = layer_profile(g).theta;
    for (int i = 0; i < 20; ++i) {
      auto w = bfs_word_set(g, i % 2 ? WordMode::first_found : WordMode::load_balanced);
      auto s = random_schedule(w.words, g.degree(), rng);
      std::size_t steps = 0;
      for (const auto& x : w.words) steps += x.size();
      auto t = run_transpose(g.labels(), expand_cayley_paths(g, w, s));
      check_trace(t, g.vertex_count(), steps * g.vertex_count());
      CHECK(t.horizon >= theta);
    }
  }
}

TEST_CASE("searched Petersen factorization delivers without conflicts") {
  auto net = Network::builtin("petersen");
  auto out = search_spanning_factorization(net.digraph());
  REQUIRE(out.result);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    auto s = random_schedule(out.result->words, 3, rng);
    auto paths = expand_factor_paths(*out.result, s);
    CHECK(paths.size() == 90);
    auto t = run_transpose(out.result->base.labeled(), paths);
    CHECK(t.valid());
    CHECK(t.horizon >= 5);
  }
}

TEST_CASE("adversarial fixtures") {
  auto g = Network::builtin("c4").coset();
  std::vector<TimedPath> clash{{0, 1, {{0, 0, 1}}}, {0, 2, {{0, 0, 1}, {1, 0, 2}}}};
  auto t = run_transpose(g.labels(), clash);
  REQUIRE(t.conflicts.size() == 1);
  CHECK(t.conflicts[0].time == 1);
  CHECK(t.conflicts[0].tail == 0);
  CHECK_FALSE(t.valid());
  CHECK_FALSE(t.undelivered.empty());

  std::vector<TimedPath> broken{{0, 2, {{0, 0, 1}, {2, 0, 2}}}};
  CHECK_FALSE(run_transpose(g.labels(), broken).malformed.empty());
  std::vector<TimedPath> backwards{{0, 2, {{0, 0, 2}, {1, 0, 1}}}};
  CHECK_FALSE(run_transpose(g.labels(), backwards).malformed.empty());
}

TEST_CASE("expansion refuses bad input") {
  auto g = Network::builtin("c4").coset();
  auto w = bfs_word_set(g, WordMode::first_found);
  Schedule reused{{{}, {1}, {1, 2}, {3, 4, 5}}};
  try {
    (void)expand_cayley_paths(g, w, reused);
    FAIL("expected contract");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::contract);
  }
  SpanningFactorization f{one_factorize(as_digraph(g)), {{}, {0}, {0, 0}, {0, 0}}};
  CHECK_THROWS_AS((void)expand_factor_paths(f, greedy_schedule(f.words, 1)), Error);
}
