#include <doctest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "vst/artifacts.hpp"
#include "vst/error.hpp"
#include "vst/layers.hpp"
#include "vst/network.hpp"
#include "vst/service.hpp"

using namespace vst;
using nlohmann::json;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("graph spec parsing") {
  auto z7 = Network::from_json(R"({"group": {"kind": "cyclic", "modulus": 7}, "generators": [1, 2, 4]})");
  CHECK(z7.is_cayley());
  CHECK(z7.vertex_count() == 7);
  CHECK(z7.degree() == 3);

  auto pet = Network::from_json(R"js({"group": {"kind": "permutation", "degree": 5},
      "generators": ["(13)(24)", "(13)(25)", "(14)(25)"],
      "subgroup_generators": ["(12)", "(345)", "(34)"]})js");
  CHECK(pet.vertex_count() == 10);
  CHECK_FALSE(pet.is_cayley());

  auto raw = Network::from_json(R"({"digraph": {"n": 3, "arcs": [[0,1],[1,2],[2,0]]}})");
  CHECK_FALSE(raw.is_coset());
  CHECK(raw.degree() == 1);
  CHECK(code_of([&] { (void)raw.coset(); }) == Errc::unsupported_input);
}

TEST_CASE("graph spec errors name their location") {
  auto syntax = message_of([] { (void)Network::from_json("{\n\"group\": ,\n}"); });
  CHECK(syntax.find("line 2") != std::string::npos);
  CHECK(code_of([] { (void)Network::from_json("{\n\"group\": ,\n}"); }) == Errc::parse);

  auto bad_gen = message_of(
      [] { (void)Network::from_json(R"({"group": {"kind": "cyclic", "modulus": 7}, "generators": [1, 2, "x"]})"); });
  CHECK(bad_gen.find("/generators/2") != std::string::npos);

  // Both forms at once, or neither.
  CHECK(code_of([] {
          (void)Network::from_json(
              R"({"group": {"kind": "cyclic", "modulus": 3}, "generators": [1], "digraph": {"n": 1, "arcs": [[0,0]]}})");
        }) == Errc::parse);
  CHECK(code_of([] { (void)Network::from_json("{}"); }) == Errc::parse);

  auto disc = message_of([] { (void)Network::from_json(R"({"digraph": {"n": 2, "arcs": [[0,0],[1,1]]}})"); });
  CHECK(disc.find("not connected") != std::string::npos);
  CHECK(code_of([] { (void)Network::from_json(R"({"digraph": {"n": 2, "arcs": [[0,1],[0,1]]}})"); }) ==
        Errc::validation);
  CHECK(code_of([] { (void)Network::builtin("nope"); }) == Errc::input);
}

TEST_CASE("builtins") {
  for (const auto& name : Network::builtin_names()) CHECK_NOTHROW((void)Network::builtin(name));
  CHECK(Network::builtin("petersen").vertex_count() == 10);
  CHECK(Network::builtin("q3").vertex_count() == 8);
}

TEST_CASE("bounds json") {
  auto j = json::parse(bounds_json(layer_profile(Network::builtin("c4").coset())));
  CHECK(j["P"] == 4);
  CHECK(j["d"] == 1);
  CHECK(j["D"] == 3);
  CHECK(j["theta"] == 6);
  CHECK(j["n"] == json::array({1, 1, 1, 1}));
  CHECK(j["N"] == json::array({4, 4, 4, 4}));
  CHECK(j["average_distance"] == "3/2");
}

TEST_CASE("words round trip") {
  auto net = Network::builtin("z7-124");
  WordsReport r{bfs_word_set(net.coset(), WordMode::load_balanced), "load_balanced", std::nullopt, false, 3};
  auto text = words_json(net, r);
  auto back = read_words_json(text, 7);
  CHECK(back.words == r.words.words);
  CHECK(json::parse(text)["psi_W"] == 3);
  CHECK(code_of([] { (void)read_words_json(R"({"words": {"9": [0]}})", 7); }) != Errc::internal);
}

TEST_CASE("factorization round trip") {
  auto net = Network::builtin("petersen");
  auto out = search_spanning_factorization(net.digraph());
  REQUIRE(out.result);
  auto text = factorization_json(*out.result, out.is_short, "search");
  auto back = read_factorization_json(text, net.digraph());
  CHECK(back.base.succ == out.result->base.succ);
  CHECK(back.words == out.result->words);

  // Factor that uses an arc the graph does not have.
  auto j = json::parse(text);
  auto f0 = j["factors"][0].get<std::vector<std::uint32_t>>();
  std::swap(f0[0], f0[1]);
  j["factors"][0] = f0;
  CHECK(code_of([&] { (void)read_factorization_json(j.dump(), net.digraph()); }) == Errc::validation);
}

TEST_CASE("schedule csv round trip") {
  std::vector<Word> words{{}, {0}, {0, 1}, {1, 1, 0}};
  auto s = greedy_schedule(words, 2);
  auto text = schedule_csv(words, s);
  CHECK(text.rfind("word_target,position,factor,time\n", 0) == 0);
  auto back = read_schedule_csv(text, 4);
  CHECK(back.words == words);
  CHECK(back.schedule.times == s.times);
  CHECK(code_of([] { (void)read_schedule_csv("word_target,position,factor,time\n1,0,x,1\n", 4); }) == Errc::parse);
}

TEST_CASE("trace csv and verdict") {
  auto net = Network::builtin("c4");
  auto r = run_pipeline(net, PipelineOptions{});
  CHECK(r.exit_code == 0);
  CHECK(r.summary == "tau=6 theta=6 psi_W=6 optimal=true");
  const auto* trace = r.find("trace.csv");
  REQUIRE(trace);
  CHECK(trace->rfind("time,src,dst,gen,packet_src,packet_dst\n", 0) == 0);
  CHECK(std::count(trace->begin(), trace->end(), '\n') == 1 + 24);
  auto v = json::parse(*r.find("verdict.json"));
  CHECK(v["optimal"] == true);

  TransposeTrace t;
  t.horizon = 4;
  CHECK(make_verdict(t, 4, 5).optimal);
  t.conflicts.push_back({});
  CHECK_FALSE(make_verdict(t, 4, 5).optimal);
}

TEST_CASE("subcommands chain through their files") {
  auto net = Network::builtin("q3");
  auto words = run_words(net, WordsOptions{});
  FactorizeOptions fo;
  fo.words_json = *words.find("words.json");
  auto fact = run_factorize(net, fo);
  auto sched = run_schedule(net, *fact.find("factorization.json"), ScheduleOptions{});
  auto sim = run_simulate(net, *sched.find("schedule.csv"), *fact.find("factorization.json"));
  CHECK(sim.exit_code == 0);
  CHECK(sim.summary == "tau=4 theta=4 psi_W=4 optimal=true");
}

TEST_CASE("service exit codes") {
  CHECK(exit_code_for(Errc::parse) == 1);
  CHECK(exit_code_for(Errc::validation) == 1);
  CHECK(exit_code_for(Errc::infeasible) == 2);
  CHECK(exit_code_for(Errc::budget) == 2);
  CHECK(exit_code_for(Errc::internal) == 3);

  ModelOptions mo;
  mo.wire_budget = Rational(40000);
  std::vector<std::string> one{R"({"name": "a", "P": 4096, "d": 8, "D": 4})"};
  CHECK(code_of([&] { (void)run_compare(one, mo); }) == Errc::input);

  std::vector<std::string> two{R"({"name": "a", "P": 4096, "d": 8, "D": 4})",
                               R"({"name": "b", "P": 1024, "d": 16, "D": "5/2"})"};
  auto ok = run_compare(two, mo);
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(*ok.find("compare.json"))["winner"] == "a");

  mo.wire_budget = Rational(100);
  auto none = run_compare(two, mo);
  CHECK(none.exit_code == 2);

  ModelOptions missing;
  CHECK(code_of([&] { (void)run_compare(two, missing); }) == Errc::input);

  ScheduleOptions tight;
  tight.bound = 3;
  CHECK(code_of([&] { (void)run_schedule(Network::builtin("q3"), std::nullopt, tight); }) == Errc::infeasible);
}
