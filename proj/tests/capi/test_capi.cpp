#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "vst/vst.h"

namespace {

struct Net {
  vst_network* p = nullptr;
  ~Net() { vst_network_free(p); }
};

struct Res {
  vst_result* p = nullptr;
  ~Res() { vst_result_free(p); }
};

}  // namespace

TEST_CASE("status names and exit codes") {
  CHECK(std::string(vst_status_name(VST_OK)) == "ok");
  CHECK(vst_status_exit_code(VST_OK) == 0);
  CHECK(vst_status_exit_code(VST_E_PARSE) == 1);
  CHECK(vst_status_exit_code(VST_E_NOT_CONNECTED) == 1);
  CHECK(vst_status_exit_code(VST_E_BUDGET) == 2);
  CHECK(vst_status_exit_code(VST_E_INFEASIBLE) == 2);
  CHECK(vst_status_exit_code(VST_E_INTERNAL) == 3);
  CHECK(std::strlen(vst_version()) > 0);
}

TEST_CASE("network handles") {
  Net n;
  REQUIRE(vst_network_from_builtin("petersen", &n.p) == VST_OK);
  CHECK(vst_network_vertex_count(n.p) == 10);
  CHECK(vst_network_degree(n.p) == 3);
  CHECK_FALSE(vst_network_is_cayley(n.p));

  Net z;
  REQUIRE(vst_network_from_json(R"({"group": {"kind": "cyclic", "modulus": 4}, "generators": [1]})", 0, &z.p) ==
          VST_OK);
  CHECK(vst_network_is_cayley(z.p));
  char* dump = nullptr;
  REQUIRE(vst_network_arc_dump(z.p, &dump) == VST_OK);
  CHECK(std::string(dump) == "0 1 0\n1 2 0\n2 3 0\n3 0 0\n");
  vst_string_free(dump);

  Net bad;
  CHECK(vst_network_from_json("{", 0, &bad.p) == VST_E_PARSE);
  CHECK(bad.p == nullptr);
  CHECK(std::strlen(vst_last_error()) > 0);
  CHECK(vst_network_from_json(R"({"digraph": {"n": 2, "arcs": [[0,0],[1,1]]}})", 0, &bad.p) ==
        VST_E_NOT_CONNECTED);
  CHECK(std::string(vst_last_error()).find("not connected") != std::string::npos);
  CHECK(vst_network_from_builtin("nope", &bad.p) == VST_E_INPUT);
  CHECK(vst_network_from_builtin(nullptr, &bad.p) == VST_E_INVALID_ARGUMENT);
}

TEST_CASE("pipeline through the C interface") {
  Net n;
  REQUIRE(vst_network_from_builtin("z7-124", &n.p) == VST_OK);
  vst_options o;
  vst_options_init(&o);
  Res r;
  REQUIRE(vst_pipeline(n.p, &o, &r.p) == VST_OK);
  CHECK(std::string(vst_result_summary(r.p)) == "tau=3 theta=3 psi_W=3 optimal=true");
  CHECK(vst_result_exit_code(r.p) == 0);
  CHECK(vst_result_find(r.p, "trace.csv") != nullptr);
  CHECK(vst_result_find(r.p, "missing.txt") == nullptr);
  CHECK(vst_result_artifact_count(r.p) == 6);
  for (size_t i = 0; i < vst_result_artifact_count(r.p); ++i) {
    CHECK(std::strlen(vst_result_artifact_name(r.p, i)) > 0);
    CHECK(vst_result_artifact_text(r.p, i) != nullptr);
  }
}

TEST_CASE("chained subcommands") {
  Net n;
  REQUIRE(vst_network_from_builtin("petersen", &n.p) == VST_OK);
  vst_options o;
  vst_options_init(&o);
  o.search = 1;
  Res f, s, sim;
  REQUIRE(vst_factorize(n.p, &o, nullptr, &f.p) == VST_OK);
  const char* fact = vst_result_find(f.p, "factorization.json");
  REQUIRE(fact);
  REQUIRE(vst_schedule(n.p, &o, fact, &s.p) == VST_OK);
  const char* csv = vst_result_find(s.p, "schedule.csv");
  REQUIRE(csv);
  REQUIRE(vst_simulate(n.p, &o, csv, fact, &sim.p) == VST_OK);
  CHECK(std::string(vst_result_summary(sim.p)) == "tau=5 theta=5 psi_W=5 optimal=true");
}

TEST_CASE("budget and infeasibility statuses") {
  Net n;
  REQUIRE(vst_network_from_builtin("petersen", &n.p) == VST_OK);
  vst_options o;
  vst_options_init(&o);
  o.search = 1;
  o.budget = 0;
  Res r;
  CHECK(vst_factorize(n.p, &o, nullptr, &r.p) == VST_E_BUDGET);
  CHECK(r.p == nullptr);
  CHECK(std::string(vst_last_error()).find("unknown") != std::string::npos);

  Net q;
  REQUIRE(vst_network_from_builtin("q3", &q.p) == VST_OK);
  vst_options_init(&o);
  o.bound = 3;
  CHECK(vst_schedule(q.p, &o, nullptr, &r.p) == VST_E_INFEASIBLE);

  Net pet;
  REQUIRE(vst_network_from_builtin("petersen", &pet.p) == VST_OK);
  vst_options_init(&o);
  CHECK(vst_words(pet.p, &o, &r.p) == VST_E_UNSUPPORTED_INPUT);
  CHECK(vst_pipeline(nullptr, &o, &r.p) == VST_E_INVALID_ARGUMENT);
}

TEST_CASE("simulate refuses a schedule that reuses a label at one time") {
  Net n;
  REQUIRE(vst_network_from_builtin("c4", &n.p) == VST_OK);
  vst_options o;
  vst_options_init(&o);
  const char* csv =
      "word_target,position,factor,time\n1,0,0,1\n2,0,0,1\n2,1,0,2\n3,0,0,1\n3,1,0,2\n3,2,0,3\n";
  Res r;
  CHECK(vst_simulate(n.p, &o, csv, nullptr, &r.p) == VST_E_CONTRACT);
  CHECK(std::string(vst_last_error()).find("scheduled twice") != std::string::npos);
  CHECK(vst_status_exit_code(VST_E_CONTRACT) == 1);
}

TEST_CASE("compare") {
  const char* descs[] = {R"({"name": "a", "P": 4096, "d": 8, "D": 4})",
                         R"({"name": "b", "P": 1024, "d": 16, "D": "5/2"})"};
  vst_model_options m;
  vst_model_options_init(&m);
  m.wire_budget = "40000";
  Res r;
  REQUIRE(vst_compare(descs, 2, &m, &r.p) == VST_OK);
  CHECK(std::string(vst_result_find(r.p, "compare.json")).find("\"winner\": \"a\"") != std::string::npos);

  Res one;
  CHECK(vst_compare(descs, 1, &m, &one.p) == VST_E_INPUT);
  m.wire_budget = "100";
  Res none;
  CHECK(vst_compare(descs, 2, &m, &none.p) == VST_E_REJECTED);
  REQUIRE(none.p);
  CHECK(vst_result_exit_code(none.p) == 2);
  m.wire_budget = nullptr;
  Res missing;
  CHECK(vst_compare(descs, 2, &m, &missing.p) == VST_E_INPUT);
}
