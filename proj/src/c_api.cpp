#include "vst/vst.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "vst/coset_graph.hpp"
#include "vst/error.hpp"
#include "vst/network.hpp"
#include "vst/service.hpp"

struct vst_network {
  vst::Network net;
};

struct vst_result {
  vst::CommandResult r;
};

namespace {

thread_local std::string last_error;

vst_status to_status(vst::Errc code) {
  switch (code) {
    case vst::Errc::structural: return VST_E_STRUCTURAL;
    case vst::Errc::capacity: return VST_E_CAPACITY;
    case vst::Errc::validation: return VST_E_VALIDATION;
    case vst::Errc::ill_defined_edges: return VST_E_ILL_DEFINED_EDGES;
    case vst::Errc::not_connected: return VST_E_NOT_CONNECTED;
    case vst::Errc::unsupported_input: return VST_E_UNSUPPORTED_INPUT;
    case vst::Errc::scope: return VST_E_SCOPE;
    case vst::Errc::input: return VST_E_INPUT;
    case vst::Errc::parse: return VST_E_PARSE;
    case vst::Errc::domain: return VST_E_DOMAIN;
    case vst::Errc::contract: return VST_E_CONTRACT;
    case vst::Errc::budget: return VST_E_BUDGET;
    case vst::Errc::infeasible: return VST_E_INFEASIBLE;
    case vst::Errc::internal: return VST_E_INTERNAL;
    case vst::Errc::io: return VST_E_IO;
  }
  return VST_E_INTERNAL;
}

template <class F>
vst_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const vst::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VST_E_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VST_E_INTERNAL;
  }
}

vst_status invalid(const char* what) {
  last_error = what;
  return VST_E_INVALID_ARGUMENT;
}

vst::WordsOptions words_options(const vst_options& o) {
  vst::WordsOptions w;
  w.budget = o.budget;
  w.jobs = o.jobs;
  switch (o.word_mode) {
    case VST_WORDS_LOAD_BALANCED: w.mode = "load_balanced"; break;
    case VST_WORDS_FIRST_FOUND: w.mode = "first_found"; break;
    default: w.mode = "exact"; break;
  }
  return w;
}

vst::FactorizeOptions factorize_options(const vst_options& o) {
  vst::FactorizeOptions f;
  f.search = o.search != 0;
  f.budget = o.budget;
  f.max_extra_length = o.max_extra_length;
  f.mode = words_options(o).mode;
  f.jobs = o.jobs;
  return f;
}

vst_options defaults() {
  vst_options o;
  vst_options_init(&o);
  return o;
}

vst_status finish(vst::CommandResult r, vst_result** out) {
  const bool rejected = r.exit_code != 0;
  if (rejected) last_error = r.message;
  *out = new vst_result{std::move(r)};
  return rejected ? VST_E_REJECTED : VST_OK;
}

std::optional<std::string> opt_text(const char* s) {
  if (!s) return std::nullopt;
  return std::string(s);
}

}  // namespace

extern "C" {

const char* vst_version(void) { return "1.0.0"; }

const char* vst_status_name(vst_status status) {
  switch (status) {
    case VST_OK: return "ok";
    case VST_E_STRUCTURAL: return "structural";
    case VST_E_CAPACITY: return "capacity";
    case VST_E_VALIDATION: return "validation";
    case VST_E_ILL_DEFINED_EDGES: return "ill-defined edges";
    case VST_E_NOT_CONNECTED: return "not connected";
    case VST_E_UNSUPPORTED_INPUT: return "unsupported input";
    case VST_E_SCOPE: return "scope";
    case VST_E_INPUT: return "input";
    case VST_E_PARSE: return "parse";
    case VST_E_DOMAIN: return "domain";
    case VST_E_CONTRACT: return "contract";
    case VST_E_BUDGET: return "budget exhausted";
    case VST_E_INFEASIBLE: return "infeasible";
    case VST_E_INTERNAL: return "internal";
    case VST_E_IO: return "io";
    case VST_E_INVALID_ARGUMENT: return "invalid argument";
    case VST_E_REJECTED: return "rejected";
  }
  return "unknown";
}

int vst_status_exit_code(vst_status status) {
  switch (status) {
    case VST_OK: return 0;
    case VST_E_BUDGET:
    case VST_E_INFEASIBLE: return 2;
    case VST_E_INTERNAL: return 3;
    default: return 1;
  }
}

const char* vst_last_error(void) { return last_error.c_str(); }

void vst_options_init(vst_options* options) {
  if (!options) return;
  options->budget = vst::kDefaultBudget;
  options->bound = 0;
  options->max_extra_length = 1;
  options->search = 0;
  options->word_mode = VST_WORDS_EXACT;
  options->jobs = 1;
  options->seed = 0;
}

void vst_model_options_init(vst_model_options* options) {
  if (!options) return;
  options->cost_ratio = "0";
  options->matrix_size = 0;
  options->iterations = 1;
  options->beta = "1";
  options->exponent = 1;
  options->wire_budget = nullptr;
  options->budget = vst::kDefaultBudget;
  options->jobs = 1;
}

vst_status vst_network_from_json(const char* json, size_t cap, vst_network** out) {
  if (!json || !out) return invalid("null argument");
  return guarded([&] {
    *out = new vst_network{vst::Network::from_json(json, cap == 0 ? vst::kDefaultEnumerationCap : cap)};
    return VST_OK;
  });
}

vst_status vst_network_from_builtin(const char* name, vst_network** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] {
    *out = new vst_network{vst::Network::builtin(name)};
    return VST_OK;
  });
}

void vst_network_free(vst_network* network) { delete network; }

size_t vst_network_vertex_count(const vst_network* network) { return network ? network->net.vertex_count() : 0; }

size_t vst_network_degree(const vst_network* network) { return network ? network->net.degree() : 0; }

int vst_network_is_cayley(const vst_network* network) { return network && network->net.is_cayley() ? 1 : 0; }

vst_status vst_network_arc_dump(const vst_network* network, char** out) {
  if (!network || !out) return invalid("null argument");
  return guarded([&] {
    const auto text = network->net.is_coset() ? vst::arc_dump(network->net.coset())
                                              : vst::arc_dump(network->net.digraph());
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return VST_OK;
  });
}

void vst_string_free(char* text) { std::free(text); }

vst_status vst_bounds(const vst_network* network, const vst_options* options, vst_result** out) {
  if (!network || !out) return invalid("null argument");
  const auto o = options ? *options : defaults();
  return guarded([&] { return finish(vst::run_bounds(network->net, o.jobs), out); });
}

vst_status vst_words(const vst_network* network, const vst_options* options, vst_result** out) {
  if (!network || !out) return invalid("null argument");
  const auto o = options ? *options : defaults();
  return guarded([&] { return finish(vst::run_words(network->net, words_options(o)), out); });
}

vst_status vst_factorize(const vst_network* network, const vst_options* options, const char* words_json,
                         vst_result** out) {
  if (!network || !out) return invalid("null argument");
  const auto o = options ? *options : defaults();
  return guarded([&] {
    auto f = factorize_options(o);
    f.words_json = opt_text(words_json);
    return finish(vst::run_factorize(network->net, f), out);
  });
}

vst_status vst_schedule(const vst_network* network, const vst_options* options, const char* factorization_json,
                        vst_result** out) {
  if (!network || !out) return invalid("null argument");
  const auto o = options ? *options : defaults();
  return guarded([&] {
    vst::ScheduleOptions s;
    if (o.bound) s.bound = o.bound;
    s.budget = o.budget;
    s.jobs = o.jobs;
    return finish(vst::run_schedule(network->net, opt_text(factorization_json), s), out);
  });
}

vst_status vst_simulate(const vst_network* network, const vst_options* options, const char* schedule_csv,
                        const char* factorization_json, vst_result** out) {
  if (!network || !schedule_csv || !out) return invalid("null argument");
  const auto o = options ? *options : defaults();
  return guarded([&] {
    return finish(vst::run_simulate(network->net, schedule_csv, opt_text(factorization_json), o.jobs), out);
  });
}

vst_status vst_pipeline(const vst_network* network, const vst_options* options, vst_result** out) {
  if (!network || !out) return invalid("null argument");
  const auto o = options ? *options : defaults();
  return guarded([&] {
    vst::PipelineOptions p;
    p.factorize = factorize_options(o);
    if (o.bound) p.bound = o.bound;
    return finish(vst::run_pipeline(network->net, p), out);
  });
}

vst_status vst_compare(const char* const* descriptors, size_t count, const vst_model_options* options,
                       vst_result** out) {
  if ((!descriptors && count > 0) || !options || !out) return invalid("null argument");
  return guarded([&] {
    std::vector<std::string> texts;
    for (size_t i = 0; i < count; ++i) {
      if (!descriptors[i]) throw vst::Error(vst::Errc::input, "null descriptor");
      texts.emplace_back(descriptors[i]);
    }
    vst::ModelOptions m;
    m.cost_ratio = vst::parse_rational(options->cost_ratio ? options->cost_ratio : "0");
    if (options->matrix_size) m.matrix_size = options->matrix_size;
    m.iterations = options->iterations;
    m.beta = vst::parse_rational(options->beta ? options->beta : "1");
    m.exponent = options->exponent;
    if (options->wire_budget) m.wire_budget = vst::parse_rational(options->wire_budget);
    m.budget = options->budget;
    m.jobs = options->jobs;
    return finish(vst::run_compare(texts, m), out);
  });
}

size_t vst_result_artifact_count(const vst_result* result) { return result ? result->r.artifacts.size() : 0; }

const char* vst_result_artifact_name(const vst_result* result, size_t index) {
  if (!result || index >= result->r.artifacts.size()) return nullptr;
  return result->r.artifacts[index].name.c_str();
}

const char* vst_result_artifact_text(const vst_result* result, size_t index) {
  if (!result || index >= result->r.artifacts.size()) return nullptr;
  return result->r.artifacts[index].content.c_str();
}

const char* vst_result_find(const vst_result* result, const char* name) {
  if (!result || !name) return nullptr;
  const auto* s = result->r.find(name);
  return s ? s->c_str() : nullptr;
}

const char* vst_result_summary(const vst_result* result) { return result ? result->r.summary.c_str() : ""; }

const char* vst_result_message(const vst_result* result) { return result ? result->r.message.c_str() : ""; }

int vst_result_exit_code(const vst_result* result) { return result ? result->r.exit_code : 1; }

void vst_result_free(vst_result* result) { delete result; }

}  // extern "C"
