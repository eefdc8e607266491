#include "vst/service.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "vst/artifacts.hpp"
#include "vst/layers.hpp"
#include "vst/transpose_sim.hpp"
#include "vst/words.hpp"

namespace vst {

using json = nlohmann::json;

const std::string* CommandResult::find(std::string_view name) const {
  for (const auto& a : artifacts) {
    if (a.name == name) return &a.content;
  }
  return nullptr;
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::budget:
    case Errc::infeasible:
      return 2;
    case Errc::internal:
      return 3;
    default:
      return 1;
  }
}

namespace {

LayerProfile profile_of(const Network& net, unsigned jobs) {
  return net.is_coset() ? layer_profile(net.coset(), 0, jobs) : layer_profile(net.digraph(), 0, jobs);
}

struct Routed {
  SpanningFactorization f;
  bool is_short = true;
  bool cayley = false;  // factor j is generator j
  std::string source;
  WordsReport words;
  std::string search_report;
};

WordsReport choose_words(const Network& net, const std::string& mode, std::uint64_t budget, std::uint64_t theta) {
  const auto& g = net.coset();
  WordsReport r;
  r.mode = mode;
  r.theta = theta;
  if (mode == "exact") {
    auto best = regular_bound_exact(g, budget);
    r.words = std::move(best.witness);
    r.psi_exact = best.value;
    r.exact = best.exact;
  } else if (mode == "load_balanced") {
    r.words = bfs_word_set(g, WordMode::load_balanced);
  } else if (mode == "first_found") {
    r.words = bfs_word_set(g, WordMode::first_found);
  } else {
    throw Error(Errc::input, "unknown word mode \"" + mode + "\" (exact, load_balanced, first_found)");
  }
  return r;
}

Routed route(const Network& net, const FactorizeOptions& options, std::uint64_t theta) {
  Routed out;
  if (net.is_cayley() && !options.search) {
    if (options.words_json) {
      out.words.words = read_words_json(*options.words_json, net.vertex_count());
      out.words.mode = "supplied";
      out.words.theta = theta;
      check_word_set(net.coset().labels(), out.words.words);
    } else {
      out.words = choose_words(net, options.mode, options.budget, theta);
    }
    out.f = spanning_factorization_from_cayley(net.coset(), out.words.words);
    out.is_short = out.words.words.shortest;
    out.cayley = true;
    out.source = "cayley";
    return out;
  }
  SearchOptions so;
  so.budget = options.budget;
  so.max_extra_length = options.max_extra_length;
  auto outcome = search_spanning_factorization(net.digraph(), so);
  if (!outcome.result) throw Error(outcome.exhausted ? Errc::infeasible : Errc::budget, outcome.report);
  out.f = std::move(*outcome.result);
  out.is_short = outcome.is_short;
  out.source = "search";
  out.search_report = outcome.report;
  out.words.words.words = out.f.words;
  out.words.words.shortest = outcome.is_short;
  out.words.mode = "factor-search";
  out.words.theta = theta;
  return out;
}

std::uint64_t max_load(std::span<const Word> words, std::size_t d) {
  auto counts = generator_occurrences(words, d);
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

ScheduleSummary summary_of(const ScheduledWords& s, std::uint64_t theta) {
  ScheduleSummary out;
  out.makespan = s.schedule.makespan();
  out.flags = s.flags;
  out.theta = theta;
  out.psi_for_w = s.psi_w;
  out.corollary6 = s.corollary6;
  out.exact = s.exact;
  out.method = s.method;
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

ScheduledWords schedule_words(const LabeledGraph& g, std::span<const Word> words, const LayerProfile& profile,
                              std::optional<std::uint32_t> bound, std::uint64_t budget) {
  ScheduledWords out;
  out.psi_w = max_load(words, g.d);
  if (profile.diameter <= 2) out.corollary6 = corollary6_bound(layer_two_profile(words, g.d));

  bool done = false;
  if (bound) {
    auto ex = exact_min_schedule(words, g.d, *bound, budget);
    if (!ex.schedule) {
      if (!ex.exact) {
        throw Error(Errc::budget, "budget exhausted before a schedule with makespan <= " + std::to_string(*bound) +
                                      " was found");
      }
      throw Error(Errc::infeasible, "no schedule with makespan <= " + std::to_string(*bound) + " exists (lower bound " +
                                        std::to_string(ex.lower_bound) + ")");
    }
    out.schedule = std::move(*ex.schedule);
    out.exact = ex.exact;
    out.method = "bounded-search";
    done = true;
  } else if (profile.diameter <= 2) {
    try {
      auto r = diameter2_schedule(g, words, budget);
      out.schedule = std::move(r.schedule);
      out.exact = r.exact;
      out.method = "diameter-2";
      done = true;
    } catch (const Error& e) {
      // Duplicate generators or non-shortest words: use the general search.
      if (e.code() != Errc::input) throw;
    }
  }
  if (!done) {
    auto greedy = greedy_schedule(words, g.d);
    auto ex = exact_min_schedule(words, g.d, greedy.makespan(), budget);
    out.exact = ex.exact;
    out.schedule = ex.schedule ? std::move(*ex.schedule) : std::move(greedy);
    out.method = "branch-and-bound";
  }
  out.flags = classify(words, g.d, out.schedule, profile);
  return out;
}

CommandResult run_bounds(const Network& net, unsigned jobs) {
  auto profile = profile_of(net, jobs);
  CommandResult r;
  auto text = bounds_json(profile);
  r.artifacts.push_back({"bounds.json", text});
  r.summary = text;
  return r;
}

CommandResult run_words(const Network& net, const WordsOptions& options) {
  if (!net.is_cayley()) {
    throw Error(Errc::unsupported_input,
                "word sets are defined for Cayley graphs; use factorize for coset graphs and raw digraphs");
  }
  auto profile = profile_of(net, options.jobs);
  auto report = choose_words(net, options.mode, options.budget, profile.theta);
  CommandResult r;
  r.artifacts.push_back({"words.json", words_json(net, report)});
  r.summary = "psi_W=" + std::to_string(regular_bound_for(report.words, net.degree())) +
              " theta=" + std::to_string(profile.theta);
  if (report.psi_exact) r.summary += " exact=" + bool_text(report.exact);
  return r;
}

CommandResult run_factorize(const Network& net, const FactorizeOptions& options) {
  auto profile = profile_of(net, options.jobs);
  auto routed = route(net, options, profile.theta);
  CommandResult r;
  r.artifacts.push_back({"factorization.json", factorization_json(routed.f, routed.is_short, routed.source)});
  r.summary = "factors=" + std::to_string(routed.f.base.d) + " words=" + std::to_string(routed.f.words.size()) +
              " short=" + bool_text(routed.is_short) + " source=" + routed.source;
  if (!routed.search_report.empty()) r.summary += "\n" + routed.search_report;
  return r;
}

CommandResult run_schedule(const Network& net, const std::optional<std::string>& factorization_json_text,
                           const ScheduleOptions& options) {
  auto profile = profile_of(net, options.jobs);
  SpanningFactorization f;
  if (factorization_json_text) {
    f = read_factorization_json(*factorization_json_text, net.digraph());
    auto check = verify_spanning(f.base, f.words, net.digraph());
    if (!check) throw Error(Errc::validation, "factorization is not spanning: " + check.reason);
  } else {
    FactorizeOptions fo;
    fo.budget = options.budget;
    fo.jobs = options.jobs;
    f = route(net, fo, profile.theta).f;
  }
  auto s = schedule_words(f.base.labeled(), f.words, profile, options.bound, options.budget);
  CommandResult r;
  r.artifacts.push_back({"schedule.csv", schedule_csv(f.words, s.schedule)});
  r.artifacts.push_back({"schedule.json", schedule_summary_json(summary_of(s, profile.theta))});
  r.summary = "makespan=" + std::to_string(s.schedule.makespan()) + " theta=" + std::to_string(profile.theta) +
              " psi_W=" + std::to_string(s.psi_w) + " method=" + s.method;
  return r;
}

CommandResult run_simulate(const Network& net, std::string_view schedule_text,
                           const std::optional<std::string>& factorization_json_text, unsigned jobs) {
  auto profile = profile_of(net, jobs);
  auto table = read_schedule_csv(schedule_text, net.vertex_count());
  std::vector<TimedPath> paths;
  LabeledGraph g;
  if (factorization_json_text) {
    SpanningFactorization f = read_factorization_json(*factorization_json_text, net.digraph());
    if (f.words != table.words) throw Error(Errc::validation, "schedule words differ from the factorization's words");
    g = f.base.labeled();
    paths = expand_factor_paths(f, table.schedule);
  } else if (net.is_cayley()) {
    WordSet w;
    w.words = table.words;
    w.shortest = false;
    g = net.coset().labels();
    paths = expand_cayley_paths(net.coset(), w, table.schedule);
  } else {
    throw Error(Errc::input, "this graph is not a Cayley graph; pass the factorization file as well");
  }
  auto trace = run_transpose(g, paths);
  auto verdict = make_verdict(trace, profile.theta, max_load(table.words, g.d));
  CommandResult r;
  r.artifacts.push_back({"trace.csv", trace_csv(trace)});
  r.artifacts.push_back({"verdict.json", verdict_json(verdict)});
  r.summary = verdict.line();
  if (!trace.valid()) {
    r.exit_code = 1;
    r.message = "schedule does not deliver conflict-free: " + std::to_string(verdict.conflicts) + " conflicts, " +
                std::to_string(verdict.undelivered) + " undelivered, " + std::to_string(verdict.malformed) +
                " malformed";
  }
  return r;
}

CommandResult run_pipeline(const Network& net, const PipelineOptions& options) {
  auto profile = profile_of(net, options.factorize.jobs);
  auto routed = route(net, options.factorize, profile.theta);
  auto s = schedule_words(routed.f.base.labeled(), routed.f.words, profile, options.bound, options.factorize.budget);

  std::vector<TimedPath> paths;
  LabeledGraph g;
  if (routed.cayley) {
    g = net.coset().labels();
    paths = expand_cayley_paths(net.coset(), routed.words.words, s.schedule);
  } else {
    g = routed.f.base.labeled();
    paths = expand_factor_paths(routed.f, s.schedule);
  }
  auto trace = run_transpose(g, paths);
  auto verdict = make_verdict(trace, profile.theta, s.psi_w);

  CommandResult r;
  r.artifacts.push_back({"words.json", words_json(net, routed.words)});
  r.artifacts.push_back({"factorization.json", factorization_json(routed.f, routed.is_short, routed.source)});
  r.artifacts.push_back({"schedule.csv", schedule_csv(routed.f.words, s.schedule)});
  r.artifacts.push_back({"schedule.json", schedule_summary_json(summary_of(s, profile.theta))});
  r.artifacts.push_back({"trace.csv", trace_csv(trace)});
  r.artifacts.push_back({"verdict.json", verdict_json(verdict)});
  r.summary = verdict.line();
  if (!trace.valid()) {
    r.exit_code = 3;
    r.message = "simulator rejected the generated schedule";
  }
  return r;
}

namespace {

Rational rational_field(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_float()) {
    std::ostringstream s;
    s << v.get<double>();
    return parse_rational(s.str());
  }
  throw Error(Errc::parse, path + ": expected a number or a \"num/den\" string");
}

std::uint64_t count_field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned() || it->get<std::uint64_t>() == 0) {
    throw Error(Errc::parse, path + "/" + key + ": expected a positive integer");
  }
  return it->get<std::uint64_t>();
}

NetworkCandidate candidate_from(const json& obj, const std::string& path, const ModelOptions& options) {
  if (!obj.is_object()) throw Error(Errc::parse, path + ": expected an object");
  NetworkCandidate c;
  c.name = obj.value("name", path);
  c.params.cost_ratio = options.cost_ratio;
  c.params.iterations = options.iterations;
  c.params.beta = options.beta;
  c.params.exponent = options.exponent;

  std::optional<Network> net;
  if (obj.contains("builtin")) {
    net = Network::builtin(obj["builtin"].get<std::string>());
  } else if (obj.contains("graph")) {
    net = Network::from_json(obj["graph"].dump());
  }
  if (net) {
    auto profile = profile_of(*net, options.jobs);
    c.params.processors = profile.vertices;
    c.params.degree = profile.degree;
    c.params.avg_diameter = Rational(profile.distance_sum(), profile.vertices);
    const bool ideal = obj.contains("tau") && obj["tau"] == "ideal";
    if (!ideal) {
      PipelineOptions po;
      po.factorize.budget = options.budget;
      po.factorize.jobs = options.jobs;
      auto run = run_pipeline(*net, po);
      if (run.exit_code != 0) throw Error(Errc::internal, c.name + ": " + run.message);
      auto verdict = json::parse(*run.find("verdict.json"));
      c.tau = Rational(verdict["tau"].get<std::uint64_t>());
    }
  } else {
    c.params.processors = count_field(obj, "P", path);
    c.params.degree = count_field(obj, "d", path);
    if (!obj.contains("D")) throw Error(Errc::parse, path + "/D: missing");
    c.params.avg_diameter = rational_field(obj["D"], path + "/D");
    if (obj.contains("tau") && obj["tau"] != "ideal") c.tau = rational_field(obj["tau"], path + "/tau");
  }
  return c;
}

}  // namespace

CommandResult run_compare(std::span<const std::string> descriptors, const ModelOptions& options) {
  std::vector<NetworkCandidate> candidates;
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    json doc;
    try {
      doc = json::parse(descriptors[i]);
    } catch (const json::parse_error& e) {
      throw Error(Errc::parse, "descriptor " + std::to_string(i) + ": " + e.what());
    }
    const auto base = "descriptor " + std::to_string(i);
    if (doc.is_array()) {
      for (std::size_t k = 0; k < doc.size(); ++k) {
        candidates.push_back(candidate_from(doc[k], base + "/" + std::to_string(k), options));
      }
    } else {
      candidates.push_back(candidate_from(doc, base, options));
    }
  }
  if (candidates.size() < 2) throw Error(Errc::input, "compare needs at least two networks");
  if (!options.wire_budget) throw Error(Errc::input, "compare needs a wire budget (gamma_max)");

  std::uint64_t largest = 0;
  for (const auto& c : candidates) largest = std::max(largest, c.params.processors);
  for (auto& c : candidates) c.params.matrix_size = options.matrix_size.value_or(largest);

  auto cmp = compare_networks(candidates, *options.wire_budget);

  std::ostringstream csv;
  csv << "rank,name,P,d,wires,within_budget,tau,tau_mode,T_p,T_c,T\n";
  auto row = [&](const RankedNetwork& n, const std::string& rank) {
    csv << rank << ',' << n.name << ',' << n.processors << ',' << n.degree << ',' << n.wires << ','
        << bool_text(n.within_budget) << ',' << to_string(n.times.tau) << ','
        << (n.times.optimistic ? "optimistic" : "measured") << ',' << to_string(n.times.compute) << ','
        << to_string(n.times.communication) << ',' << to_string(n.times.total) << '\n';
  };
  for (std::size_t i = 0; i < cmp.ranking.size(); ++i) row(cmp.ranking[i], std::to_string(i + 1));
  for (const auto& n : cmp.rejected) row(n, "");

  json verdict;
  verdict["winner"] = cmp.winner ? json(*cmp.winner) : json(nullptr);
  verdict["explanation"] = cmp.explanation;
  verdict["wire_budget"] = to_string(*options.wire_budget);
  verdict["ranking"] = json::array();
  for (const auto& n : cmp.ranking) verdict["ranking"].push_back(n.name);
  verdict["rejected"] = json::array();
  for (const auto& n : cmp.rejected) verdict["rejected"].push_back(n.name);

  CommandResult r;
  r.artifacts.push_back({"ranking.csv", csv.str()});
  r.artifacts.push_back({"compare.json", verdict.dump(2) + "\n"});
  r.summary = cmp.winner ? "winner=" + *cmp.winner : "winner=none";
  if (!cmp.winner) {
    r.exit_code = 2;
    r.message = cmp.explanation;
  }
  return r;
}

}  // namespace vst
