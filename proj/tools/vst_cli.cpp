// Command-line front end. Talks to the library only through vst.h.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vst/vst.h"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string spec;
  std::string builtin;
  std::string out;
  bool print = false;
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::size_t cap = 100'000;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  text = s.str();
  return true;
}

int fail(vst_status status, const std::string& context = {}) {
  std::cerr << "error";
  if (!context.empty()) std::cerr << " (" << context << ")";
  // Most messages already open with their category.
  const std::string name = vst_status_name(status), msg = vst_last_error();
  std::cerr << ": ";
  if (msg.rfind(name, 0) != 0) std::cerr << name << ": ";
  std::cerr << msg << "\n";
  return vst_status_exit_code(status);
}

int io_error(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  return 1;
}

class NetworkHandle {
 public:
  ~NetworkHandle() { vst_network_free(net_); }
  vst_network* get() const { return net_; }
  vst_network** slot() { return &net_; }

 private:
  vst_network* net_ = nullptr;
};

class ResultHandle {
 public:
  ~ResultHandle() { vst_result_free(res_); }
  vst_result* get() const { return res_; }
  vst_result** slot() { return &res_; }

 private:
  vst_result* res_ = nullptr;
};

int load_network(const Common& c, NetworkHandle& net) {
  if (c.spec.empty() == c.builtin.empty()) return io_error("give exactly one of --spec or --builtin");
  if (!c.builtin.empty()) {
    auto st = vst_network_from_builtin(c.builtin.c_str(), net.slot());
    return st == VST_OK ? 0 : fail(st, c.builtin);
  }
  std::string text;
  if (!read_file(c.spec, text)) return io_error("cannot read " + c.spec);
  auto st = vst_network_from_json(text.c_str(), c.cap, net.slot());
  return st == VST_OK ? 0 : fail(st, c.spec);
}

vst_options make_options(const Common& c) {
  vst_options o;
  vst_options_init(&o);
  o.budget = c.budget;
  o.jobs = c.jobs;
  o.seed = c.seed;
  return o;
}

// Writes artifacts to --out, prints the summary, and maps the status.
int emit(const Common& c, vst_status st, const ResultHandle& res) {
  if (st != VST_OK && st != VST_E_REJECTED) return fail(st);
  const auto* r = res.get();
  if (!c.out.empty()) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) return io_error("cannot create " + c.out + ": " + ec.message());
    for (std::size_t i = 0; i < vst_result_artifact_count(r); ++i) {
      const auto path = fs::path(c.out) / vst_result_artifact_name(r, i);
      std::ofstream f(path, std::ios::binary);
      f << vst_result_artifact_text(r, i);
      if (!f) return io_error("cannot write " + path.string());
    }
  }
  if (c.print) {
    for (std::size_t i = 0; i < vst_result_artifact_count(r); ++i) {
      std::cout << "== " << vst_result_artifact_name(r, i) << " ==\n" << vst_result_artifact_text(r, i);
    }
  }
  std::string summary = vst_result_summary(r);
  std::cout << summary;
  if (!summary.empty() && summary.back() != '\n') std::cout << "\n";
  if (st == VST_E_REJECTED) {
    std::cerr << "error: " << vst_result_message(r) << "\n";
    return vst_result_exit_code(r);
  }
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool graph = true) {
  if (graph) {
    sub->add_option("--spec", c.spec, "JSON graph spec file");
    sub->add_option("--builtin", c.builtin, "petersen, q3, z7-124, z5-12, c4 or k4");
    sub->add_option("--cap", c.cap, "group enumeration cap");
  }
  sub->add_option("--out", c.out, "directory for output files");
  sub->add_flag("--print", c.print, "also print every output file");
  sub->add_option("--budget", c.budget, "node budget for each search");
  sub->add_option("--seed", c.seed, "seed (searches are deterministic; recorded only)");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

vst_word_mode parse_mode(const std::string& m) {
  if (m == "load_balanced") return VST_WORDS_LOAD_BALANCED;
  if (m == "first_found") return VST_WORDS_FIRST_FOUND;
  return VST_WORDS_EXACT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transpose scheduling on vertex-symmetric networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vst_version()));

  Common c;
  std::string mode = "exact";
  bool search = false;
  std::uint32_t max_extra = 1;
  std::uint32_t bound = 0;
  std::string words_file, factorization_file, schedule_file;

  auto* bounds = app.add_subcommand("bounds", "layer profile and average-diameter bound");
  add_common(bounds, c);

  auto* arcs = app.add_subcommand("arcs", "arc list, one \"src dst gen\" line per arc");
  add_common(arcs, c);

  auto* words = app.add_subcommand("words", "shortest word set and generator counts (Cayley graphs)");
  add_common(words, c);
  words->add_option("--mode", mode, "exact, load_balanced or first_found")
      ->check(CLI::IsMember({"exact", "load_balanced", "first_found"}));

  auto* factorize = app.add_subcommand("factorize", "1-factorization with spanning word list");
  add_common(factorize, c);
  factorize->add_flag("--search", search, "search for a spanning factorization");
  factorize->add_option("--max-extra", max_extra, "extra word length allowed after the short search");
  factorize->add_option("--words", words_file, "words file to use (Cayley graphs)");
  factorize->add_option("--mode", mode, "word mode when no words file is given")
      ->check(CLI::IsMember({"exact", "load_balanced", "first_found"}));

  auto* schedule = app.add_subcommand("schedule", "conflict-free schedule for a word list");
  add_common(schedule, c);
  schedule->add_option("--factorization", factorization_file, "factorization file from factorize");
  schedule->add_option("--bound", bound, "largest makespan allowed");

  auto* simulate = app.add_subcommand("simulate", "run the transpose and check the trace");
  add_common(simulate, c);
  simulate->add_option("--schedule", schedule_file, "schedule CSV")->required();
  simulate->add_option("--factorization", factorization_file, "factorization file (needed for coset graphs)");

  auto* pipeline = app.add_subcommand("pipeline", "words, factorization, schedule and simulation in one go");
  add_common(pipeline, c);
  pipeline->add_flag("--search", search, "use the spanning-factorization search even on Cayley graphs");
  pipeline->add_option("--max-extra", max_extra, "extra word length allowed after the short search");
  pipeline->add_option("--bound", bound, "largest makespan allowed");
  pipeline->add_option("--mode", mode, "word mode")->check(CLI::IsMember({"exact", "load_balanced", "first_found"}));

  std::vector<std::string> network_files;
  std::string rho = "0", beta = "1", gamma_max;
  std::uint64_t matrix = 0, iterations = 1;
  std::uint32_t exponent = 1;
  auto* compare = app.add_subcommand("compare", "rank networks under a wire budget");
  add_common(compare, c, false);
  compare->add_option("networks", network_files, "network descriptor files")->required()->check(CLI::ExistingFile);
  compare->add_option("--gamma-max", gamma_max, "wire budget: keep networks with P*d below it")->required();
  compare->add_option("--rho", rho, "processor to wire cost ratio");
  compare->add_option("--N", matrix, "matrix size (default: largest P)");
  compare->add_option("--M", iterations, "iterations");
  compare->add_option("--beta", beta, "alpha(N) = beta N^p");
  compare->add_option("--p", exponent, "exponent p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  auto opts = make_options(c);
  opts.word_mode = parse_mode(mode);
  opts.search = search ? 1 : 0;
  opts.max_extra_length = max_extra;
  opts.bound = bound;

  if (compare->parsed()) {
    std::vector<std::string> texts(network_files.size());
    for (std::size_t i = 0; i < network_files.size(); ++i) {
      if (!read_file(network_files[i], texts[i])) return io_error("cannot read " + network_files[i]);
    }
    std::vector<const char*> ptrs;
    for (const auto& t : texts) ptrs.push_back(t.c_str());
    vst_model_options m;
    vst_model_options_init(&m);
    m.cost_ratio = rho.c_str();
    m.beta = beta.c_str();
    m.matrix_size = matrix;
    m.iterations = iterations;
    m.exponent = exponent;
    m.wire_budget = gamma_max.c_str();
    m.budget = c.budget;
    m.jobs = c.jobs;
    ResultHandle res;
    return emit(c, vst_compare(ptrs.data(), ptrs.size(), &m, res.slot()), res);
  }

  NetworkHandle net;
  if (int rc = load_network(c, net)) return rc;
  ResultHandle res;

  if (arcs->parsed()) {
    char* text = nullptr;
    auto st = vst_network_arc_dump(net.get(), &text);
    if (st != VST_OK) return fail(st);
    std::cout << text;
    vst_string_free(text);
    return 0;
  }
  if (bounds->parsed()) return emit(c, vst_bounds(net.get(), &opts, res.slot()), res);
  if (words->parsed()) return emit(c, vst_words(net.get(), &opts, res.slot()), res);
  if (factorize->parsed()) {
    std::string text;
    if (!words_file.empty() && !read_file(words_file, text)) return io_error("cannot read " + words_file);
    return emit(c, vst_factorize(net.get(), &opts, words_file.empty() ? nullptr : text.c_str(), res.slot()), res);
  }
  if (schedule->parsed()) {
    std::string text;
    if (!factorization_file.empty() && !read_file(factorization_file, text)) {
      return io_error("cannot read " + factorization_file);
    }
    return emit(c, vst_schedule(net.get(), &opts, factorization_file.empty() ? nullptr : text.c_str(), res.slot()),
                res);
  }
  if (simulate->parsed()) {
    std::string sched, fact;
    if (!read_file(schedule_file, sched)) return io_error("cannot read " + schedule_file);
    if (!factorization_file.empty() && !read_file(factorization_file, fact)) {
      return io_error("cannot read " + factorization_file);
    }
    return emit(c,
                vst_simulate(net.get(), &opts, sched.c_str(), factorization_file.empty() ? nullptr : fact.c_str(),
                             res.slot()),
                res);
  }
  if (pipeline->parsed()) return emit(c, vst_pipeline(net.get(), &opts, res.slot()), res);
  return 1;
}
