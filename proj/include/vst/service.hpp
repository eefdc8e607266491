#pragma once

// Subcommand logic shared by the C API and tests. Each run_* returns the
// files it produced plus a line for stdout; failures throw vst::Error.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vst/cost_model.hpp"
#include "vst/error.hpp"
#include "vst/factorization.hpp"
#include "vst/network.hpp"
#include "vst/scheduling.hpp"

namespace vst {

struct Artifact {
  std::string name;  // e.g. "schedule.csv"
  std::string content;
};

struct CommandResult {
  std::vector<Artifact> artifacts;
  std::string summary;
  int exit_code = 0;
  std::string message;  // set when exit_code != 0

  [[nodiscard]] const std::string* find(std::string_view name) const;
};

// 0 ok, 1 input/validation, 2 infeasible or budget exhausted, 3 internal.
[[nodiscard]] int exit_code_for(Errc code) noexcept;

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct WordsOptions {
  std::string mode = "exact";  // exact | load_balanced | first_found
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

struct FactorizeOptions {
  bool search = false;
  std::uint64_t budget = kDefaultBudget;
  std::uint32_t max_extra_length = 1;
  std::string mode = "exact";
  std::optional<std::string> words_json;  // Cayley route only
  unsigned jobs = 1;
};

struct ScheduleOptions {
  std::optional<std::uint32_t> bound;
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

struct PipelineOptions {
  FactorizeOptions factorize;
  std::optional<std::uint32_t> bound;
};

struct ModelOptions {
  Rational cost_ratio = 0;               // rho
  std::optional<std::uint64_t> matrix_size;  // N, defaults to the largest P
  std::uint64_t iterations = 1;          // M
  Rational beta = 1;
  std::uint32_t exponent = 1;
  std::optional<Rational> wire_budget;   // gamma_max, required
  std::uint64_t budget = kDefaultBudget; // for measuring tau on graph descriptors
  unsigned jobs = 1;
};

struct ScheduledWords {
  Schedule schedule;
  Classification flags;
  std::uint64_t psi_w = 0;
  std::optional<std::uint32_t> corollary6;
  bool exact = true;
  std::string method;
};

// Picks the scheduler: exact search under `bound` when given, the
// diameter-2 construction when it applies, otherwise branch and bound seeded
// by the greedy makespan. Errc::infeasible / Errc::budget when `bound` fails.
[[nodiscard]] ScheduledWords schedule_words(const LabeledGraph& g, std::span<const Word> words,
                                            const LayerProfile& profile, std::optional<std::uint32_t> bound,
                                            std::uint64_t budget);

[[nodiscard]] CommandResult run_bounds(const Network& net, unsigned jobs = 1);
[[nodiscard]] CommandResult run_words(const Network& net, const WordsOptions& options);
[[nodiscard]] CommandResult run_factorize(const Network& net, const FactorizeOptions& options);
[[nodiscard]] CommandResult run_schedule(const Network& net, const std::optional<std::string>& factorization_json,
                                         const ScheduleOptions& options);
[[nodiscard]] CommandResult run_simulate(const Network& net, std::string_view schedule_csv,
                                         const std::optional<std::string>& factorization_json, unsigned jobs = 1);
[[nodiscard]] CommandResult run_pipeline(const Network& net, const PipelineOptions& options);
// Each descriptor is a JSON object or array of objects: {"name", "P", "d", "D", "tau"?} or
// {"name", "builtin"} / {"name", "graph": {...graph spec...}}, whose P, d, D and tau are measured.
[[nodiscard]] CommandResult run_compare(std::span<const std::string> descriptors, const ModelOptions& options);

}  // namespace vst
