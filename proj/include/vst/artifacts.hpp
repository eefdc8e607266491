#pragma once

// Text formats passed between subcommands. Every writer here has a reader
// that accepts its output unchanged.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vst/factorization.hpp"
#include "vst/layers.hpp"
#include "vst/network.hpp"
#include "vst/scheduling.hpp"
#include "vst/transpose_sim.hpp"
#include "vst/words.hpp"

namespace vst {

// {"P", "d", "D" (diameter), "n", "N", "theta", "distance_sum", "average_distance"}.
// average_distance is sum k n_k / P as "num/den" or an integer string.
[[nodiscard]] std::string bounds_json(const LayerProfile& profile);

struct WordsReport {
  WordSet words;
  std::string mode;                  // "exact", "load_balanced" or "first_found"
  std::optional<std::uint64_t> psi_exact;
  bool exact = false;
  std::uint64_t theta = 0;
};

// {"words": {"<vertex>": [labels]}, "vertices": [...], "occurrences": [...], "psi_W", ...}
[[nodiscard]] std::string words_json(const Network& net, const WordsReport& report);
[[nodiscard]] WordSet read_words_json(std::string_view text, std::size_t n);

// {"n", "d", "factors": [[succ]], "words": [[labels]], "short", "source"}
[[nodiscard]] std::string factorization_json(const SpanningFactorization& f, bool is_short, std::string_view source);
// Matches each factor's successor array to arcs of `g` and checks the result.
[[nodiscard]] SpanningFactorization read_factorization_json(std::string_view text, const Digraph& g);

// Header "word_target,position,factor,time"; one row per letter.
[[nodiscard]] std::string schedule_csv(std::span<const Word> words, const Schedule& s);

struct ScheduleTable {
  std::vector<Word> words;  // indexed by word_target; missing targets stay empty
  Schedule schedule;
};
[[nodiscard]] ScheduleTable read_schedule_csv(std::string_view text, std::size_t n);

struct ScheduleSummary {
  std::uint32_t makespan = 0;
  Classification flags;
  std::uint64_t theta = 0;
  std::uint64_t psi_for_w = 0;
  std::optional<std::uint32_t> corollary6;
  bool exact = true;
  std::string method;
};
[[nodiscard]] std::string schedule_summary_json(const ScheduleSummary& s);

// Header "time,src,dst,gen,packet_src,packet_dst".
[[nodiscard]] std::string trace_csv(const TransposeTrace& trace);

struct Verdict {
  std::uint32_t tau = 0;
  std::uint64_t theta = 0;
  std::uint64_t psi_w = 0;
  bool optimal = false;
  std::size_t conflicts = 0;
  std::size_t undelivered = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;

  // "tau=<tau> theta=<theta> psi_W=<psi> optimal=<bool>"
  [[nodiscard]] std::string line() const;
};
[[nodiscard]] Verdict make_verdict(const TransposeTrace& trace, std::uint64_t theta, std::uint64_t psi_w);
[[nodiscard]] std::string verdict_json(const Verdict& v);

}  // namespace vst
