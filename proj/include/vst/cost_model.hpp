#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vst {

using Rational = boost::multiprecision::cpp_rational;

// "a/b" or "a" (integers), or a decimal like "2.5". Errc::parse otherwise.
[[nodiscard]] Rational parse_rational(const std::string& text);
[[nodiscard]] std::string to_string(const Rational& r);

/// Model of a network running M iterations of "transpose, then apply f to
/// each column" on an N x N matrix, with CPU work alpha(N) = beta * N^p.
struct CostParams {
  std::uint64_t processors = 0;  // P
  std::uint64_t degree = 0;      // d
  Rational avg_diameter = 0;     // D = sum k n_k / P, not rounded
  Rational cost_ratio = 0;       // rho = C_p / C_w
  std::uint64_t matrix_size = 0; // N
  std::uint64_t iterations = 0;  // M
  Rational beta = 1;
  std::uint32_t exponent = 1;    // p

  // Errc::domain unless P, d, N, M > 0, rho >= 0, beta > 0, D >= 0.
  void validate() const;
};

// gamma = C / C_w = P (rho + d).
[[nodiscard]] Rational network_cost(std::uint64_t processors, std::uint64_t degree, const Rational& cost_ratio);

struct ModelTimes {
  Rational compute;        // T_p = N M alpha(N) / P
  Rational communication;  // T_c = M (N / P)^2 tau
  Rational total;
  Rational tau;
  bool optimistic = false;  // tau was the ideal D P / d
};

// With tau given (measured), T_c = M (N/P)^2 tau. Without it, the optimistic
// tau = D P / d is used, giving T_c = M N^2 D / (P d).
[[nodiscard]] ModelTimes model_times(const CostParams& params, const std::optional<Rational>& tau = std::nullopt);

struct RegimeResult {
  double lambda = 0;              // 1 / gamma
  double total = 0;               // N M alpha(N) lambda^(D/(D+1)) + D N^2 lambda
  std::optional<double> reduced;  // beta gamma^(1/(D+1)) + D, only when p == 1
  bool assumption_holds = false;  // d > rho
  double assumed_processors = 0;  // d^D, next to the actual P
  double assumed_wires = 0;       // d^(D+1), next to the actual P d
};

// Errc::domain when gamma <= 1.
[[nodiscard]] RegimeResult regime_time(const CostParams& params, const Rational& gamma);

struct NetworkCandidate {
  std::string name;
  CostParams params;
  std::optional<Rational> tau;  // measured; ideal when absent
};

struct RankedNetwork {
  std::string name;
  std::uint64_t processors = 0;
  std::uint64_t degree = 0;
  std::uint64_t wires = 0;  // P d
  bool within_budget = false;
  ModelTimes times;
};

struct Comparison {
  std::vector<RankedNetwork> ranking;  // within budget, best first
  std::vector<RankedNetwork> rejected; // P d >= budget
  std::optional<std::string> winner;
  std::string explanation;
};

// Keeps candidates with P d < wire_budget, ranks them by P (larger first),
// ties broken by smaller modelled total time.
[[nodiscard]] Comparison compare_networks(std::span<const NetworkCandidate> candidates, const Rational& wire_budget);

}  // namespace vst
