#include "vst/cost_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "vst/error.hpp"

namespace vst {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

Rational parse_rational(const std::string& text) {
  auto fail = [&] { return Error(Errc::parse, "not a rational number: \"" + text + "\""); };
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    boost::multiprecision::cpp_int d(den);
    if (d == 0) throw fail();
    value = Rational(boost::multiprecision::cpp_int(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac)) throw fail();
    boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                      static_cast<unsigned>(frac.size()));
    value = Rational(boost::multiprecision::cpp_int(whole + frac), scale);
  } else {
    if (!all_digits(s)) throw fail();
    value = Rational(boost::multiprecision::cpp_int(s));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

void CostParams::validate() const {
  if (processors == 0 || degree == 0 || matrix_size == 0 || iterations == 0) {
    throw Error(Errc::domain, "P, d, N and M must be positive");
  }
  if (cost_ratio < 0 || beta <= 0 || avg_diameter < 0) {
    throw Error(Errc::domain, "rho and D must be non-negative and beta positive");
  }
}

Rational network_cost(std::uint64_t processors, std::uint64_t degree, const Rational& cost_ratio) {
  return Rational(processors) * (cost_ratio + Rational(degree));
}

ModelTimes model_times(const CostParams& params, const std::optional<Rational>& tau) {
  params.validate();
  const Rational p(params.processors), d(params.degree), n(params.matrix_size), m(params.iterations);
  Rational alpha = params.beta;
  for (std::uint32_t i = 0; i < params.exponent; ++i) alpha *= n;

  ModelTimes out;
  out.compute = n * m * alpha / p;
  if (tau) {
    out.tau = *tau;
  } else {
    out.tau = params.avg_diameter * p / d;
    out.optimistic = true;
  }
  out.communication = m * (n / p) * (n / p) * out.tau;
  out.total = out.compute + out.communication;
  return out;
}

RegimeResult regime_time(const CostParams& params, const Rational& gamma) {
  params.validate();
  if (gamma <= 1) throw Error(Errc::domain, "gamma must exceed 1 so that lambda = 1/gamma < 1");
  RegimeResult out;
  const double g = to_double(gamma);
  const double big_d = to_double(params.avg_diameter);
  const double n = static_cast<double>(params.matrix_size);
  const double m = static_cast<double>(params.iterations);
  const double alpha = to_double(params.beta) * std::pow(n, params.exponent);
  out.lambda = 1.0 / g;
  out.total = n * m * alpha * std::pow(out.lambda, big_d / (big_d + 1.0)) + big_d * n * n * out.lambda;
  if (params.exponent == 1) out.reduced = to_double(params.beta) * std::pow(g, 1.0 / (big_d + 1.0)) + big_d;
  out.assumption_holds = Rational(params.degree) > params.cost_ratio;
  const double d = static_cast<double>(params.degree);
  out.assumed_processors = std::pow(d, big_d);
  out.assumed_wires = std::pow(d, big_d + 1.0);
  return out;
}

Comparison compare_networks(std::span<const NetworkCandidate> candidates, const Rational& wire_budget) {
  Comparison out;
  for (const auto& c : candidates) {
    RankedNetwork r;
    r.name = c.name;
    r.processors = c.params.processors;
    r.degree = c.params.degree;
    r.wires = c.params.processors * c.params.degree;
    r.within_budget = Rational(r.wires) < wire_budget;
    r.times = model_times(c.params, c.tau);
    (r.within_budget ? out.ranking : out.rejected).push_back(std::move(r));
  }
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [](const RankedNetwork& a, const RankedNetwork& b) {
    if (a.processors != b.processors) return a.processors > b.processors;
    return a.times.total < b.times.total;
  });
  if (out.ranking.empty()) {
    out.explanation = "no network satisfies P*d < " + to_string(wire_budget);
  } else {
    out.winner = out.ranking.front().name;
    out.explanation = out.ranking.size() == 1
                          ? out.ranking.front().name + " is the only network within the wire budget"
                          : out.ranking.front().name + " has the most processors among networks within the wire budget";
  }
  return out;
}

}  // namespace vst
