#include "ghzt/analysis.hpp"

#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace ghzt {

namespace {

constexpr double kBMax = 0.70710678118654752440;
constexpr double kRangeTol = 1e-12;

void check_n(long long n) {
  if (n < 1) throw InvalidArgument(fmt::format("n must be >= 1, got {}", n));
}

}  // namespace

ResourceCounts proposed_resources(long long n) {
  check_n(n);
  return {2 * n + 1, n + 3};
}

ResourceCounts bell_resources(long long n) {
  check_n(n);
  return {3 * n, 2 * n};
}

EfficiencyPoint efficiency(long long n) {
  EfficiencyPoint e;
  e.n = n;
  e.proposed = proposed_resources(n);
  e.bell = bell_resources(n);
  e.eta_q_fraction = static_cast<double>(e.bell.qubits - e.proposed.qubits) / static_cast<double>(e.bell.qubits);
  e.eta_c_fraction = static_cast<double>(e.bell.cbits - e.proposed.cbits) / static_cast<double>(e.bell.cbits);
  // Percent straight from the integer ratio keeps n=10 exact (30, 35).
  e.eta_q = static_cast<double>(100 * (e.bell.qubits - e.proposed.qubits)) / static_cast<double>(e.bell.qubits);
  e.eta_c = static_cast<double>(100 * (e.bell.cbits - e.proposed.cbits)) / static_cast<double>(e.bell.cbits);
  return e;
}

double eta_q_formula(long long n) {
  check_n(n);
  return (1.0 / 3.0 - 1.0 / (3.0 * static_cast<double>(n))) * 100.0;
}

double eta_c_formula(long long n) {
  check_n(n);
  return (0.5 - 3.0 / (2.0 * static_cast<double>(n))) * 100.0;
}

double success_probability(double b) {
  if (!(b >= 0.0) || b > kBMax + kRangeTol) throw InvalidArgument(fmt::format("b = {} outside [0, 1/sqrt(2)]", b));
  // The endpoint is exact: 1/sqrt(2) is not representable and 2b^2 would land one ulp off.
  if (std::abs(b - kBMax) <= kRangeTol) return 1.0;
  return std::min(1.0, 2.0 * b * b);
}

std::vector<SweepRow> success_curve(double b_min, double b_max, int steps) {
  if (!(b_min >= 0.0) || !(b_min <= b_max) || b_max > kBMax + kRangeTol) {
    throw InvalidArgument(fmt::format("sweep needs 0 <= b_min <= b_max <= 1/sqrt(2), got [{}, {}]", b_min, b_max));
  }
  if (steps < 1) throw InvalidArgument(fmt::format("steps must be >= 1, got {}", steps));
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double b = steps == 1 ? b_min : (i == steps - 1 ? b_max : b_min + (b_max - b_min) * i / (steps - 1));
    rows.push_back({b, success_probability(b)});
  }
  return rows;
}

double eve_guess_probability(int hops, double p_choice) {
  if (hops < 1) throw InvalidArgument(fmt::format("hops must be >= 1, got {}", hops));
  if (!(p_choice >= 0.0 && p_choice <= 1.0)) throw InvalidArgument(fmt::format("p_choice = {} outside [0, 1]", p_choice));
  return std::pow(std::max(p_choice, 1.0 - p_choice), hops);
}

}  // namespace ghzt
