#pragma once

// Closed-form calculators: resource efficiency of the GHZ/POVM scheme over
// n parallel Bell teleports, the conclusive-probability curve, and an
// eavesdropper's chance of guessing every hop's channel type.

#include <vector>

namespace ghzt {

struct ResourceCounts {
  long long qubits = 0;
  long long cbits = 0;
};

/// 2n+1 qubits, n+3 cbits.
ResourceCounts proposed_resources(long long n);
/// 3n qubits, 2n cbits.
ResourceCounts bell_resources(long long n);

struct EfficiencyPoint {
  long long n = 0;
  double eta_q = 0.0;  // percent
  double eta_c = 0.0;  // percent
  double eta_q_fraction = 0.0;
  double eta_c_fraction = 0.0;
  ResourceCounts proposed;
  ResourceCounts bell;
};

/// Relative saving (bell - proposed) / bell, from the raw counts.
/// Negative values at small n are reported as is.
EfficiencyPoint efficiency(long long n);

/// eta_q = (1/3 - 1/(3n)) * 100 and eta_c = (1/2 - 3/(2n)) * 100.
double eta_q_formula(long long n);
double eta_c_formula(long long n);

struct SweepRow {
  double b = 0.0;
  double p_success = 0.0;
};

/// 2 b^2.
double success_probability(double b);

/// `steps` evenly spaced b values from b_min to b_max inclusive. steps = 1
/// yields b_min only.
std::vector<SweepRow> success_curve(double b_min, double b_max, int steps);

/// max(p, 1 - p)^hops.
double eve_guess_probability(int hops, double p_choice);

}  // namespace ghzt
