#pragma once

// Unambiguous discrimination of the four sender-side branch states of
// chi (x) GHZ, through reciprocal states and an equal-probability POVM.

#include "ghzt/rng.hpp"
#include "ghzt/states.hpp"
#include "ghzt/tensor.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace ghzt {

using StateQuad = std::array<StateVector, 4>;

/// Tolerance for biorthogonality and POVM validity checks.
inline constexpr double kPovmTol = 1e-10;

/// The four (n+1)-qubit targets, in order
///   phi_1 = a|0^n 0> + b|1^n 1>,  phi_2 = a|0^n 0> - b|1^n 1>,
///   phi_3 = a|1^n 0> + b|0^n 1>,  phi_4 = a|1^n 0> - b|0^n 1>.
StateQuad phi_states(const ChannelSpec& channel);

/// (Phi Phi^dag)^+ phi_i, Phi having the phi_i as columns.
/// Throws LinearDependenceError when the phi_i are linearly dependent.
StateQuad reciprocal_states(const StateQuad& phi);

/// Closed-form reciprocals, e.g. phi~_1 = (1/2a)|0^n 0> + (1/2b)|1^n 1>.
/// Independent of reciprocal_states; used to cross-check it.
StateQuad closed_form_reciprocals(const ChannelSpec& channel);

/// U' phi~_i for a unitary U'. Throws ContractViolation otherwise.
StateQuad transform_reciprocals(const StateQuad& phi_tilde, const Operator& uprime);

/// d_ij = <phi_i|phi_j>; real for this family.
Eigen::Matrix4d gram_matrix(const StateQuad& phi);
/// a^2 M1 + b^2 M2 block form.
Eigen::Matrix4d expected_gram(const ChannelSpec& channel);

/// max_ik |<phi_i|phi~_k> - delta_ik|.
double biorthogonality_residual(const StateQuad& phi, const StateQuad& phi_tilde);

/// U' = U_st (x) I on the sender's n+1 qubits.
Operator frame_unitary(const LogicalInput& frame);

struct DiscriminationSet {
  ChannelSpec channel;
  StateQuad phi;        // targets in the frame of the input
  StateQuad phi_tilde;  // reciprocals in the same frame
  std::array<double, 4> priors{0.25, 0.25, 0.25, 0.25};
  Eigen::Matrix4d gram;
};

/// Targets and reciprocals for the trivial frame (chi_0 inputs).
DiscriminationSet make_discrimination_set(const ChannelSpec& channel);
/// Targets and reciprocals carried into the frame of `frame` by U'.
DiscriminationSet make_discrimination_set(const ChannelSpec& channel, const LogicalInput& frame);

struct PovmAudit {
  double p_closed_form = 0.0;  // 2 b^2
  double p_frame = 0.0;        // 1 / lambda_max(S)
  double completeness_residual = 0.0;
  std::array<double, 5> min_eigenvalue{};
  std::array<std::size_t, 5> rank{};
};

/// {Pi_0, Pi_1..Pi_4}: Pi_k = p |phi~_k><phi~_k|, Pi_0 = I - sum Pi_k.
/// Every instance satisfies positivity, completeness and rank-1 conclusive
/// elements; violations are reported at construction.
class PovmSet {
 public:
  const std::array<Operator, 5>& elements() const noexcept { return elements_; }
  const Operator& operator[](std::size_t k) const { return elements_.at(k); }
  double p() const noexcept { return p_; }
  const PovmAudit& audit() const noexcept { return audit_; }
  std::size_t dim() const noexcept { return elements_[0].rows(); }

 private:
  friend PovmSet build_povm(const StateQuad& phi_tilde, const ChannelSpec& channel);
  PovmSet(std::array<Operator, 5> elements, double p, PovmAudit audit)
      : elements_(std::move(elements)), p_(p), audit_(audit) {}

  std::array<Operator, 5> elements_;
  double p_;
  PovmAudit audit_;
};

/// Throws LinearDependenceError for b = 0 and ConstructionError when any
/// POVM invariant fails (including the two routes to p disagreeing).
PovmSet build_povm(const StateQuad& phi_tilde, const ChannelSpec& channel);

/// sum_i eta_i <phi_i|Pi_i|phi_i>.
double conclusive_probability(const PovmSet& povm, const DiscriminationSet& dset);

struct MeasurementOutcome {
  int index = 0;  // 0 = inconclusive, 1..4 = Pi_k
  bool conclusive = false;
  std::optional<StateVector> bob_state;  // receiver's n qubits, iff conclusive
  double probability = 0.0;
};

/// Born probabilities <psi|Pi_k (x) I|psi> for k = 0..4, and the receiver
/// branch for each conclusive k with nonzero weight.
struct OutcomeDistribution {
  std::array<double, 5> probabilities{};
  std::array<std::optional<StateVector>, 4> bob_branches;
};

/// Throws ConsistencyError when the five probabilities miss 1 by > 1e-8.
OutcomeDistribution outcome_distribution(const StateVector& system, const PovmSet& povm,
                                         const DiscriminationSet& dset);

MeasurementOutcome sample_outcome(const OutcomeDistribution& dist, Rng& rng);

MeasurementOutcome measure(const StateVector& system, const PovmSet& povm, const DiscriminationSet& dset,
                           Rng& rng);
MeasurementOutcome measure(const StateVector& system, const PovmSet& povm, const DiscriminationSet& dset,
                           std::uint64_t rng_seed);

/// Spectrum split of Pi_0 into rank-1 pieces w_j |v_j><v_j| (w_j > 0), the
/// decomposition a dilation of the inconclusive element would realize.
struct InconclusiveDecomposition {
  std::vector<double> weights;
  std::vector<StateVector> vectors;
  double reconstruction_residual = 0.0;  // |Pi_0 - sum w_j v_j v_j^dag|_max
};
InconclusiveDecomposition decompose_inconclusive(const PovmSet& povm);

}  // namespace ghzt
