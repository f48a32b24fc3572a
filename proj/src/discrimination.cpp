#include "ghzt/discrimination.hpp"

#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace ghzt {

namespace {

using RowMajorMatrix = Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Gram eigenvalues at or below this mark the targets as linearly dependent.
constexpr double kIndependenceTol = 1e-12;

struct Indices {
  Eigen::Index all_zero;   // |0^n 0>
  Eigen::Index all_one;    // |1^n 1>
  Eigen::Index ones_zero;  // |1^n 0>
  Eigen::Index zeros_one;  // |0^n 1>
};

Indices indices(int n) {
  const Eigen::Index dim = Eigen::Index{1} << (n + 1);
  return {0, dim - 1, dim - 2, 1};
}

StateVector two_term(int n, Eigen::Index i, Amplitude ci, Eigen::Index j, Amplitude cj) {
  CVector v = CVector::Zero(Eigen::Index{1} << (n + 1));
  v(i) += ci;
  v(j) += cj;
  return StateVector(std::move(v));
}

CMatrix columns(const StateQuad& q) {
  const auto dim = static_cast<Eigen::Index>(q[0].dim());
  CMatrix m(dim, 4);
  for (int k = 0; k < 4; ++k) {
    if (static_cast<Eigen::Index>(q[static_cast<std::size_t>(k)].dim()) != dim) {
      throw DimensionMismatch("discrimination vectors must share one dimension");
    }
    m.col(k) = q[static_cast<std::size_t>(k)].amps();
  }
  return m;
}

}  // namespace

StateQuad phi_states(const ChannelSpec& channel) {
  const int n = channel.n();
  const double a = channel.a();
  const double b = channel.b();
  const Indices ix = indices(n);
  return {two_term(n, ix.all_zero, a, ix.all_one, b), two_term(n, ix.all_zero, a, ix.all_one, -b),
          two_term(n, ix.ones_zero, a, ix.zeros_one, b), two_term(n, ix.ones_zero, a, ix.zeros_one, -b)};
}

StateQuad reciprocal_states(const StateQuad& phi) {
  const CMatrix cols = columns(phi);
  const CMatrix gram = cols.adjoint() * cols;
  const auto gram_eig = herm_eig(Operator(gram, OperatorKind::hermitian));
  if (gram_eig.values.back() <= kIndependenceTol) {
    throw LinearDependenceError(fmt::format(
        "targets are linearly dependent (smallest Gram eigenvalue {:.3e}); a b = 0 channel makes phi_1 = phi_2",
        gram_eig.values.back()));
  }
  const Operator frame = Operator(cols * cols.adjoint(), OperatorKind::hermitian);
  const Operator inv = pinv_psd(frame);
  StateQuad out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = inv.apply(phi[k]);
  return out;
}

StateQuad closed_form_reciprocals(const ChannelSpec& channel) {
  if (channel.b() == 0.0) {
    throw LinearDependenceError("reciprocal states do not exist for b = 0 (phi_1 = phi_2)");
  }
  const int n = channel.n();
  const double ra = 1.0 / (2.0 * channel.a());
  const double rb = 1.0 / (2.0 * channel.b());
  const Indices ix = indices(n);
  return {two_term(n, ix.all_zero, ra, ix.all_one, rb), two_term(n, ix.all_zero, ra, ix.all_one, -rb),
          two_term(n, ix.ones_zero, ra, ix.zeros_one, rb), two_term(n, ix.ones_zero, ra, ix.zeros_one, -rb)};
}

StateQuad transform_reciprocals(const StateQuad& phi_tilde, const Operator& uprime) {
  if (uprime.kind() != OperatorKind::unitary && !uprime.is_unitary()) {
    throw ContractViolation("frame transform U' must be unitary");
  }
  StateQuad out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = uprime.apply(phi_tilde[k]);
  return out;
}

Eigen::Matrix4d gram_matrix(const StateQuad& phi) {
  const CMatrix cols = columns(phi);
  const CMatrix g = cols.adjoint() * cols;
  return g.real();
}

Eigen::Matrix4d expected_gram(const ChannelSpec& channel) {
  Eigen::Matrix4d m1;
  m1 << 1, 1, 0, 0,  //
      1, 1, 0, 0,    //
      0, 0, 1, 1,    //
      0, 0, 1, 1;
  Eigen::Matrix4d m2;
  m2 << 1, -1, 0, 0,  //
      -1, 1, 0, 0,    //
      0, 0, 1, -1,    //
      0, 0, -1, 1;
  const double a = channel.a();
  const double b = channel.b();
  return a * a * m1 + b * b * m2;
}

double biorthogonality_residual(const StateQuad& phi, const StateQuad& phi_tilde) {
  const CMatrix overlaps = columns(phi).adjoint() * columns(phi_tilde);
  return max_abs(overlaps - CMatrix::Identity(4, 4));
}

Operator frame_unitary(const LogicalInput& frame) {
  return kron(build_Ust(frame).materialize(), Operator::identity(2));
}

DiscriminationSet make_discrimination_set(const ChannelSpec& channel) {
  StateQuad phi = phi_states(channel);
  StateQuad tilde = reciprocal_states(phi);
  const Eigen::Matrix4d gram = gram_matrix(phi);
  if ((gram - expected_gram(channel)).cwiseAbs().maxCoeff() > 1e-12) {
    throw ConstructionError("Gram matrix of the targets departs from its block form");
  }
  const double resid = biorthogonality_residual(phi, tilde);
  if (resid > kPovmTol) {
    throw ConstructionError(fmt::format("reciprocal states not biorthogonal (residual {:.3e})", resid));
  }
  return DiscriminationSet{channel, std::move(phi), std::move(tilde), {0.25, 0.25, 0.25, 0.25}, gram};
}

DiscriminationSet make_discrimination_set(const ChannelSpec& channel, const LogicalInput& frame) {
  if (frame.n() != channel.n()) {
    throw DimensionMismatch(fmt::format("input has n = {} but channel has n = {}", frame.n(), channel.n()));
  }
  DiscriminationSet base = make_discrimination_set(channel);
  const Operator uprime = frame_unitary(frame);
  StateQuad phi;
  for (std::size_t k = 0; k < 4; ++k) phi[k] = uprime.apply(base.phi[k]);
  StateQuad tilde = transform_reciprocals(base.phi_tilde, uprime);
  const double resid = biorthogonality_residual(phi, tilde);
  if (resid > kPovmTol) {
    throw ConstructionError(fmt::format("transformed reciprocals not biorthogonal (residual {:.3e})", resid));
  }
  const Eigen::Matrix4d gram = gram_matrix(phi);
  return DiscriminationSet{channel, std::move(phi), std::move(tilde), base.priors, gram};
}

// --- POVM --------------------------------------------------------------------

PovmSet build_povm(const StateQuad& phi_tilde, const ChannelSpec& channel) {
  if (!(channel.b() > 0.0)) {
    throw LinearDependenceError("no unambiguous POVM for b = 0: the targets are linearly dependent");
  }
  const auto dim = static_cast<Eigen::Index>(phi_tilde[0].dim());
  if (dim != (Eigen::Index{1} << channel.num_qubits())) {
    throw DimensionMismatch("reciprocal states do not match the channel dimension");
  }

  PovmAudit audit;
  audit.p_closed_form = 2.0 * channel.b() * channel.b();

  const CMatrix cols = columns(phi_tilde);
  const auto frame_eig = herm_eig(Operator(cols * cols.adjoint(), OperatorKind::hermitian));
  audit.p_frame = 1.0 / frame_eig.values.front();
  if (std::abs(audit.p_closed_form - audit.p_frame) > kPovmTol) {
    throw ConstructionError(fmt::format("equal-probability weight disagrees: 2b^2 = {:.15g}, 1/lambda_max = {:.15g}",
                                        audit.p_closed_form, audit.p_frame));
  }
  const double p = audit.p_closed_form;

  CMatrix conclusive_sum = CMatrix::Zero(dim, dim);
  std::array<CMatrix, 5> mats;
  for (std::size_t k = 0; k < 4; ++k) {
    const CVector& v = phi_tilde[k].amps();
    mats[k + 1] = p * v * v.adjoint();
    conclusive_sum += mats[k + 1];
  }
  mats[0] = CMatrix::Identity(dim, dim) - conclusive_sum;

  std::array<Operator, 5> elements{Operator::identity(1), Operator::identity(1), Operator::identity(1),
                                   Operator::identity(1), Operator::identity(1)};
  CMatrix total = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < 5; ++k) {
    elements[k] = Operator(0.5 * (mats[k] + mats[k].adjoint()), OperatorKind::hermitian);
    total += elements[k].matrix();
    const auto eig = herm_eig(elements[k]);
    audit.min_eigenvalue[k] = eig.values.back();
    const double cutoff = kRankRelTol * std::max(1.0, eig.values.front());
    audit.rank[k] = static_cast<std::size_t>(
        std::count_if(eig.values.begin(), eig.values.end(), [&](double l) { return l > cutoff; }));
  }
  audit.completeness_residual = max_abs(total - CMatrix::Identity(dim, dim));

  for (std::size_t k = 0; k < 5; ++k) {
    if (audit.min_eigenvalue[k] < -kPovmTol) {
      throw ConstructionError(fmt::format("POVM element {} has eigenvalue {:.3e} < -{:.0e}", k,
                                          audit.min_eigenvalue[k], kPovmTol));
    }
  }
  if (audit.completeness_residual > kPovmTol) {
    throw ConstructionError(fmt::format("POVM elements sum to I only within {:.3e}", audit.completeness_residual));
  }
  for (std::size_t k = 1; k < 5; ++k) {
    if (audit.rank[k] != 1) {
      throw ConstructionError(fmt::format("conclusive element {} has rank {}, expected 1", k, audit.rank[k]));
    }
  }
  return PovmSet(std::move(elements), p, audit);
}

double conclusive_probability(const PovmSet& povm, const DiscriminationSet& dset) {
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const CVector& phi = dset.phi[i].amps();
    total += dset.priors[i] * (phi.adjoint() * povm[i + 1].matrix() * phi)(0, 0).real();
  }
  return total;
}

// --- measurement -------------------------------------------------------------

OutcomeDistribution outcome_distribution(const StateVector& system, const PovmSet& povm,
                                         const DiscriminationSet& dset) {
  const int n = dset.channel.n();
  if (system.num_qubits() != 2 * n + 1) {
    throw DimensionMismatch(fmt::format("system has {} qubits, expected {}", system.num_qubits(), 2 * n + 1));
  }
  const Eigen::Index alice_dim = Eigen::Index{1} << (n + 1);
  const Eigen::Index bob_dim = Eigen::Index{1} << n;
  if (static_cast<Eigen::Index>(povm.dim()) != alice_dim) {
    throw DimensionMismatch("POVM does not act on the sender's n+1 qubits");
  }
  // psi[A * 2^n + B] as a (sender x receiver) matrix.
  const Eigen::Map<const RowMajorMatrix> psi(system.amps().data(), alice_dim, bob_dim);

  OutcomeDistribution dist;
  double total = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    const CMatrix applied = povm[k].matrix() * psi;
    const double prob = (psi.conjugate().cwiseProduct(applied)).sum().real();
    dist.probabilities[k] = std::max(0.0, prob);
    total += prob;
  }
  if (std::abs(total - system.norm_squared()) > 1e-8 || std::abs(total - 1.0) > 1e-8) {
    throw ConsistencyError(fmt::format("outcome probabilities sum to {:.12g}", total));
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (dist.probabilities[k + 1] <= 0.0) continue;
    const CVector branch = (dset.phi_tilde[k].amps().adjoint() * psi).transpose();
    if (branch.norm() == 0.0) continue;
    dist.bob_branches[k] = StateVector(branch / branch.norm());
  }
  return dist;
}

MeasurementOutcome sample_outcome(const OutcomeDistribution& dist, Rng& rng) {
  const auto k = rng.categorical(dist.probabilities.data(), dist.probabilities.size());
  MeasurementOutcome out;
  out.index = static_cast<int>(k);
  out.conclusive = k >= 1;
  out.probability = dist.probabilities[k];
  if (out.conclusive) {
    const auto& branch = dist.bob_branches[k - 1];
    if (!branch) throw ConsistencyError("sampled a conclusive outcome with no receiver branch");
    out.bob_state = *branch;
  }
  return out;
}

MeasurementOutcome measure(const StateVector& system, const PovmSet& povm, const DiscriminationSet& dset,
                           Rng& rng) {
  return sample_outcome(outcome_distribution(system, povm, dset), rng);
}

MeasurementOutcome measure(const StateVector& system, const PovmSet& povm, const DiscriminationSet& dset,
                           std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return measure(system, povm, dset, rng);
}

InconclusiveDecomposition decompose_inconclusive(const PovmSet& povm) {
  const auto eig = herm_eig(povm[0]);
  const double cutoff = kRankRelTol * std::max(1.0, eig.values.front());
  InconclusiveDecomposition out;
  CMatrix rebuilt = CMatrix::Zero(static_cast<Eigen::Index>(povm.dim()), static_cast<Eigen::Index>(povm.dim()));
  for (std::size_t j = 0; j < eig.values.size(); ++j) {
    if (eig.values[j] <= cutoff) continue;
    CVector v = eig.vectors.matrix().col(static_cast<Eigen::Index>(j));
    rebuilt += eig.values[j] * v * v.adjoint();
    out.weights.push_back(eig.values[j]);
    out.vectors.emplace_back(std::move(v));
  }
  out.reconstruction_residual = max_abs(povm[0].matrix() - rebuilt);
  return out;
}

}  // namespace ghzt
