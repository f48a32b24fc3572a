#include "ghzt/tensor.hpp"

#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace ghzt {

namespace {

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double hermitian_defect(const CMatrix& m) {
  return max_abs(m - m.adjoint()) / std::max(1.0, max_abs(m));
}

void check_dim_product(std::size_t a, std::size_t b, int max_qubits) {
  const int qa = qubits_for_dim(a);
  const int qb = qubits_for_dim(b);
  // Non power-of-two factors are allowed for operators; bound the raw size.
  const double log_dim = std::log2(static_cast<double>(a)) + std::log2(static_cast<double>(b));
  if ((qa >= 0 && qb >= 0 && qa + qb > max_qubits) || log_dim > max_qubits + 1e-9) {
    throw SizeLimitError(fmt::format("kron result of dimension {}x{} exceeds the {}-qubit ceiling",
                                     a, b, max_qubits));
  }
}

}  // namespace

int qubits_for_dim(std::size_t dim) noexcept {
  if (dim == 0 || !std::has_single_bit(dim)) return -1;
  return std::countr_zero(dim);
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

// --- StateVector -----------------------------------------------------------

StateVector::StateVector() : amps_(CVector::Ones(1)), num_qubits_(0) {}

StateVector::StateVector(CVector amps) : amps_(std::move(amps)) {
  num_qubits_ = qubits_for_dim(static_cast<std::size_t>(amps_.size()));
  if (num_qubits_ < 0) {
    throw InvalidArgument(fmt::format("state dimension {} is not a power of two", amps_.size()));
  }
  if (!all_finite(amps_)) throw InvalidArgument("state vector has non-finite amplitudes");
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits < 0 || num_qubits > kDefaultMaxQubits) {
    throw SizeLimitError(fmt::format("{} qubits is outside [0, {}]", num_qubits, kDefaultMaxQubits));
  }
  const auto dim = std::uint64_t{1} << num_qubits;
  if (index >= dim) throw InvalidArgument(fmt::format("basis index {} >= dimension {}", index, dim));
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return StateVector(amps_ / n);
}

// --- Operator --------------------------------------------------------------

Operator::Operator(CMatrix m, OperatorKind kind) : m_(std::move(m)), kind_(kind) {
  if (m_.rows() == 0 || m_.cols() == 0) throw InvalidArgument("operator must be non-empty");
  if (!all_finite(m_)) throw InvalidArgument("operator has non-finite entries");
  switch (kind_) {
    case OperatorKind::general:
      break;
    case OperatorKind::hermitian:
      if (m_.rows() != m_.cols() || hermitian_defect(m_) > kHermitianTol) {
        throw ContractViolation("matrix flagged Hermitian is not Hermitian");
      }
      m_ = (0.5 * (m_ + m_.adjoint())).eval();
      break;
    case OperatorKind::unitary:
      if (m_.rows() != m_.cols()) throw ContractViolation("matrix flagged unitary is not square");
      if (max_abs(m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols())) > kUnitaryTol) {
        throw ContractViolation("matrix flagged unitary is not unitary");
      }
      break;
  }
}

Operator Operator::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return Operator(CMatrix::Identity(d, d), OperatorKind::unitary);
}

bool Operator::is_hermitian(double tol) const {
  return m_.rows() == m_.cols() && hermitian_defect(m_) <= tol;
}

bool Operator::is_unitary(double tol) const {
  return m_.rows() == m_.cols() &&
         max_abs(m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols())) <= tol;
}

Operator Operator::adjoint() const {
  return Operator(m_.adjoint(), kind_, Trusted{});
}

StateVector Operator::apply(const StateVector& v) const {
  if (cols() != v.dim()) {
    throw DimensionMismatch(fmt::format("operator with {} columns applied to dimension {}", cols(), v.dim()));
  }
  return StateVector(m_ * v.amps());
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch(fmt::format("cannot multiply {}x{} by {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
  }
  const bool unitary = a.kind() == OperatorKind::unitary && b.kind() == OperatorKind::unitary;
  return Operator(a.matrix() * b.matrix(), unitary ? OperatorKind::unitary : OperatorKind::general,
                  Operator::Trusted{});
}

// --- products --------------------------------------------------------------

Operator kron(const Operator& a, const Operator& b, int max_qubits) {
  check_dim_product(a.rows(), b.rows(), max_qubits);
  check_dim_product(a.cols(), b.cols(), max_qubits);
  const auto ra = a.matrix().rows(), ca = a.matrix().cols();
  const auto rb = b.matrix().rows(), cb = b.matrix().cols();
  CMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a.matrix()(i, j) * b.matrix();
    }
  }
  // Kronecker products of Hermitian (unitary) factors are Hermitian (unitary).
  OperatorKind kind = OperatorKind::general;
  if (a.kind() == b.kind()) kind = a.kind();
  return Operator(std::move(out), kind, Operator::Trusted{});
}

StateVector kron(const StateVector& u, const StateVector& v, int max_qubits) {
  if (u.num_qubits() + v.num_qubits() > max_qubits) {
    throw SizeLimitError(fmt::format("{}+{} qubits exceeds the {}-qubit ceiling", u.num_qubits(),
                                     v.num_qubits(), max_qubits));
  }
  const auto du = static_cast<Eigen::Index>(u.dim());
  const auto dv = static_cast<Eigen::Index>(v.dim());
  CVector out(du * dv);
  for (Eigen::Index i = 0; i < du; ++i) out.segment(i * dv, dv) = u.amps()(i) * v.amps();
  return StateVector(std::move(out));
}

// --- spectral ----------------------------------------------------------------

HermitianEigen herm_eig(const Operator& a) {
  if (a.kind() != OperatorKind::hermitian && !a.is_hermitian()) {
    throw ContractViolation("herm_eig requires a Hermitian operator");
  }
  const CMatrix sym = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ConsistencyError("Hermitian eigensolver did not converge");

  // Eigen returns ascending order; reverse to descending.
  const auto n = sym.rows();
  HermitianEigen out{std::vector<double>(static_cast<std::size_t>(n)), Operator::identity(static_cast<std::size_t>(n))};
  CMatrix vecs(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    vecs.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  out.vectors = Operator(std::move(vecs), OperatorKind::unitary);
  return out;
}

Operator pinv_psd(const Operator& a) {
  const auto eig = herm_eig(a);
  const double lmax = eig.values.front();
  const double lmin = eig.values.back();
  if (lmin < -kPsdTol) {
    throw NotPsdError(fmt::format("pinv_psd: eigenvalue {:.3e} below -{:.0e}", lmin, kPsdTol));
  }
  const auto n = static_cast<Eigen::Index>(eig.values.size());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  const double cutoff = kRankRelTol * std::max(lmax, 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double l = eig.values[static_cast<std::size_t>(k)];
    if (l > cutoff && l > 0.0) inv(k) = 1.0 / l;
  }
  const CMatrix& v = eig.vectors.matrix();
  CMatrix pinv = v * inv.asDiagonal() * v.adjoint();
  return Operator(0.5 * (pinv + pinv.adjoint()), OperatorKind::hermitian, Operator::Trusted{});
}

std::size_t rank_psd(const Operator& a) {
  const auto eig = herm_eig(a);
  const double cutoff = kRankRelTol * std::max(1.0, eig.values.front());
  return static_cast<std::size_t>(
      std::count_if(eig.values.begin(), eig.values.end(), [&](double l) { return l > cutoff; }));
}

Amplitude inner(const StateVector& u, const StateVector& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch(fmt::format("inner product of dimensions {} and {}", u.dim(), v.dim()));
  }
  return u.amps().dot(v.amps());  // Eigen's dot conjugates the left operand
}

double squared_overlap(const StateVector& u, const StateVector& v) {
  return std::norm(inner(u, v));
}

Operator outer(const StateVector& u, const StateVector& v) {
  return Operator(u.amps() * v.amps().adjoint());
}

double operator_overlap(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("operator_overlap requires equal shapes");
  }
  const Amplitude tr = (a.matrix().adjoint() * b.matrix()).trace();
  return std::abs(tr) / static_cast<double>(a.rows());
}

}  // namespace ghzt
