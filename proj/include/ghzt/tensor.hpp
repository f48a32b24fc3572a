#pragma once

// Dense complex linear algebra used by every other module.
//
// Qubit convention: in an m-qubit register, qubit 0 is the most significant
// bit of the basis index, i.e. the leftmost symbol of the ket |q0 q1 ... >.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ghzt {

using Amplitude = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Ceiling on the total number of qubits any dense object may span.
inline constexpr int kDefaultMaxQubits = 24;

/// Returns log2(dim) when dim is a power of two, -1 otherwise.
int qubits_for_dim(std::size_t dim) noexcept;

/// Complex amplitude vector over m qubits, dim = 2^m.
///
/// Not required to be normalized: the reciprocal states of the
/// discrimination module are unnormalized vectors of the same shape.
/// Entries are finite by construction.
class StateVector {
 public:
  /// Zero-qubit register holding the scalar 1.
  StateVector();
  explicit StateVector(CVector amps);

  static StateVector basis(int num_qubits, std::uint64_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  int num_qubits() const noexcept { return num_qubits_; }
  const CVector& amps() const noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amps_.norm(); }
  double norm_squared() const { return amps_.squaredNorm(); }

  /// Throws InvalidArgument for the zero vector.
  StateVector normalized() const;

 private:
  CVector amps_;
  int num_qubits_ = 0;
};

enum class OperatorKind { general, hermitian, unitary };

/// Dense complex matrix, optionally flagged Hermitian or unitary.
///
/// Flags are checked at construction: Hermitian means |A - A^dag|_max within
/// 1e-12 (relative to max(1, |A|_max)), unitary means |U^dag U - I|_max within
/// 1e-10. A Hermitian-flagged matrix is stored exactly symmetrized.
class Operator {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kUnitaryTol = 1e-10;

  explicit Operator(CMatrix m, OperatorKind kind = OperatorKind::general);

  static Operator identity(std::size_t dim);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  OperatorKind kind() const noexcept { return kind_; }
  const CMatrix& matrix() const noexcept { return m_; }
  Amplitude operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_unitary(double tol = kUnitaryTol) const;

  Operator adjoint() const;
  StateVector apply(const StateVector& v) const;

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator kron(const Operator& a, const Operator& b, int max_qubits);
  friend Operator pinv_psd(const Operator& a);

 private:
  // Skips flag validation for results that hold the flag by construction.
  struct Trusted {};
  Operator(CMatrix m, OperatorKind kind, Trusted) : m_(std::move(m)), kind_(kind) {}

  CMatrix m_;
  OperatorKind kind_;
};

/// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l].
Operator kron(const Operator& a, const Operator& b, int max_qubits = kDefaultMaxQubits);
StateVector kron(const StateVector& u, const StateVector& v, int max_qubits = kDefaultMaxQubits);

struct HermitianEigen {
  std::vector<double> values;  // descending
  Operator vectors;            // column k pairs with values[k]
};

/// Eigendecomposition A = V diag(values) V^dag of a Hermitian matrix.
HermitianEigen herm_eig(const Operator& a);

/// Relative rank cutoff used by pinv_psd and rank_psd.
inline constexpr double kRankRelTol = 1e-10;
/// Most negative eigenvalue still accepted as PSD.
inline constexpr double kPsdTol = 1e-10;

/// Moore-Penrose pseudoinverse of a Hermitian PSD matrix. Eigenvalues at or
/// below kRankRelTol * lambda_max are treated as zero.
Operator pinv_psd(const Operator& a);

/// Number of eigenvalues above kRankRelTol * max(1, lambda_max).
std::size_t rank_psd(const Operator& a);

/// <u|v>, conjugate-linear in u.
Amplitude inner(const StateVector& u, const StateVector& v);

/// |<u|v>|^2.
double squared_overlap(const StateVector& u, const StateVector& v);

/// |u><v|.
Operator outer(const StateVector& u, const StateVector& v);

/// |Tr(A^dag B)| / dim: 1 for equal unitaries up to a global phase.
double operator_overlap(const Operator& a, const Operator& b);

/// Largest elementwise magnitude |A_ij|.
double max_abs(const CMatrix& m);

}  // namespace ghzt
