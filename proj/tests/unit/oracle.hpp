#pragma once

// Reference computations for the tests, written without the library's own
// kernels: dense matrices built entry by entry, brute-force enumeration.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char p) {
  Mat m(2, 2);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'H': m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

/// Entry-by-entry Kronecker product.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

/// "X I XZ": space-separated per-qubit words, each a left-to-right matrix product.
inline Mat pauli_string(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  Mat acc = Mat::Identity(1, 1);
  while (in >> word) {
    Mat m = Mat::Identity(2, 2);
    if (word != "I") {
      for (char c : word) m = m * pauli(c);
    }
    acc = kron(acc, m);
  }
  return acc;
}

/// |bits> as a column vector, leftmost symbol most significant.
inline Vec ket(const std::string& bits) {
  std::uint64_t idx = 0;
  for (char c : bits) idx = (idx << 1) | static_cast<std::uint64_t>(c == '1');
  Vec v = Vec::Zero(Eigen::Index{1} << bits.size());
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return v;
}

inline std::string repeat(char c, int n) { return std::string(static_cast<std::size_t>(n), c); }

/// Single-qubit gate on qubit q of an m-qubit register as a full matrix.
inline Mat embed(const Mat& g, int m, int q) {
  Mat acc = Mat::Identity(1, 1);
  for (int i = 0; i < m; ++i) acc = kron(acc, i == q ? g : Mat::Identity(2, 2));
  return acc;
}

/// CNOT as a permutation matrix over m qubits, qubit 0 most significant.
inline Mat cnot(int m, int control, int target) {
  const Eigen::Index dim = Eigen::Index{1} << m;
  Mat out = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const bool c = (i >> (m - 1 - control)) & 1;
    const Eigen::Index j = c ? (i ^ (Eigen::Index{1} << (m - 1 - target))) : i;
    out(j, i) = 1.0;
  }
  return out;
}

/// P(more than half of n rails flip, each with probability p), by enumerating all 2^n patterns.
inline double majority_failure(int n, double p) {
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int w = __builtin_popcountll(mask);
    if (2 * w > n) total += std::pow(p, w) * std::pow(1.0 - p, n - w);
  }
  return total;
}

/// Haar-random qubit amplitudes.
inline std::pair<C, C> random_qubit(std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  C x(nd(g), nd(g));
  C y(nd(g), nd(g));
  const double r = std::sqrt(std::norm(x) + std::norm(y));
  return {x / r, y / r};
}

inline Mat random_matrix(std::mt19937_64& g, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  Mat m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = C(nd(g), nd(g));
  return m;
}

inline Mat random_hermitian(std::mt19937_64& g, Eigen::Index dim) {
  const Mat m = random_matrix(g, dim);
  return (m + m.adjoint()) / 2.0;
}

/// B B^dag with B of the given rank.
inline Mat random_psd(std::mt19937_64& g, Eigen::Index dim, Eigen::Index rank) {
  std::normal_distribution<double> nd;
  Mat b(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) b(i, j) = C(nd(g), nd(g));
  return b * b.adjoint();
}

/// Q factor of a random complex matrix.
inline Mat random_unitary(std::mt19937_64& g, Eigen::Index dim) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(g, dim));
  return qr.householderQ() * Mat::Identity(dim, dim);
}

/// Binomial rate within k standard errors of q.
inline bool within_sigma(double observed_rate, double q, double trials, double k) {
  const double se = std::sqrt(q * (1.0 - q) / trials);
  if (se == 0.0) return observed_rate == q;
  return std::abs(observed_rate - q) <= k * se;
}

}  // namespace oracle
