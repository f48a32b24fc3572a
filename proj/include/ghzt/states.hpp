#pragma once

// Input states, the GHZ channel, and the Pauli-string operators that move
// between Pauli frames.
//
// Register layout of the combined system over 2n+1 qubits (0-based):
//   0 .. n-1     input (logical) qubits, held by the sender
//   n            sender's half of the GHZ channel
//   n+1 .. 2n    receiver's n channel qubits

#include "ghzt/tensor.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ghzt {

using Bit = std::uint8_t;
using BitString = std::vector<Bit>;

/// Tolerance on |alpha|^2 + |beta|^2 = 1 and a^2 + b^2 = 1.
inline constexpr double kNormTol = 1e-12;

/// "101" -> {1, 0, 1}. Throws InvalidArgument on any other character.
BitString parse_bits(std::string_view text);
std::string format_bits(const BitString& bits);

/// alpha |t_1..t_n> + (-1)^s beta |t_1'..t_n'>, with t_i' = 1 - t_i.
class LogicalInput {
 public:
  LogicalInput(Amplitude alpha, Amplitude beta, Bit s, BitString t);

  /// s = 0, t = 0...0.
  static LogicalInput zero_frame(Amplitude alpha, Amplitude beta, int n);

  Amplitude alpha() const noexcept { return alpha_; }
  Amplitude beta() const noexcept { return beta_; }
  Bit s() const noexcept { return s_; }
  const BitString& t() const noexcept { return t_; }
  int n() const noexcept { return static_cast<int>(t_.size()); }

  /// Same amplitudes, trivial frame.
  LogicalInput with_zero_frame() const { return zero_frame(alpha_, beta_, n()); }

 private:
  Amplitude alpha_;
  Amplitude beta_;
  Bit s_;
  BitString t_;
};

/// a |0>^(n+1) + b |1>^(n+1) with a >= b >= 0 real and a^2 + b^2 = 1.
class ChannelSpec {
 public:
  ChannelSpec(double a, double b, int n);

  /// a = sqrt(1 - b^2).
  static ChannelSpec from_b(double b, int n);
  static ChannelSpec maximal(int n);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  int n() const noexcept { return n_; }
  int num_qubits() const noexcept { return n_ + 1; }

 private:
  double a_;
  double b_;
  int n_;
};

enum class PauliLetter : char { X = 'X', Z = 'Z' };

/// Tensor product of per-qubit Pauli words. Each word is an ordered matrix
/// product of X and Z letters: {X, Z} means the 2x2 matrix X*Z, so Z acts on
/// the state first. An empty word is the identity.
class PauliString {
 public:
  using Word = std::vector<PauliLetter>;

  explicit PauliString(std::vector<Word> words);
  static PauliString identity(int num_qubits);
  /// Whitespace-separated words, "I" for identity: "X I XZ".
  static PauliString parse(std::string_view text);

  int num_qubits() const noexcept { return static_cast<int>(words_.size()); }
  const std::vector<Word>& words() const noexcept { return words_; }
  std::string to_string() const;

  Operator materialize() const;

  /// Applies the string to qubits [first_qubit, first_qubit + num_qubits()).
  StateVector apply(const StateVector& v, int first_qubit = 0) const;
  void apply_inplace(CVector& amps, int register_qubits, int first_qubit) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Word> words_;
};

/// Operator overlap |Tr(A^dag B)| / dim is 1: equal up to a global phase.
bool equal_up_to_phase(const PauliString& a, const PauliString& b, double tol = 1e-10);

StateVector prepare_chi0(Amplitude alpha, Amplitude beta, int n);
StateVector prepare_chi_st(const LogicalInput& input);

/// X^{t_i} on qubits 1..n-1 and X^{t_n} Z^{s} on qubit n; maps chi_0 to chi_st.
PauliString build_Ust(const LogicalInput& input);

StateVector prepare_ghz(const ChannelSpec& channel);

/// chi (x) ghz over 2n+1 qubits.
StateVector assemble_system(const StateVector& chi, const StateVector& ghz);

/// Receiver correction in the trivial frame: X^{m1} on qubits 1..n-1 and
/// X^{m1} Z^{m2} on qubit n.
PauliString build_T(Bit m1, Bit m2, int n);

/// Receiver correction for a general frame, U_st * T written letter by
/// letter: X^{t_i xor m1} on qubit i < n, X^{t_n} Z^{s} X^{m1} Z^{m2} on qubit n.
PauliString build_Tprime(const LogicalInput& input, Bit m1, Bit m2);

}  // namespace ghzt
