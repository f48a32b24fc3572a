#include "ghzt/states.hpp"

#include "ghzt/errors.hpp"
#include "ghzt/gates.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

namespace ghzt {

namespace {

void check_bit(Bit b, std::string_view name) {
  if (b > 1) throw InvalidArgument(fmt::format("{} must be 0 or 1, got {}", name, static_cast<int>(b)));
}

void check_n(int n) {
  if (n < 1) throw InvalidArgument(fmt::format("n must be >= 1, got {}", n));
  // 2n+1 qubits must fit under the dense ceiling.
  if (2 * n + 1 > kDefaultMaxQubits) {
    throw SizeLimitError(fmt::format("n = {} needs {} qubits, ceiling is {}", n, 2 * n + 1, kDefaultMaxQubits));
  }
}

std::uint64_t index_of(const BitString& bits) {
  std::uint64_t idx = 0;
  for (Bit b : bits) idx = (idx << 1) | b;
  return idx;
}

CMatrix letter_matrix(PauliLetter l) {
  CMatrix m(2, 2);
  if (l == PauliLetter::X) {
    m << 0, 1, 1, 0;
  } else {
    m << 1, 0, 0, -1;
  }
  return m;
}

PauliString::Word word_of(std::initializer_list<std::pair<Bit, PauliLetter>> powers) {
  PauliString::Word w;
  for (auto [exp, letter] : powers) {
    if (exp) w.push_back(letter);
  }
  return w;
}

}  // namespace

BitString parse_bits(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw InvalidArgument(fmt::format("bit string '{}' has non-binary characters", text));
    out.push_back(static_cast<Bit>(c - '0'));
  }
  return out;
}

std::string format_bits(const BitString& bits) {
  std::string s;
  s.reserve(bits.size());
  for (Bit b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

// --- LogicalInput / ChannelSpec ----------------------------------------------

LogicalInput::LogicalInput(Amplitude alpha, Amplitude beta, Bit s, BitString t)
    : alpha_(alpha), beta_(beta), s_(s), t_(std::move(t)) {
  check_n(static_cast<int>(t_.size()));
  check_bit(s_, "s");
  for (Bit b : t_) check_bit(b, "t_i");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(beta.real()) ||
      !std::isfinite(beta.imag())) {
    throw InvalidArgument("alpha and beta must be finite");
  }
  const double norm = std::norm(alpha_) + std::norm(beta_);
  if (std::abs(norm - 1.0) > kNormTol) {
    throw InvalidArgument(fmt::format("|alpha|^2 + |beta|^2 = {:.15g}, expected 1", norm));
  }
}

LogicalInput LogicalInput::zero_frame(Amplitude alpha, Amplitude beta, int n) {
  check_n(n);
  return LogicalInput(alpha, beta, 0, BitString(static_cast<std::size_t>(n), 0));
}

ChannelSpec::ChannelSpec(double a, double b, int n) : a_(a), b_(b), n_(n) {
  check_n(n);
  if (!(a >= 0.0) || !(b >= 0.0)) throw InvalidArgument("channel amplitudes a, b must be real and >= 0");
  const double norm = a * a + b * b;
  if (std::abs(norm - 1.0) > kNormTol) {
    throw InvalidArgument(fmt::format("a^2 + b^2 = {:.15g}, expected 1", norm));
  }
  if (a < b - kNormTol) throw InvalidArgument(fmt::format("channel requires a >= b, got a={} b={}", a, b));
}

ChannelSpec ChannelSpec::from_b(double b, int n) {
  if (!(b >= 0.0) || b * b > 0.5 + kNormTol) {
    throw InvalidArgument(fmt::format("b = {} outside [0, 1/sqrt(2)]", b));
  }
  return ChannelSpec(std::sqrt(std::max(0.0, 1.0 - b * b)), b, n);
}

ChannelSpec ChannelSpec::maximal(int n) {
  const double r = std::sqrt(0.5);
  return ChannelSpec(r, r, n);
}

// --- PauliString -------------------------------------------------------------

PauliString::PauliString(std::vector<Word> words) : words_(std::move(words)) {
  if (words_.empty()) throw InvalidArgument("Pauli string needs at least one qubit");
}

PauliString PauliString::identity(int num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("Pauli string needs at least one qubit");
  return PauliString(std::vector<Word>(static_cast<std::size_t>(num_qubits)));
}

PauliString PauliString::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Word> words;
  std::string tok;
  while (in >> tok) {
    Word w;
    if (tok != "I") {
      for (char c : tok) {
        if (c == 'X') {
          w.push_back(PauliLetter::X);
        } else if (c == 'Z') {
          w.push_back(PauliLetter::Z);
        } else {
          throw InvalidArgument(fmt::format("bad Pauli word '{}'", tok));
        }
      }
    }
    words.push_back(std::move(w));
  }
  return PauliString(std::move(words));
}

std::string PauliString::to_string() const {
  std::string out;
  for (std::size_t q = 0; q < words_.size(); ++q) {
    if (q) out.push_back(' ');
    if (words_[q].empty()) out.push_back('I');
    for (PauliLetter l : words_[q]) out.push_back(static_cast<char>(l));
  }
  return out;
}

Operator PauliString::materialize() const {
  Operator acc = Operator::identity(1);
  for (const Word& w : words_) {
    CMatrix m = CMatrix::Identity(2, 2);
    for (PauliLetter l : w) m = m * letter_matrix(l);
    acc = kron(acc, Operator(std::move(m), OperatorKind::unitary));
  }
  return acc;
}

void PauliString::apply_inplace(CVector& amps, int register_qubits, int first_qubit) const {
  if (first_qubit < 0 || first_qubit + num_qubits() > register_qubits) {
    throw DimensionMismatch(fmt::format("{}-qubit Pauli string at offset {} does not fit {} qubits",
                                        num_qubits(), first_qubit, register_qubits));
  }
  for (int q = 0; q < num_qubits(); ++q) {
    const Word& w = words_[static_cast<std::size_t>(q)];
    // Rightmost letter of the matrix product acts first.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (*it == PauliLetter::X) {
        gates::apply_x(amps, register_qubits, first_qubit + q);
      } else {
        gates::apply_z(amps, register_qubits, first_qubit + q);
      }
    }
  }
}

StateVector PauliString::apply(const StateVector& v, int first_qubit) const {
  CVector amps = v.amps();
  apply_inplace(amps, v.num_qubits(), first_qubit);
  return StateVector(std::move(amps));
}

bool equal_up_to_phase(const PauliString& a, const PauliString& b, double tol) {
  if (a.num_qubits() != b.num_qubits()) return false;
  return std::abs(operator_overlap(a.materialize(), b.materialize()) - 1.0) <= tol;
}

// --- state preparation -------------------------------------------------------

StateVector prepare_chi0(Amplitude alpha, Amplitude beta, int n) {
  return prepare_chi_st(LogicalInput::zero_frame(alpha, beta, n));
}

StateVector prepare_chi_st(const LogicalInput& input) {
  const int n = input.n();
  const auto dim = Eigen::Index{1} << n;
  const auto idx = static_cast<Eigen::Index>(index_of(input.t()));
  CVector v = CVector::Zero(dim);
  v(idx) = input.alpha();
  v((dim - 1) ^ idx) = (input.s() ? -1.0 : 1.0) * input.beta();
  return StateVector(std::move(v));
}

PauliString build_Ust(const LogicalInput& input) {
  const int n = input.n();
  std::vector<PauliString::Word> words;
  words.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) words.push_back(word_of({{input.t()[i], PauliLetter::X}}));
  words.push_back(word_of({{input.t().back(), PauliLetter::X}, {input.s(), PauliLetter::Z}}));
  return PauliString(std::move(words));
}

StateVector prepare_ghz(const ChannelSpec& channel) {
  const auto dim = Eigen::Index{1} << channel.num_qubits();
  CVector v = CVector::Zero(dim);
  v(0) = channel.a();
  v(dim - 1) = channel.b();
  return StateVector(std::move(v));
}

StateVector assemble_system(const StateVector& chi, const StateVector& ghz) {
  if (chi.num_qubits() < 1 || ghz.num_qubits() != chi.num_qubits() + 1) {
    throw DimensionMismatch(fmt::format("system needs an n-qubit input and an (n+1)-qubit channel, got {} and {}",
                                        chi.num_qubits(), ghz.num_qubits()));
  }
  return kron(chi, ghz);
}

PauliString build_T(Bit m1, Bit m2, int n) {
  check_n(n);
  check_bit(m1, "m1");
  check_bit(m2, "m2");
  std::vector<PauliString::Word> words(static_cast<std::size_t>(n - 1), word_of({{m1, PauliLetter::X}}));
  words.push_back(word_of({{m1, PauliLetter::X}, {m2, PauliLetter::Z}}));
  return PauliString(std::move(words));
}

PauliString build_Tprime(const LogicalInput& input, Bit m1, Bit m2) {
  check_bit(m1, "m1");
  check_bit(m2, "m2");
  const int n = input.n();
  std::vector<PauliString::Word> words;
  words.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) {
    words.push_back(word_of({{static_cast<Bit>(input.t()[i] ^ m1), PauliLetter::X}}));
  }
  words.push_back(word_of({{input.t().back(), PauliLetter::X},
                           {input.s(), PauliLetter::Z},
                           {m1, PauliLetter::X},
                           {m2, PauliLetter::Z}}));
  return PauliString(std::move(words));
}

}  // namespace ghzt
