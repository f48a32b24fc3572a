#include "ghzt/errors.hpp"
#include "ghzt/rng.hpp"
#include "ghzt/states.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace ghzt;
using oracle::C;
using oracle::Mat;
using oracle::Vec;

namespace {

double vec_err(const StateVector& s, const Vec& v) { return (s.amps() - v).cwiseAbs().maxCoeff(); }

LogicalInput three_qubit_example(double alpha, double beta) { return LogicalInput(alpha, beta, 1, {1, 0, 1}); }

BitString random_bits(std::mt19937_64& g, int n) {
  BitString t;
  for (int i = 0; i < n; ++i) t.push_back(static_cast<Bit>(g() & 1));
  return t;
}

}  // namespace

// --- rng ---------------------------------------------------------------------

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(Rng(1).next_u64(), Rng(2).next_u64());
  EXPECT_NE(derive_seed(5, 0), derive_seed(5, 1));
  EXPECT_NE(derive_seed(5, 0), derive_seed(6, 0));
}

TEST(Rng, UniformBelowAndCategoricalRanges) {
  Rng r(9);
  std::array<int, 3> hist{};
  const double w[3] = {1.0, 0.0, 3.0};
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.below(7), 7u);
    ++hist[r.categorical(w, 3)];
  }
  EXPECT_EQ(hist[1], 0);
  EXPECT_TRUE(oracle::within_sigma(hist[2] / 20000.0, 0.75, 20000, 4));
  const double zero[2] = {0.0, 0.0};
  EXPECT_THROW(r.categorical(zero, 2), InvalidArgument);
  const double neg[2] = {1.0, -0.5};
  EXPECT_THROW(r.categorical(neg, 2), InvalidArgument);
}

TEST(Rng, ChunkedRunsAreIndependentOfWorkerCount) {
  auto fn = [](Rng& rng, std::uint64_t count) {
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < count; ++i) acc ^= rng.next_u64() * (i + 1);
    return acc;
  };
  const std::uint64_t trials = 5 * kChunkTrials + 123;
  const auto one = run_chunks<std::uint64_t>(trials, 77, 1, fn);
  const auto four = run_chunks<std::uint64_t>(trials, 77, 4, fn);
  EXPECT_EQ(one.size(), 6u);
  EXPECT_EQ(one, four);
}

// --- parsing and value types -------------------------------------------------

TEST(Bits, ParseAndFormat) {
  EXPECT_EQ(parse_bits("101"), (BitString{1, 0, 1}));
  EXPECT_EQ(format_bits({0, 1, 1}), "011");
  EXPECT_THROW(parse_bits("10a"), InvalidArgument);
}

TEST(LogicalInput, ValidatesItsFields) {
  EXPECT_NO_THROW(three_qubit_example(0.6, 0.8));
  EXPECT_THROW(LogicalInput(0.6, 0.7, 0, {0}), InvalidArgument);
  EXPECT_THROW(LogicalInput(0.6, 0.8, 2, {0}), InvalidArgument);
  EXPECT_THROW(LogicalInput(0.6, 0.8, 0, {0, 2}), InvalidArgument);
  EXPECT_THROW(LogicalInput(0.6, 0.8, 0, {}), InvalidArgument);
  EXPECT_THROW(LogicalInput::zero_frame(0.6, 0.8, 12), SizeLimitError);
  EXPECT_NO_THROW(LogicalInput::zero_frame(C(0, 0.6), C(0.8, 0), 11));
}

TEST(ChannelSpec, ValidatesItsFields) {
  EXPECT_NO_THROW(ChannelSpec(0.8, 0.6, 2));
  EXPECT_NO_THROW(ChannelSpec(1.0, 0.0, 2));
  EXPECT_THROW(ChannelSpec(0.6, 0.8, 2), InvalidArgument);
  EXPECT_THROW(ChannelSpec(0.8, 0.5, 2), InvalidArgument);
  EXPECT_THROW(ChannelSpec(0.8, -0.6, 2), InvalidArgument);
  EXPECT_THROW(ChannelSpec(0.8, 0.6, 0), InvalidArgument);
  EXPECT_NEAR(ChannelSpec::from_b(0.6, 1).a(), 0.8, 1e-15);
  EXPECT_THROW(ChannelSpec::from_b(0.8, 1), InvalidArgument);
}

// --- state preparation -------------------------------------------------------

TEST(PrepareChi0, Examples) {
  EXPECT_LT(vec_err(prepare_chi0(1, 0, 3), oracle::ket("000")), 1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT(vec_err(prepare_chi0(r, r, 2), r * (oracle::ket("00") + oracle::ket("11"))), 1e-15);
  EXPECT_LT(vec_err(prepare_chi0(0.6, 0.8, 3), 0.6 * oracle::ket("000") + 0.8 * oracle::ket("111")), 1e-15);
}

TEST(PrepareChiSt, Examples) {
  EXPECT_LT(vec_err(prepare_chi_st(LogicalInput::zero_frame(0.6, 0.8, 3)), 0.6 * oracle::ket("000") +
                                                                              0.8 * oracle::ket("111")),
            1e-15);
  EXPECT_LT(vec_err(prepare_chi_st(three_qubit_example(0.6, 0.8)), 0.6 * oracle::ket("101") - 0.8 * oracle::ket("010")),
            1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT(vec_err(prepare_chi_st(LogicalInput(r, r, 1, {0, 1})), r * (oracle::ket("01") - oracle::ket("10"))),
            1e-15);
}

TEST(BuildUst, Examples) {
  EXPECT_EQ(build_Ust(three_qubit_example(0.6, 0.8)).to_string(), "X I XZ");
  EXPECT_EQ(build_Ust(LogicalInput::zero_frame(0.6, 0.8, 3)), PauliString::identity(3));
  EXPECT_EQ(build_Ust(LogicalInput(0.6, 0.8, 1, {0, 0, 0})).to_string(), "I I Z");
}

TEST(PrepareGhz, Examples) {
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT(vec_err(prepare_ghz(ChannelSpec::maximal(1)), r * (oracle::ket("00") + oracle::ket("11"))), 1e-15);
  EXPECT_LT(vec_err(prepare_ghz(ChannelSpec(1, 0, 2)), oracle::ket("000")), 1e-15);
  EXPECT_LT(vec_err(prepare_ghz(ChannelSpec(0.8, 0.6, 2)), 0.8 * oracle::ket("000") + 0.6 * oracle::ket("111")),
            1e-15);
}

TEST(AssembleSystem, ProductInputAndNorm) {
  const StateVector sys = assemble_system(prepare_chi0(1, 0, 2), prepare_ghz(ChannelSpec(1, 0, 2)));
  EXPECT_EQ(sys.num_qubits(), 5);
  EXPECT_LT(vec_err(sys, oracle::ket("00000")), 1e-15);
  const StateVector s2 = assemble_system(prepare_chi0(0.6, 0.8, 2), prepare_ghz(ChannelSpec(0.8, 0.6, 2)));
  EXPECT_NEAR(s2.norm(), 1.0, 1e-14);
  EXPECT_THROW(assemble_system(prepare_chi0(1, 0, 2), prepare_ghz(ChannelSpec(1, 0, 3))), DimensionMismatch);
}

// The expansion chi_0 (x) GHZ = 1/2 sum_i phi_i (x) B_i with the four receiver
// terms B_1 = alpha|0^n> + beta|1^n>, B_2 = alpha|0^n> - beta|1^n>,
// B_3 = beta|0^n> + alpha|1^n>, B_4 = beta|0^n> - alpha|1^n>.
TEST(AssembleSystem, FourTermExpansionHoldsForRandomParameters) {
  std::mt19937_64 g(101);
  std::uniform_real_distribution<double> ub(0.05, 1 / std::sqrt(2.0));
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const auto [alpha, beta] = oracle::random_qubit(g);
    const double b = ub(g);
    const double a = std::sqrt(1 - b * b);
    const std::string z = oracle::repeat('0', n), o = oracle::repeat('1', n);
    const Vec phi[4] = {a * oracle::ket(z + "0") + b * oracle::ket(o + "1"),
                        a * oracle::ket(z + "0") - b * oracle::ket(o + "1"),
                        a * oracle::ket(o + "0") + b * oracle::ket(z + "1"),
                        a * oracle::ket(o + "0") - b * oracle::ket(z + "1")};
    const Vec bob[4] = {alpha * oracle::ket(z) + beta * oracle::ket(o), alpha * oracle::ket(z) - beta * oracle::ket(o),
                        beta * oracle::ket(z) + alpha * oracle::ket(o), beta * oracle::ket(z) - alpha * oracle::ket(o)};
    Vec expected = Vec::Zero(Eigen::Index{1} << (2 * n + 1));
    for (int i = 0; i < 4; ++i) expected += 0.5 * oracle::kron(phi[i], bob[i]);
    const StateVector sys = assemble_system(prepare_chi0(alpha, beta, n), prepare_ghz(ChannelSpec(a, b, n)));
    EXPECT_LT(vec_err(sys, expected), 1e-12) << "n=" << n;
  }
}

// --- Pauli strings -----------------------------------------------------------

TEST(PauliString, ParsePrintAndMaterialize) {
  const PauliString p = PauliString::parse("X I XZ");
  EXPECT_EQ(p.num_qubits(), 3);
  EXPECT_EQ(p.to_string(), "X I XZ");
  EXPECT_LT(max_abs(p.materialize().matrix() - oracle::pauli_string("X I XZ")), 1e-15);
  EXPECT_THROW(PauliString::parse("X Y"), InvalidArgument);
  EXPECT_THROW(PauliString::parse(""), InvalidArgument);
}

TEST(PauliString, ApplyMatchesMaterializedMatrix) {
  std::mt19937_64 g(7);
  for (const char* text : {"X", "Z", "XZ", "ZX", "X I XZ", "XZXZ Z I X", "I I I"}) {
    const PauliString p = PauliString::parse(text);
    const int m = p.num_qubits();
    const StateVector v(oracle::random_matrix(g, Eigen::Index{1} << m).col(0));
    EXPECT_LT(vec_err(p.apply(v), oracle::pauli_string(text) * v.amps()), 1e-14) << text;
  }
}

TEST(PauliString, MaterializesUnitaryAndSquaresToPlusMinusIdentity) {
  std::mt19937_64 g(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 4;
    std::vector<PauliString::Word> words;
    for (int q = 0; q < m; ++q) {
      PauliString::Word w;
      const int len = static_cast<int>(g() % 5);
      for (int k = 0; k < len; ++k) w.push_back(g() & 1 ? PauliLetter::X : PauliLetter::Z);
      words.push_back(w);
    }
    const Operator u = PauliString(words).materialize();
    EXPECT_TRUE(u.is_unitary());
    const CMatrix sq = u.matrix() * u.matrix();
    const double sign = sq(0, 0).real();
    EXPECT_NEAR(std::abs(sign), 1.0, 1e-10);
    EXPECT_LT(max_abs(sq - sign * CMatrix::Identity(sq.rows(), sq.cols())), 1e-10);
  }
}

TEST(PauliString, EqualUpToPhase) {
  EXPECT_TRUE(equal_up_to_phase(PauliString::parse("XZ"), PauliString::parse("ZX")));
  EXPECT_TRUE(equal_up_to_phase(PauliString::parse("X I XZZ"), PauliString::parse("X I X")));
  EXPECT_FALSE(equal_up_to_phase(PauliString::parse("X"), PauliString::parse("Z")));
  EXPECT_FALSE(equal_up_to_phase(PauliString::parse("X"), PauliString::parse("X I")));
}

TEST(UstRelation, ChiStIsUstTimesChi0) {
  std::mt19937_64 g(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const auto [alpha, beta] = oracle::random_qubit(g);
    const LogicalInput in(alpha, beta, static_cast<Bit>(g() & 1), random_bits(g, n));
    const Vec via_u = oracle::pauli_string(build_Ust(in).to_string()) * prepare_chi0(alpha, beta, n).amps();
    EXPECT_LT(vec_err(prepare_chi_st(in), via_u), 1e-12);
  }
}

// --- receiver corrections ----------------------------------------------------

TEST(BuildT, TableRows) {
  EXPECT_EQ(build_T(0, 0, 4), PauliString::identity(4));
  EXPECT_EQ(build_T(0, 1, 4).to_string(), "I I I Z");
  EXPECT_EQ(build_T(1, 0, 4).to_string(), "X X X X");
  EXPECT_EQ(build_T(1, 1, 4).to_string(), "X X X XZ");
  EXPECT_EQ(build_T(1, 1, 1).to_string(), "XZ");
  EXPECT_THROW(build_T(2, 0, 3), InvalidArgument);
}

TEST(BuildTprime, ThreeQubitExampleRows) {
  const LogicalInput in = three_qubit_example(0.6, 0.8);
  EXPECT_EQ(build_Tprime(in, 0, 0).to_string(), "X I XZ");
  EXPECT_TRUE(equal_up_to_phase(build_Tprime(in, 0, 1), PauliString::parse("X I X")));
  EXPECT_EQ(build_Tprime(in, 1, 0).to_string(), "I X XZX");
  EXPECT_EQ(build_Tprime(in, 1, 1).to_string(), "I X XZXZ");
}

TEST(BuildTprime, ReducesToBuildTInTrivialFrame) {
  for (int n = 1; n <= 6; ++n) {
    const LogicalInput zero = LogicalInput::zero_frame(1, 0, n);
    for (Bit m1 : {0, 1}) {
      for (Bit m2 : {0, 1}) EXPECT_EQ(build_Tprime(zero, m1, m2), build_T(m1, m2, n)) << n << m1 << m2;
    }
  }
}
