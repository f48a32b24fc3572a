// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "ghzt/analysis.hpp"
#include "ghzt/cli.hpp"
#include "ghzt/discrimination.hpp"
#include "ghzt/network.hpp"
#include "ghzt/protocol.hpp"

#include "../unit/oracle.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ghzt;

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

LogicalInput random_input(std::mt19937_64& g, int n) {
  const auto [alpha, beta] = oracle::random_qubit(g);
  BitString t;
  for (int i = 0; i < n; ++i) t.push_back(static_cast<Bit>(g() & 1));
  return LogicalInput(alpha, beta, static_cast<Bit>(g() & 1), t);
}

std::string cli(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "ghzt");
  std::ostringstream out, err;
  code = cli::run_cli(args, out, err);
  return out.str();
}

Verdict correctness() {
  const auto t0 = Clock::now();
  std::mt19937_64 g(101);
  std::uniform_real_distribution<double> ub(0.05, kInvSqrt2);
  int conclusive = 0;
  double worst = 1.0;
  for (int draw = 0; draw < 500; ++draw) {
    const int n = 1 + draw % 6;
    double b = ub(g);
    if (draw % 50 == 0) b = kInvSqrt2;
    const TeleportResult r = run_proposed(random_input(g, n), ChannelSpec::from_b(b, n), NoiseModel{}, ProtocolConfig{}, g());
    if (!r.conclusive) continue;
    ++conclusive;
    worst = std::min(worst, r.fidelity);
  }
  const double secs = seconds_since(t0);
  return {worst >= 1.0 - 1e-10 && conclusive > 0 && secs < 30,
          fmt::format("{} conclusive runs, min fidelity {:.15f}, {:.1f} s", conclusive, worst, secs)};
}

Verdict success_law() {
  const auto t0 = Clock::now();
  const int trials = 100000;
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 20;
  for (double b : {0.2, 0.4, 0.6, kInvSqrt2}) {
    const ChannelSpec ch = ChannelSpec::from_b(b, 2);
    const LogicalInput in(0.6, 0.8, 1, {1, 0});
    const GhzTeleporter tp(in, ch, ProtocolConfig{2, 1});
    const StateVector chi = prepare_chi_st(in);
    Rng rng(seed++);
    int hits = 0;
    for (int i = 0; i < trials; ++i) hits += tp.teleport(chi, NoiseModel{}, rng).conclusive ? 1 : 0;
    const double q = success_probability(b);
    const double rate = hits / double(trials);
    const bool this_ok = b == kInvSqrt2 ? hits == trials : oracle::within_sigma(rate, q, trials, 4);
    ok = ok && this_ok;
    detail += fmt::format("b={:.4f} rate={:.5f} expect={:.5f}; ", b, rate, q);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60, detail + fmt::format("{:.1f} s", secs)};
}

Verdict povm_validity() {
  const auto t0 = Clock::now();
  std::mt19937_64 g(303);
  std::uniform_real_distribution<double> ub(0.01, kInvSqrt2);
  double bio = 0, comp = 0, min_eig = 1, p_gap = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    const int n = 1 + draw % 5;
    const ChannelSpec ch = ChannelSpec::from_b(ub(g), n);
    const LogicalInput frame = random_input(g, n);
    const DiscriminationSet d = make_discrimination_set(ch, frame);
    const PovmSet povm = build_povm(d.phi_tilde, ch);
    bio = std::max(bio, biorthogonality_residual(d.phi, d.phi_tilde));
    const Eigen::Index dim = static_cast<Eigen::Index>(povm.dim());
    oracle::Mat sum = oracle::Mat::Zero(dim, dim);
    for (const Operator& e : povm.elements()) {
      sum += e.matrix();
      Eigen::SelfAdjointEigenSolver<oracle::Mat> es(e.matrix());
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    comp = std::max(comp, (sum - oracle::Mat::Identity(dim, dim)).cwiseAbs().maxCoeff());
    oracle::Mat s = oracle::Mat::Zero(dim, dim);
    for (const StateVector& v : d.phi_tilde) s += v.amps() * v.amps().adjoint();
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(s);
    const double p_frame = 1.0 / es.eigenvalues().maxCoeff();
    p_gap = std::max(p_gap, std::abs(p_frame - 2 * ch.b() * ch.b()));
  }
  const double secs = seconds_since(t0);
  return {bio < 1e-10 && comp < 1e-10 && min_eig > -1e-10 && p_gap < 1e-10 && secs < 60,
          fmt::format("biorth {:.2e}, completeness {:.2e}, min eig {:.2e}, p gap {:.2e}, {:.1f} s", bio, comp, min_eig,
                      p_gap, secs)};
}

Verdict reciprocal_closed_form() {
  double worst = 0;
  std::mt19937_64 g(404);
  std::uniform_real_distribution<double> ub(0.05, kInvSqrt2);
  for (int n = 1; n <= 8; ++n) {
    for (double b : {0.6, 0.3, kInvSqrt2, ub(g)}) {
      const ChannelSpec ch = ChannelSpec::from_b(b, n);
      const StateQuad pinv = reciprocal_states(phi_states(ch));
      const StateQuad closed = closed_form_reciprocals(ch);
      for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, (pinv[k].amps() - closed[k].amps()).cwiseAbs().maxCoeff());
    }
  }
  return {worst < 1e-10, fmt::format("max elementwise gap {:.2e} over n = 1..8", worst)};
}

Verdict error_compare() {
  const auto t0 = Clock::now();
  int code = 0;
  const std::string text = cli({"--format", "json", "--seed", "3", "error-compare", "--n", "5", "--p", "0.01", "--pg",
                                "0.005", "--trials", "1000000", "--bitflip-trials", "100000000"},
                               code);
  if (code != 0) return {false, fmt::format("error-compare exited {}", code)};
  const auto row = nlohmann::json::parse(text)["rows"][0];
  const double pd = row["p_decode_analytic"], pl = row["p_l_analytic"];
  const double pd_mc = row["p_decode_mc"], pl_mc = row["p_l_mc"], ratio = row["ratio_mc"];
  const bool analytic = std::abs(pd - 4 * 0.005) <= 1e-12 && std::abs(pl - 9.8506e-6) < 5e-11;
  const bool mc = oracle::within_sigma(pd_mc, pd, 1e6, 4) && oracle::within_sigma(pl_mc, pl, 1e8, 4);
  const double secs = seconds_since(t0);
  return {analytic && mc && ratio > 100 && secs < 300,
          fmt::format("P_decode {:.4f} (MC {:.6f}), P_L {:.4e} (MC {:.4e}), measured ratio {:.0f}, {:.1f} s", pd, pd_mc,
                      pl, pl_mc, ratio, secs)};
}

Verdict efficiency_points() {
  const EfficiencyPoint e10 = efficiency(10);
  const EfficiencyPoint big = efficiency(1'000'000);
  const bool ok = e10.eta_q == 30.0 && e10.eta_c == 35.0 && std::abs(big.eta_q - 100.0 / 3) < 0.01 &&
                  std::abs(big.eta_c - 50.0) < 0.01;
  return {ok, fmt::format("n=10: ({}, {}); n=1e6: ({:.5f}, {:.5f})", e10.eta_q, e10.eta_c, big.eta_q, big.eta_c)};
}

Verdict golden_fixture() {
  const LogicalInput in(0.6, 0.8, 1, {1, 0, 1});
  const std::array<const char*, 4> table{"X I XZ", "X I XZZ", "I X XZX", "I X XZXZ"};
  double worst = 1.0;
  for (int k = 0; k < 4; ++k) {
    const oracle::Mat t = build_Tprime(in, static_cast<Bit>(k >> 1), static_cast<Bit>(k & 1)).materialize().matrix();
    const oracle::Mat ref = oracle::pauli_string(table[static_cast<std::size_t>(k)]);
    worst = std::min(worst, std::abs((ref.adjoint() * t).trace()) / static_cast<double>(ref.rows()));
  }
  return {std::abs(worst - 1.0) < 1e-10, fmt::format("min operator overlap {:.15f}", worst)};
}

Verdict hop_by_hop() {
  const auto t0 = Clock::now();
  const ChainConfig cfg{{"Alice", "Bob", "Charlie", "Dev"},
                        LogicalInput(0.6, 0.8, 1, {1, 0, 1}),
                        ChannelSpec(0.8, 0.6, 3),
                        0.5,
                        NoiseModel{},
                        808,
                        ProtocolConfig{},
                        EveStrategy::uniform};
  const EveStats s = run_eve_experiment(cfg, 100000, default_workers());
  const double secs = seconds_since(t0);
  const bool ok = s.completed_chains > 0 && s.min_final_fidelity >= 1.0 - 1e-9 &&
                  oracle::within_sigma(s.rate(), 0.125, 1e5, 4) && secs < 120;
  return {ok, fmt::format("{} completed chains, min fidelity {:.12f}, Eve rate {:.5f}, {:.1f} s", s.completed_chains,
                          s.min_final_fidelity, s.rate(), secs)};
}

Verdict determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"--seed", "9", "teleport", "--n", "3", "--s", "1", "--t", "101", "--a", "0.8", "--b", "0.6", "--alpha", "0.6",
       "--beta", "0.8", "--trials", "5000"},
      {"--seed", "9", "--format", "json", "teleport", "--n", "2", "--a", "0.9", "--b", "0.43588989435406733",
       "--p-bitflip", "0.05", "--trials", "2000"},
      {"povm-audit", "--n", "2", "--a", "0.8", "--b", "0.6"},
      {"--format", "json", "povm-audit", "--n", "1", "--a", "0.7071067811865476", "--b", "0.7071067811865476"},
      {"--seed", "9", "sweep", "--trials", "3000"},
      {"efficiency", "--n-max", "50"},
      {"--format", "json", "efficiency", "--n-max", "20"},
      {"--seed", "9", "error-compare", "--trials", "100000", "--bitflip-trials", "1000000"},
      {"--seed", "9", "chain", "--n", "2", "--eve-trials", "20000"},
      {"--seed", "9", "chain", "--p-ghz", "0.7", "--eve", "stationary-bias", "--eve-trials", "20000"}};
  int runs = 0;
  for (const auto& c : commands) {
    int code_a = 0, code_b = 0, code_c = 0;
    const std::string a = cli(c, code_a);
    const std::string b = cli(c, code_b);
    std::vector<std::string> threaded{"--workers", "3"};
    threaded.insert(threaded.end(), c.begin(), c.end());
    const std::string t = cli(threaded, code_c);
    if (code_a != 0 || code_b != 0 || code_c != 0) return {false, fmt::format("command {} exited nonzero", runs)};
    if (a != b || a != t) return {false, fmt::format("command {} differs between runs", runs)};
    ++runs;
  }
  return {true, fmt::format("{} commands byte-identical across reruns and worker counts", runs)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"correctness", correctness},          {"success-law", success_law},
      {"povm-validity", povm_validity},      {"reciprocal-closed-form", reciprocal_closed_form},
      {"error-compare", error_compare},      {"efficiency", efficiency_points},
      {"golden-fixture", golden_fixture},    {"hop-by-hop", hop_by_hop},
      {"determinism", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    failures += v.pass ? 0 : 1;
    std::cout << fmt::format("{} {} {}: {}", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail) << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
