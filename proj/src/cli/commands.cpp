#include "ghzt/cli.hpp"

#include "ghzt/analysis.hpp"
#include "ghzt/discrimination.hpp"
#include "ghzt/errors.hpp"
#include "ghzt/network.hpp"
#include "ghzt/protocol.hpp"
#include "output.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace ghzt::cli {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
/// Inputs whose squared norm is off by less than this are rescaled, so that
/// printed decimals such as 0.70710678 are accepted.
constexpr double kRenormTol = 1e-6;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "csv";
  std::string output;
  int workers = 1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  Format fmt() const { return format == "json" ? Format::json : Format::csv; }
  std::optional<std::uint64_t> seed_if_given() const {
    return seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt;
  }
  std::uint64_t require_seed(std::string_view command) const {
    if (!seed_opt->count()) throw UsageError(fmt::format("{} draws random numbers: --seed is required", command));
    return seed;
  }
};

/// Rescales (x, y) to unit norm when it is within kRenormTol, noting it.
std::pair<double, double> unit_pair(double x, double y, std::string_view nx, std::string_view ny, Metadata& meta) {
  const double norm = x * x + y * y;
  if (std::abs(norm - 1.0) <= kNormTol) return {x, y};
  if (std::abs(norm - 1.0) > kRenormTol) {
    throw InvalidArgument(fmt::format("{0}^2 + {1}^2 = {2} must equal 1 ({0}={3}, {1}={4})", nx, ny,
                                      format_number(norm), format_number(x), format_number(y)));
  }
  const double r = std::sqrt(norm);
  meta.notes.push_back(fmt::format("{} and {} rescaled by 1/{} to unit norm", nx, ny, format_number(r)));
  return {x / r, y / r};
}

BitString frame_bits(const std::string& t, int n) {
  if (t.empty()) return BitString(static_cast<std::size_t>(std::max(n, 0)), 0);
  BitString bits = parse_bits(t);
  if (static_cast<int>(bits.size()) != n) {
    throw InvalidArgument(fmt::format("--t has {} bits but n = {}", bits.size(), n));
  }
  return bits;
}

Bit frame_sign(int s) {
  if (s != 0 && s != 1) throw InvalidArgument(fmt::format("--s must be 0 or 1, got {}", s));
  return static_cast<Bit>(s);
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

// --- teleport ----------------------------------------------------------------

struct TeleportArgs {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double alpha = kInvSqrt2;
  double beta = kInvSqrt2;
  int s = 0;
  std::string t;
  std::uint64_t trials = 1;
  double p_bitflip = 0.0;
  int max_attempts = 1000;
  int povm_cost = 2;
};

struct TeleportTally {
  std::uint64_t runs = 0;
  std::uint64_t completed = 0;
  std::uint64_t attempts = 0;
  std::array<std::uint64_t, 5> counts{};  // index 0: inconclusive draws
  double fidelity_sum = 0.0;
  double fidelity_min = std::numeric_limits<double>::infinity();
};

std::string cmd_teleport(const TeleportArgs& args, const Globals& g, Metadata& meta) {
  const std::uint64_t seed = g.require_seed("teleport");
  if (args.trials < 1) throw InvalidArgument("--trials must be >= 1");
  const auto [a, b] = unit_pair(args.a, args.b, "a", "b", meta);
  const auto [alpha, beta] = unit_pair(args.alpha, args.beta, "alpha", "beta", meta);
  const ChannelSpec channel(a, b, args.n);
  const LogicalInput input(alpha, beta, frame_sign(args.s), frame_bits(args.t, args.n));
  const NoiseModel noise{args.p_bitflip, 0.0};
  noise.validate();
  const ProtocolConfig config{args.povm_cost, args.max_attempts};
  const GhzTeleporter teleporter(input, channel, config);
  const StateVector chi = prepare_chi_st(input);

  meta.params = {{"n", args.n},          {"a", a},
                 {"b", b},               {"alpha", alpha},
                 {"beta", beta},         {"s", args.s},
                 {"t", format_bits(input.t())}, {"trials", args.trials},
                 {"p_bitflip", args.p_bitflip}, {"max_attempts", args.max_attempts},
                 {"povm_two_qubit_cost", args.povm_cost}};

  auto chunk = [&](Rng& rng, std::uint64_t count) {
    TeleportTally tally;
    for (std::uint64_t i = 0; i < count; ++i) {
      const TeleportResult r = teleporter.teleport(chi, noise, rng);
      ++tally.runs;
      tally.attempts += static_cast<std::uint64_t>(r.attempts);
      if (r.conclusive) {
        ++tally.completed;
        ++tally.counts[static_cast<std::size_t>(r.outcome)];
        tally.counts[0] += static_cast<std::uint64_t>(r.attempts - 1);
        tally.fidelity_sum += r.fidelity;
        tally.fidelity_min = std::min(tally.fidelity_min, r.fidelity);
      } else {
        tally.counts[0] += static_cast<std::uint64_t>(r.attempts);
      }
    }
    return tally;
  };
  const auto parts = run_chunks<TeleportTally>(args.trials, seed, g.workers, chunk);
  TeleportTally total;
  for (const TeleportTally& p : parts) {
    total.runs += p.runs;
    total.completed += p.completed;
    total.attempts += p.attempts;
    for (std::size_t k = 0; k < 5; ++k) total.counts[k] += p.counts[k];
    total.fidelity_sum += p.fidelity_sum;
    total.fidelity_min = std::min(total.fidelity_min, p.fidelity_min);
  }

  Table table;
  table.columns = {"n",        "a",          "b",          "s",        "t",        "trials",     "completed_runs",
                   "attempts", "conclusive_rate", "expected_rate", "mean_attempts", "min_fidelity", "mean_fidelity",
                   "count_00", "count_01",   "count_10",   "count_11", "inconclusive", "gate_cost", "cbits"};
  const bool any = total.completed > 0;
  const ClassicalMessage msg{0, 0, input.s(), input.t()};
  table.add({static_cast<long long>(args.n), a, b, static_cast<long long>(args.s), format_bits(input.t()),
             total.runs, total.completed, total.attempts,
             static_cast<double>(total.completed) / static_cast<double>(total.attempts),
             conclusive_probability(teleporter.povm(), teleporter.discrimination()),
             static_cast<double>(total.attempts) / static_cast<double>(total.runs),
             any ? Cell{total.fidelity_min} : Cell{},
             any ? Cell{total.fidelity_sum / static_cast<double>(total.completed)} : Cell{}, total.counts[1],
             total.counts[2], total.counts[3], total.counts[4], total.counts[0],
             static_cast<long long>(proposed_gate_cost(args.n, config)),
             static_cast<std::uint64_t>(msg.payload_bits())});
  return render(meta, table, g.fmt());
}

// --- povm-audit --------------------------------------------------------------

struct AuditArgs {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  int s = 0;
  std::string t;
};

std::string cmd_povm_audit(const AuditArgs& args, const Globals& g, Metadata& meta) {
  const auto [a, b] = unit_pair(args.a, args.b, "a", "b", meta);
  const ChannelSpec channel(a, b, args.n);
  const LogicalInput frame(1.0, 0.0, frame_sign(args.s), frame_bits(args.t, args.n));
  meta.params = {{"n", args.n}, {"a", a}, {"b", b}, {"s", args.s}, {"t", format_bits(frame.t())}};

  DiscriminationSet dset = [&] {
    try {
      return make_discrimination_set(channel, frame);
    } catch (const LinearDependenceError& e) {
      throw LinearDependenceError(fmt::format(
          "targets are linearly dependent at b = {}: no unambiguous discrimination exists ({})", format_number(b),
          e.what()));
    }
  }();
  const PovmSet povm = build_povm(dset.phi_tilde, channel);
  const PovmAudit& audit = povm.audit();
  const bool orthogonal = std::abs(a - b) <= kNormTol;
  const long long full = 1LL << (args.n + 1);

  Table table;
  table.columns = {"quantity", "value"};
  auto row = [&](std::string name, Cell value) { table.add({std::move(name), std::move(value)}); };
  row("ensemble", std::string(orthogonal ? "orthogonal" : "non-orthogonal"));
  row("p_closed_form", audit.p_closed_form);
  row("p_frame", audit.p_frame);
  row("p_route_difference", std::abs(audit.p_closed_form - audit.p_frame));
  row("conclusive_probability", conclusive_probability(povm, dset));
  row("biorthogonality_residual", biorthogonality_residual(dset.phi, dset.phi_tilde));
  row("gram_residual", (dset.gram - expected_gram(channel)).cwiseAbs().maxCoeff());
  row("completeness_residual", audit.completeness_residual);
  for (std::size_t k = 0; k < 5; ++k) row(fmt::format("min_eigenvalue_pi{}", k), audit.min_eigenvalue[k]);
  for (std::size_t k = 0; k < 5; ++k) row(fmt::format("rank_pi{}", k), static_cast<std::uint64_t>(audit.rank[k]));
  row("rank_pi0_expected", orthogonal ? full - 4 : full - 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) row(fmt::format("gram_{}{}", i + 1, j + 1), dset.gram(i, j));
  }
  return render(meta, table, g.fmt());
}

// --- sweep -------------------------------------------------------------------

struct SweepArgs {
  double b_min = 0.0;
  double b_max = kInvSqrt2;
  int steps = 21;
  int n = 1;
  std::uint64_t trials = 0;
  double alpha = kInvSqrt2;
  double beta = kInvSqrt2;
};

std::string cmd_sweep(const SweepArgs& args, const Globals& g, Metadata& meta) {
  const bool sample = args.trials > 0;
  const std::uint64_t seed = sample ? g.require_seed("sweep with --trials") : 0;
  const auto [alpha, beta] = unit_pair(args.alpha, args.beta, "alpha", "beta", meta);
  const std::vector<SweepRow> rows = success_curve(args.b_min, args.b_max, args.steps);
  meta.params = {{"b_min", args.b_min}, {"b_max", args.b_max}, {"steps", args.steps},
                 {"n", args.n},         {"trials", args.trials}, {"alpha", alpha},
                 {"beta", beta}};
  if (args.trials > 0) meta.notes.push_back("empirical_rate is blank where b = 0 (no conclusive outcome exists)");

  Table table;
  table.columns = {"b", "p_success", "empirical_rate", "trials"};
  const StateVector chi = prepare_chi0(alpha, beta, args.n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    std::optional<double> empirical;
    if (sample && r.b > 0.0) {
      const ChannelSpec channel = ChannelSpec::from_b(r.b, args.n);
      const DiscriminationSet dset = make_discrimination_set(channel);
      const PovmSet povm = build_povm(dset.phi_tilde, channel);
      const OutcomeDistribution dist = outcome_distribution(assemble_system(chi, prepare_ghz(channel)), povm, dset);
      auto chunk = [&](Rng& rng, std::uint64_t count) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
          hits += rng.categorical(dist.probabilities.data(), dist.probabilities.size()) != 0 ? 1 : 0;
        }
        return hits;
      };
      const auto parts = run_chunks<std::uint64_t>(args.trials, derive_seed(seed, i), g.workers, chunk);
      std::uint64_t hits = 0;
      for (auto h : parts) hits += h;
      empirical = static_cast<double>(hits) / static_cast<double>(args.trials);
    }
    table.add({r.b, r.p_success, opt_cell(empirical), args.trials});
  }
  return render(meta, table, g.fmt());
}

// --- efficiency --------------------------------------------------------------

struct EfficiencyArgs {
  long long n_min = 1;
  long long n_max = 50;
};

std::string cmd_efficiency(const EfficiencyArgs& args, const Globals& g, Metadata& meta) {
  if (args.n_min < 1 || args.n_max < args.n_min) {
    throw InvalidArgument(fmt::format("need 1 <= n_min <= n_max, got [{}, {}]", args.n_min, args.n_max));
  }
  meta.params = {{"n_min", args.n_min}, {"n_max", args.n_max}};
  Table table;
  table.columns = {"n",           "eta_q",          "eta_c",       "eta_q_fraction", "eta_c_fraction",
                   "proposed_qubits", "proposed_cbits", "bell_qubits", "bell_cbits"};
  for (long long n = args.n_min; n <= args.n_max; ++n) {
    const EfficiencyPoint e = efficiency(n);
    table.add({n, e.eta_q, e.eta_c, e.eta_q_fraction, e.eta_c_fraction, e.proposed.qubits, e.proposed.cbits,
               e.bell.qubits, e.bell.cbits});
  }
  return render(meta, table, g.fmt());
}

// --- error-compare -----------------------------------------------------------

struct CompareArgs {
  int n = 5;
  double p = 0.01;
  double p_gate = 0.005;
  std::uint64_t trials = 1'000'000;
  std::uint64_t bitflip_trials = 100'000'000;
};

std::string cmd_error_compare(const CompareArgs& args, const Globals& g, Metadata& meta) {
  const std::uint64_t seed = g.require_seed("error-compare");
  if (!(args.p_gate >= 0.0 && args.p_gate <= 0.1)) {
    throw InvalidArgument(fmt::format("--pg = {} outside [0, 0.1]", args.p_gate));
  }
  if (args.trials < 1 || args.bitflip_trials < 1) throw InvalidArgument("trial counts must be >= 1");
  const double p_l = logical_error_rate(args.n, args.p);
  const NoiseModel noise{0.0, args.p_gate};
  meta.params = {{"n", args.n},         {"p", args.p}, {"p_g", args.p_gate}, {"trials", args.trials},
                 {"bitflip_trials", args.bitflip_trials}};

  const McEstimate decode = pathway_b_mc(args.n, noise, args.trials, derive_seed(seed, 0), g.workers);
  const McEstimate flips = bitflip_mc(args.n, args.p, args.bitflip_trials, derive_seed(seed, 1), g.workers);
  const double p_decode = (args.n - 1) * args.p_gate;
  const double p_decode_exact = 1.0 - std::pow(1.0 - args.p_gate, args.n - 1);

  Table table;
  table.columns = {"n",
                   "p",
                   "p_g",
                   "p_decode_analytic",
                   "p_decode_exact",
                   "p_decode_mc",
                   "p_decode_mc_se",
                   "p_l_analytic",
                   "p_l_mc",
                   "p_l_mc_se",
                   "ratio_analytic",
                   "ratio_mc",
                   "decode_trials",
                   "bitflip_trials"};
  const std::optional<double> ratio_mc =
      flips.hits > 0 ? std::optional<double>(decode.rate() / flips.rate()) : std::nullopt;
  table.add({static_cast<long long>(args.n), args.p, args.p_gate, p_decode, p_decode_exact, decode.rate(),
             decode.standard_error(p_decode_exact), p_l, flips.rate(), flips.standard_error(p_l),
             p_l > 0.0 ? Cell{p_decode / p_l} : Cell{}, opt_cell(ratio_mc), decode.trials, flips.trials});
  return render(meta, table, g.fmt());
}

// --- chain -------------------------------------------------------------------

struct ChainArgs {
  std::string nodes = "Alice,Bob,Charlie,Dev";
  int n = 1;
  double a = kInvSqrt2;
  double b = kInvSqrt2;
  double alpha = kInvSqrt2;
  double beta = kInvSqrt2;
  int s = 0;
  std::string t;
  double p_ghz = 0.5;
  double p_bitflip = 0.0;
  std::string eve = "uniform";
  std::uint64_t eve_trials = 10'000;
  int max_attempts = 1000;
};

std::vector<std::string> split_nodes(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw InvalidArgument(fmt::format("--nodes '{}' has an empty node name", text));
    out.push_back(item);
  }
  return out;
}

std::string cmd_chain(const ChainArgs& args, const Globals& g, Metadata& meta, bool& completed) {
  const std::uint64_t seed = g.require_seed("chain");
  if (args.eve_trials < 1) throw InvalidArgument("--eve-trials must be >= 1");
  const auto [a, b] = unit_pair(args.a, args.b, "a", "b", meta);
  const auto [alpha, beta] = unit_pair(args.alpha, args.beta, "alpha", "beta", meta);
  ChainConfig config{split_nodes(args.nodes),
                     LogicalInput(alpha, beta, frame_sign(args.s), frame_bits(args.t, args.n)),
                     ChannelSpec(a, b, args.n),
                     args.p_ghz,
                     NoiseModel{args.p_bitflip, 0.0},
                     seed,
                     ProtocolConfig{2, args.max_attempts},
                     parse_strategy(args.eve)};
  config.validate();
  meta.params = {{"nodes", config.node_names}, {"n", args.n},
                 {"a", a},
                 {"b", b},
                 {"alpha", alpha},
                 {"beta", beta},
                 {"s", args.s},
                 {"t", format_bits(config.input.t())},
                 {"p_ghz_choice", args.p_ghz},
                 {"p_bitflip", args.p_bitflip},
                 {"eve", args.eve},
                 {"eve_trials", args.eve_trials},
                 {"max_attempts", args.max_attempts}};

  // The transcript chain and the Eve batch use separate substreams.
  ChainConfig single = config;
  single.rng_seed = derive_seed(seed, 0);
  const ChainResult chain = run_chain(single);
  ChainConfig batch = config;
  batch.rng_seed = derive_seed(seed, 1);
  const EveStats eve = run_eve_experiment(batch, args.eve_trials, g.workers);
  completed = chain.completed;

  std::string out;
  Json head;
  head["type"] = "metadata";
  const Json body = metadata_json(meta);
  for (const auto& [key, value] : body.items()) head[key] = value;
  out += head.dump() + "\n";
  for (const HopRecord& h : chain.hops) out += hop_to_json(h).dump() + "\n";
  Json summary;
  summary["type"] = "summary";
  summary["completed"] = chain.completed;
  summary["hops"] = config.hops();
  summary["final_fidelity"] = chain.completed ? Json(chain.final_fidelity) : Json(nullptr);
  summary["total_cbits"] = chain.total_cbits();
  out += summary.dump() + "\n";
  const double per_hop = config.eve == EveStrategy::uniform ? 0.5 : std::max(args.p_ghz, 1.0 - args.p_ghz);
  Json ej;
  ej["type"] = "eve";
  ej["strategy"] = strategy_name(config.eve);
  ej["trials"] = eve.trials;
  ej["all_correct"] = eve.all_correct;
  ej["rate"] = eve.rate();
  ej["analytic"] = std::pow(per_hop, config.hops());
  ej["completed_chains"] = eve.completed_chains;
  ej["min_final_fidelity"] = eve.completed_chains ? Json(eve.min_final_fidelity) : Json(nullptr);
  out += ej.dump() + "\n";
  return out;
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.output.empty() || g.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError(fmt::format("cannot write output path '{}'", g.output));
  file << text;
  file.close();
  if (!file) throw OutputError(fmt::format("failed writing output path '{}'", g.output));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GHZ-channel teleportation experiments", "ghzt"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output,-o", g.output, "Output file (default stdout)");
  app.add_option("--workers", g.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  g.seed_opt = app.add_option("--seed", g.seed, "RNG seed (required for Monte Carlo commands)");

  std::function<std::string(Metadata&)> action;
  bool chain_completed = true;

  TeleportArgs tp;
  auto* teleport = app.add_subcommand("teleport", "Run the GHZ/POVM protocol");
  teleport->add_option("--n", tp.n, "Logical register size")->required();
  teleport->add_option("--a", tp.a, "Channel amplitude a")->required();
  teleport->add_option("--b", tp.b, "Channel amplitude b")->required();
  teleport->add_option("--alpha", tp.alpha, "Input amplitude alpha")->capture_default_str();
  teleport->add_option("--beta", tp.beta, "Input amplitude beta")->capture_default_str();
  teleport->add_option("--s", tp.s, "Frame sign bit")->capture_default_str();
  teleport->add_option("--t", tp.t, "Frame bits t_1..t_n (default all zero)");
  teleport->add_option("--trials", tp.trials, "Independent runs")->capture_default_str();
  teleport->add_option("--p-bitflip", tp.p_bitflip, "Bit-flip rate per received rail")->capture_default_str();
  teleport->add_option("--max-attempts", tp.max_attempts, "Attempts per run")->capture_default_str();
  teleport->add_option("--povm-cost", tp.povm_cost, "Two-qubit gate cost of the POVM")->capture_default_str();
  teleport->callback([&] { action = [&](Metadata& m) { m.command = "teleport"; return cmd_teleport(tp, g, m); }; });

  AuditArgs au;
  auto* audit = app.add_subcommand("povm-audit", "Report the discrimination set and POVM invariants");
  audit->add_option("--n", au.n, "Logical register size")->required();
  audit->add_option("--a", au.a, "Channel amplitude a")->required();
  audit->add_option("--b", au.b, "Channel amplitude b")->required();
  audit->add_option("--s", au.s, "Frame sign bit")->capture_default_str();
  audit->add_option("--t", au.t, "Frame bits t_1..t_n (default all zero)");
  audit->callback([&] { action = [&](Metadata& m) { m.command = "povm-audit"; return cmd_povm_audit(au, g, m); }; });

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Conclusive probability against channel amplitude b");
  sweep->add_option("--b-min", sw.b_min)->capture_default_str();
  sweep->add_option("--b-max", sw.b_max)->capture_default_str();
  sweep->add_option("--steps", sw.steps)->capture_default_str();
  sweep->add_option("--n", sw.n)->capture_default_str();
  sweep->add_option("--trials", sw.trials, "Measurement draws per b (0: analytic only)")->capture_default_str();
  sweep->add_option("--alpha", sw.alpha)->capture_default_str();
  sweep->add_option("--beta", sw.beta)->capture_default_str();
  sweep->callback([&] { action = [&](Metadata& m) { m.command = "sweep"; return cmd_sweep(sw, g, m); }; });

  EfficiencyArgs ef;
  auto* eff = app.add_subcommand("efficiency", "Qubit and cbit savings over Bell-basis teleportation");
  eff->add_option("--n-min", ef.n_min)->capture_default_str();
  eff->add_option("--n-max", ef.n_max)->capture_default_str();
  eff->callback([&] { action = [&](Metadata& m) { m.command = "efficiency"; return cmd_efficiency(ef, g, m); }; });

  CompareArgs ec;
  auto* cmp = app.add_subcommand("error-compare", "Decode-stage failure against the protected logical error rate");
  cmp->add_option("--n", ec.n, "Code length (odd)")->capture_default_str();
  cmp->add_option("--p", ec.p, "Physical bit-flip rate")->capture_default_str();
  cmp->add_option("--pg", ec.p_gate, "Two-qubit gate error rate")->capture_default_str();
  cmp->add_option("--trials", ec.trials, "Decode Monte Carlo trials")->capture_default_str();
  cmp->add_option("--bitflip-trials", ec.bitflip_trials, "Bit-flip Monte Carlo trials")->capture_default_str();
  cmp->callback([&] { action = [&](Metadata& m) { m.command = "error-compare"; return cmd_error_compare(ec, g, m); }; });

  ChainArgs ch;
  auto* chain = app.add_subcommand("chain", "Hop-by-hop relay with an eavesdropper (JSON lines output)");
  chain->add_option("--nodes", ch.nodes, "Comma-separated node names")->capture_default_str();
  chain->add_option("--n", ch.n)->capture_default_str();
  chain->add_option("--a", ch.a)->capture_default_str();
  chain->add_option("--b", ch.b)->capture_default_str();
  chain->add_option("--alpha", ch.alpha)->capture_default_str();
  chain->add_option("--beta", ch.beta)->capture_default_str();
  chain->add_option("--s", ch.s)->capture_default_str();
  chain->add_option("--t", ch.t, "Frame bits t_1..t_n (default all zero)");
  chain->add_option("--p-ghz", ch.p_ghz, "Per-hop probability of the GHZ/POVM scheme")->capture_default_str();
  chain->add_option("--p-bitflip", ch.p_bitflip)->capture_default_str();
  chain->add_option("--eve", ch.eve, "uniform | stationary-bias")->capture_default_str();
  chain->add_option("--eve-trials", ch.eve_trials, "Chains in the eavesdropper batch")->capture_default_str();
  chain->add_option("--max-attempts", ch.max_attempts)->capture_default_str();
  chain->callback([&] {
    action = [&](Metadata& m) {
      m.command = "chain";
      return cmd_chain(ch, g, m, chain_completed);
    };
  });

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    Metadata meta;
    meta.seed = g.seed_if_given();
    if (!g.output.empty() && g.output != "-") {
      std::ofstream probe(g.output, std::ios::binary | std::ios::app);
      if (!probe) throw OutputError(fmt::format("cannot write output path '{}'", g.output));
    }
    const std::string text = action(meta);
    emit(text, g, out);
    if (!chain_completed) {
      err << "error: chain aborted: a hop exhausted its attempts\n";
      return 2;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ghzt::cli
