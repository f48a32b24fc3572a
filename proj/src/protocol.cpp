#include "ghzt/protocol.hpp"

#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace ghzt {

namespace {

void check_probability(double p, std::string_view name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("{} = {} outside [0, 1]", name, p));
}

// X on each of `count` rails starting at `first`, each with probability p.
void apply_rail_flips(CVector& amps, int register_qubits, int first, int count, double p, Rng& rng) {
  if (p <= 0.0) return;
  for (int q = first; q < first + count; ++q) {
    if (rng.bernoulli(p)) gates::apply_x(amps, register_qubits, q);
  }
}

// Haar-random single-qubit state.
std::pair<Amplitude, Amplitude> random_logical(Rng& rng) {
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  const double ca = std::sqrt(std::max(0.0, 0.5 * (1.0 + cos_theta)));
  const double cb = std::sqrt(std::max(0.0, 0.5 * (1.0 - cos_theta)));
  return {Amplitude{ca, 0.0}, std::polar(cb, phase)};
}

void faulty_cnot(CVector& amps, int register_qubits, int control, int target, double p_gate, Rng& rng) {
  const GateFault fault = draw_gate_fault(p_gate, control, target, rng);
  if (fault.fired) gates::apply_pauli(amps, register_qubits, fault.qubit, fault.pauli);
  gates::apply_cnot(amps, register_qubits, control, target);
}

}  // namespace

double state_fidelity(const StateVector& ideal, const StateVector& actual) {
  return std::min(1.0, squared_overlap(ideal, actual));
}

void NoiseModel::validate() const {
  check_probability(p_bitflip, "p_bitflip");
  check_probability(p_gate, "p_gate");
}

std::pair<Bit, Bit> outcome_bits(int k) {
  if (k < 1 || k > 4) throw InvalidArgument(fmt::format("conclusive outcome index {} outside 1..4", k));
  const int code = k - 1;
  return {static_cast<Bit>((code >> 1) & 1), static_cast<Bit>(code & 1)};
}

BitString ClassicalMessage::bits() const {
  BitString out;
  out.reserve(3 + t.size());
  out.push_back(m1);
  out.push_back(m2);
  out.push_back(s);
  for (Bit b : t) out.push_back(b);
  return out;
}

std::size_t TeleportResult::cbits() const noexcept {
  if (message) return message->payload_bits();
  return 2 * bell_bits.size();
}

int proposed_gate_cost(int n, const ProtocolConfig& config) {
  return (n - 1) + config.povm_two_qubit_cost;
}

// --- GHZ / POVM scheme -------------------------------------------------------

GhzTeleporter::GhzTeleporter(const LogicalInput& frame, const ChannelSpec& channel, ProtocolConfig config)
    : frame_(frame),
      channel_(channel),
      config_(config),
      dset_(make_discrimination_set(channel, frame)),
      povm_(build_povm(dset_.phi_tilde, channel)),
      ghz_(prepare_ghz(channel)) {
  if (config_.max_attempts < 1) throw InvalidArgument("max_attempts must be >= 1");
  if (config_.povm_two_qubit_cost < 0) throw InvalidArgument("POVM gate cost must be >= 0");
}

TeleportResult GhzTeleporter::teleport(const StateVector& input, const NoiseModel& noise, Rng& rng) const {
  noise.validate();
  const int n = channel_.n();
  if (input.num_qubits() != n) {
    throw DimensionMismatch(fmt::format("input has {} qubits, channel carries n = {}", input.num_qubits(), n));
  }
  // Every fresh copy of the input yields the same system state and hence the
  // same outcome distribution; each attempt draws from it independently.
  const StateVector system = assemble_system(input, ghz_);
  const OutcomeDistribution dist = outcome_distribution(system, povm_, dset_);

  TeleportResult result;
  result.gate_cost = proposed_gate_cost(n, config_);
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    result.attempts = attempt;
    MeasurementOutcome out = sample_outcome(dist, rng);
    if (!out.conclusive) continue;

    const auto [m1, m2] = outcome_bits(out.index);
    CVector bob = out.bob_state->amps();
    build_Tprime(frame_, m1, m2).apply_inplace(bob, n, 0);
    apply_rail_flips(bob, n, 0, n, noise.p_bitflip, rng);

    result.conclusive = true;
    result.outcome = out.index;
    result.message = ClassicalMessage{m1, m2, frame_.s(), frame_.t()};
    result.bob_final = StateVector(std::move(bob));
    result.fidelity = state_fidelity(input, *result.bob_final);
    return result;
  }
  return result;
}

TeleportResult run_proposed(const LogicalInput& input, const ChannelSpec& channel, const NoiseModel& noise,
                            const ProtocolConfig& config, std::uint64_t rng_seed) {
  if (input.n() != channel.n()) {
    throw DimensionMismatch(fmt::format("input n = {} but channel n = {}", input.n(), channel.n()));
  }
  const GhzTeleporter teleporter(input, channel, config);
  Rng rng(rng_seed);
  return teleporter.teleport(prepare_chi_st(input), noise, rng);
}

// --- Bell-basis scheme -------------------------------------------------------

BellQubitResult bell_teleport_qubit(const StateVector& state, int qubit, Rng& rng) {
  const int m = state.num_qubits();
  if (qubit < 0 || qubit >= m) throw InvalidArgument(fmt::format("qubit {} outside a {}-qubit register", qubit, m));
  if (m + 2 > kDefaultMaxQubits) throw SizeLimitError("register too large for a Bell teleport");

  CVector epr = CVector::Zero(4);
  epr(0) = epr(3) = 1.0 / std::sqrt(2.0);
  const int ext_qubits = m + 2;
  const int alice = m;
  CVector ext = kron(state, StateVector(epr)).amps();

  gates::apply_cnot(ext, ext_qubits, qubit, alice);
  gates::apply_h(ext, ext_qubits, qubit);

  const auto qmask = static_cast<Eigen::Index>(gates::qubit_mask(ext_qubits, qubit));
  const auto amask = static_cast<Eigen::Index>(gates::qubit_mask(ext_qubits, alice));
  std::array<double, 4> probs{};
  for (Eigen::Index i = 0; i < ext.size(); ++i) {
    const int mz = (i & qmask) ? 1 : 0;
    const int mx = (i & amask) ? 1 : 0;
    probs[static_cast<std::size_t>(2 * mz + mx)] += std::norm(ext(i));
  }
  const auto pick = rng.categorical(probs.data(), probs.size());
  const Bit mz = static_cast<Bit>(pick >> 1);
  const Bit mx = static_cast<Bit>(pick & 1);

  // Receiver's qubit takes the measured qubit's slot.
  const auto dim = Eigen::Index{1} << m;
  const auto slot = static_cast<Eigen::Index>(gates::qubit_mask(m, qubit));
  CVector out(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const Eigen::Index bob = (idx & slot) ? 1 : 0;
    const Eigen::Index rest = mz ? (idx | slot) : (idx & ~slot);
    out(idx) = ext((rest << 2) | (Eigen::Index{mx} << 1) | bob);
  }
  out /= std::sqrt(probs[pick]);
  if (mx) gates::apply_x(out, m, qubit);
  if (mz) gates::apply_z(out, m, qubit);
  return {StateVector(std::move(out)), BellOutcome{mz, mx}, probs[pick]};
}

TeleportResult bell_teleport_register(const StateVector& state, const NoiseModel& noise, Rng& rng) {
  noise.validate();
  const int n = state.num_qubits();
  TeleportResult result;
  result.attempts = 1;
  result.conclusive = true;
  result.gate_cost = n;  // one CNOT per Bell measurement
  StateVector current = state;
  for (int q = 0; q < n; ++q) {
    BellQubitResult r = bell_teleport_qubit(current, q, rng);
    result.bell_bits.push_back(r.outcome);
    current = std::move(r.state);
  }
  CVector amps = current.amps();
  apply_rail_flips(amps, n, 0, n, noise.p_bitflip, rng);
  result.bob_final = StateVector(std::move(amps));
  result.fidelity = state_fidelity(state, *result.bob_final);
  return result;
}

TeleportResult run_bell(Amplitude alpha, Amplitude beta, const NoiseModel& noise, std::uint64_t rng_seed) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
    throw InvalidArgument("|alpha|^2 + |beta|^2 must be 1");
  }
  CVector v(2);
  v << alpha, beta;
  Rng rng(rng_seed);
  return bell_teleport_register(StateVector(std::move(v)), noise, rng);
}

// --- repetition code ---------------------------------------------------------

EncodedState encode_repetition(Amplitude alpha, Amplitude beta, int n) {
  if (n < 1 || n > kDefaultMaxQubits) throw InvalidArgument(fmt::format("code length {} out of range", n));
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
    throw InvalidArgument("|alpha|^2 + |beta|^2 must be 1");
  }
  CVector amps = CVector::Zero(Eigen::Index{1} << n);
  amps(0) = alpha;
  amps(static_cast<Eigen::Index>(gates::qubit_mask(n, 0))) = beta;
  for (int q = 1; q < n; ++q) gates::apply_cnot(amps, n, 0, q);
  return {StateVector(std::move(amps)), n - 1};
}

DecodedLogical decode_repetition(const StateVector& state) {
  const int n = state.num_qubits();
  if (n < 1) throw InvalidArgument("decode needs at least one qubit");
  CVector amps = state.amps();
  for (int q = n - 1; q >= 1; --q) gates::apply_cnot(amps, n, 0, q);

  // After the ladder the register is (carrier) (x) |syndrome> for X errors.
  const auto half = Eigen::Index{1} << (n - 1);
  Eigen::Index best = 0;
  double best_weight = -1.0;
  for (Eigen::Index syn = 0; syn < half; ++syn) {
    const double w = std::norm(amps(syn)) + std::norm(amps(half + syn));
    if (w > best_weight) {
      best_weight = w;
      best = syn;
    }
  }
  DecodedLogical out;
  out.gate_count = n - 1;
  out.syndrome.resize(static_cast<std::size_t>(n - 1));
  for (int q = 1; q < n; ++q) {
    out.syndrome[static_cast<std::size_t>(q - 1)] =
        static_cast<Bit>((best >> (n - 1 - q)) & 1);
  }
  const double norm = std::sqrt(best_weight);
  Amplitude a0 = amps(best) / norm;
  Amplitude a1 = amps(half + best) / norm;
  // A majority of flagged ancillas means the carrier rail itself flipped.
  const int weight = std::popcount(static_cast<std::uint64_t>(best));
  out.carrier_flipped = 2 * weight > n - 1;
  if (out.carrier_flipped) std::swap(a0, a1);
  out.alpha = a0;
  out.beta = a1;
  return out;
}

double logical_error_rate(int n, double p) {
  if (n < 1 || n % 2 == 0) throw InvalidArgument(fmt::format("majority vote needs an odd code length, got {}", n));
  check_probability(p, "p");
  double total = 0.0;
  double binom = 1.0;  // C(n, k), built incrementally
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    if (2 * k > n) total += binom * std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  return total;
}

double McEstimate::standard_error(double q) const noexcept {
  if (trials == 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

McEstimate bitflip_mc(int n, double p, std::uint64_t trials, std::uint64_t rng_seed, int workers) {
  if (n < 1 || n % 2 == 0) throw InvalidArgument(fmt::format("majority vote needs an odd code length, got {}", n));
  check_probability(p, "p");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const bool always = p >= 1.0;
  // Flip iff the raw 64-bit draw is below p * 2^64.
  const auto threshold = always ? std::numeric_limits<std::uint64_t>::max()
                                : static_cast<std::uint64_t>(std::ldexp(p, 64));
  auto chunk = [&](Rng& rng, std::uint64_t count) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
      int flips = 0;
      for (int q = 0; q < n; ++q) flips += (always || rng.next_u64() < threshold) ? 1 : 0;
      hits += (2 * flips > n) ? 1 : 0;
    }
    return hits;
  };
  const auto parts = run_chunks<std::uint64_t>(trials, rng_seed, workers, chunk);
  return {std::accumulate(parts.begin(), parts.end(), std::uint64_t{0}), trials};
}

// --- decode-teleport-re-encode -----------------------------------------------

GateFault draw_gate_fault(double p_gate, int control, int target, Rng& rng) {
  GateFault f;
  if (p_gate <= 0.0 || !rng.bernoulli(p_gate)) return f;
  f.fired = true;
  f.qubit = rng.below(2) == 0 ? control : target;
  f.pauli = static_cast<gates::Pauli>(1 + rng.below(3));
  return f;
}

PathwayBOutcome pathway_b_run(int n, const NoiseModel& noise, Rng& rng) {
  noise.validate();
  if (n < 1 || 2 * n - 1 > kDefaultMaxQubits) throw InvalidArgument(fmt::format("code length {} out of range", n));
  const auto [alpha, beta] = random_logical(rng);
  PathwayBOutcome out;

  // Sender decodes the stored codeword onto qubit 0.
  CVector reg = encode_repetition(alpha, beta, n).state.amps();
  for (int q = n - 1; q >= 1; --q) faulty_cnot(reg, n, 0, q, noise.p_gate, rng);
  out.gate_count += n - 1;

  CVector ideal = CVector::Zero(reg.size());
  ideal(0) = alpha;
  ideal(static_cast<Eigen::Index>(gates::qubit_mask(n, 0))) = beta;
  out.decode_failed = std::norm(ideal.dot(reg)) < 1.0 - 1e-9;

  // Ideal bare teleport of qubit 0, then re-encode onto n-1 fresh receiver
  // ancillas. The sender's ancillas stay in the register so any leftover
  // entanglement with the carrier is kept.
  const int total = 2 * n - 1;
  CVector fresh = CVector::Zero(Eigen::Index{1} << (n - 1));
  fresh(0) = 1.0;
  CVector full = kron(StateVector(reg), StateVector(fresh)).amps();
  for (int j = 0; j < n - 1; ++j) faulty_cnot(full, total, 0, n + j, noise.p_gate, rng);
  out.gate_count += n - 1;

  // Fidelity of the receiver's code block, tracing out the sender's ancillas.
  const Eigen::Index carrier = static_cast<Eigen::Index>(gates::qubit_mask(total, 0));
  const Eigen::Index bob_all = (Eigen::Index{1} << (n - 1)) - 1;
  double fid = 0.0;
  for (Eigen::Index pattern = 0; pattern < (Eigen::Index{1} << (n - 1)); ++pattern) {
    const Eigen::Index base = pattern << (n - 1);
    const Amplitude ov = std::conj(alpha) * full(base) + std::conj(beta) * full(carrier | base | bob_all);
    fid += std::norm(ov);
  }
  out.final_fidelity = std::min(1.0, fid);
  return out;
}

bool pathway_b_trial(int n, const NoiseModel& noise, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return pathway_b_run(n, noise, rng).decode_failed;
}

McEstimate pathway_b_mc(int n, const NoiseModel& noise, std::uint64_t trials, std::uint64_t rng_seed, int workers) {
  noise.validate();
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  auto chunk = [&](Rng& rng, std::uint64_t count) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < count; ++t) hits += pathway_b_run(n, noise, rng).decode_failed ? 1 : 0;
    return hits;
  };
  const auto parts = run_chunks<std::uint64_t>(trials, rng_seed, workers, chunk);
  return {std::accumulate(parts.begin(), parts.end(), std::uint64_t{0}), trials};
}

}  // namespace ghzt
