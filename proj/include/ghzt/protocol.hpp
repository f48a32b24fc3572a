#pragma once

// End-to-end teleportation runs: the GHZ/POVM scheme, standard Bell-basis
// teleportation, repetition-code circuits and the noise experiments that
// compare direct logical teleportation with decode-teleport-re-encode.

#include "ghzt/discrimination.hpp"
#include "ghzt/gates.hpp"
#include "ghzt/rng.hpp"
#include "ghzt/states.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace ghzt {

/// Physical noise rates. p_bitflip hits each received qubit rail once per
/// teleport; p_gate hits each two-qubit gate of an explicit circuit.
struct NoiseModel {
  double p_bitflip = 0.0;
  double p_gate = 0.0;

  /// Throws InvalidArgument unless both rates are in [0, 1].
  void validate() const;
  bool noiseless() const noexcept { return p_bitflip == 0.0 && p_gate == 0.0; }
};

struct ProtocolConfig {
  /// Two-qubit gate cost of the consolidated POVM on the representative and
  /// channel qubits. Additive, so cost differences in n do not depend on it.
  int povm_two_qubit_cost = 2;
  /// Attempts before a run is reported inconclusive.
  int max_attempts = 1000;
};

/// |<ideal|actual>|^2 for unit vectors, capped at 1 against rounding.
double state_fidelity(const StateVector& ideal, const StateVector& actual);

/// (m1, m2) for conclusive outcome k: Pi_1 -> 00, Pi_2 -> 01, Pi_3 -> 10, Pi_4 -> 11.
std::pair<Bit, Bit> outcome_bits(int k);

/// Classical payload of one GHZ/POVM teleport: m1, m2 and the frame bits.
struct ClassicalMessage {
  Bit m1 = 0;
  Bit m2 = 0;
  Bit s = 0;
  BitString t;

  std::size_t payload_bits() const noexcept { return 3 + t.size(); }
  /// m1 m2 s t_1 .. t_n
  BitString bits() const;
};

/// Two cbits of one Bell-basis teleport: Z correction from the input qubit
/// and X correction from the sender's EPR half.
struct BellOutcome {
  Bit m_z = 0;
  Bit m_x = 0;
};

struct TeleportResult {
  bool conclusive = false;
  int attempts = 0;
  int outcome = 0;                         // sampled POVM index (GHZ scheme)
  std::optional<ClassicalMessage> message;  // GHZ scheme, iff conclusive
  std::vector<BellOutcome> bell_bits;       // Bell scheme, one pair per qubit
  std::optional<StateVector> bob_final;
  double fidelity = 0.0;
  int gate_cost = 0;

  std::size_t cbits() const noexcept;
};

/// (n - 1) consolidation CNOTs plus the fixed POVM cost.
int proposed_gate_cost(int n, const ProtocolConfig& config = {});

/// Sender-side machinery for one Pauli frame and channel, built once: the
/// frame-transformed discrimination set and its POVM.
class GhzTeleporter {
 public:
  GhzTeleporter(const LogicalInput& frame, const ChannelSpec& channel, ProtocolConfig config = {});

  /// Teleports `input`, an n-qubit state of the frame's family, retrying on
  /// inconclusive outcomes. Fidelity is |<input|bob_final>|^2.
  TeleportResult teleport(const StateVector& input, const NoiseModel& noise, Rng& rng) const;

  const LogicalInput& frame() const noexcept { return frame_; }
  const ChannelSpec& channel() const noexcept { return channel_; }
  const DiscriminationSet& discrimination() const noexcept { return dset_; }
  const PovmSet& povm() const noexcept { return povm_; }
  const ProtocolConfig& config() const noexcept { return config_; }

 private:
  LogicalInput frame_;
  ChannelSpec channel_;
  ProtocolConfig config_;
  DiscriminationSet dset_;
  PovmSet povm_;
  StateVector ghz_;
};

/// One run of the GHZ/POVM protocol on chi_st.
TeleportResult run_proposed(const LogicalInput& input, const ChannelSpec& channel, const NoiseModel& noise,
                            const ProtocolConfig& config, std::uint64_t rng_seed);

struct BellQubitResult {
  StateVector state;  // same register, qubit replaced by the receiver's copy
  BellOutcome outcome;
  double probability = 0.0;
};

/// Teleports one qubit of a register over an ideal EPR pair: Bell
/// measurement, two cbits, X^{m_x} then Z^{m_z} on the receiver.
BellQubitResult bell_teleport_qubit(const StateVector& state, int qubit, Rng& rng);

/// n parallel Bell teleports, one per qubit, then rail bit-flip noise.
TeleportResult bell_teleport_register(const StateVector& state, const NoiseModel& noise, Rng& rng);

/// Standard single-qubit teleportation of alpha|0> + beta|1>.
TeleportResult run_bell(Amplitude alpha, Amplitude beta, const NoiseModel& noise, std::uint64_t rng_seed);

// --- repetition code ---------------------------------------------------------

struct EncodedState {
  StateVector state;
  int gate_count = 0;
};

/// alpha|0>^n + beta|1>^n through a CNOT ladder from qubit 0.
EncodedState encode_repetition(Amplitude alpha, Amplitude beta, int n);

struct DecodedLogical {
  Amplitude alpha;
  Amplitude beta;
  int gate_count = 0;
  BitString syndrome;  // ancilla pattern after the inverse ladder
  bool carrier_flipped = false;
};

/// Inverse ladder, then a majority vote over the syndrome to undo a flipped
/// carrier. Expects a codeword up to X errors.
DecodedLogical decode_repetition(const StateVector& state);

/// sum_{k > n/2} C(n,k) p^k (1-p)^(n-k). Rejects even n.
double logical_error_rate(int n, double p);

struct McEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;

  double rate() const noexcept { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
  /// Binomial standard error sqrt(q(1-q)/N) for a reference rate q.
  double standard_error(double q) const noexcept;
};

/// Majority-vote logical error of the n-rail code under i.i.d. flips.
McEstimate bitflip_mc(int n, double p, std::uint64_t trials, std::uint64_t rng_seed, int workers = 1);

/// Gate fault: with probability p_gate, a uniformly random non-identity
/// Pauli hits one of the two gate qubits (uniform), just before the gate.
struct GateFault {
  bool fired = false;
  int qubit = 0;
  gates::Pauli pauli = gates::Pauli::I;
};
GateFault draw_gate_fault(double p_gate, int control, int target, Rng& rng);

struct PathwayBOutcome {
  bool decode_failed = false;
  double final_fidelity = 1.0;
  int gate_count = 0;
};

/// Decode (n-1 CNOTs) -> ideal bare teleport -> re-encode (n-1 CNOTs) with
/// faulty gates, on a random logical state. `decode_failed` is set when the
/// decoded register departs from (alpha|0> + beta|1>)|0..0> by more than 1e-9
/// in squared overlap.
PathwayBOutcome pathway_b_run(int n, const NoiseModel& noise, Rng& rng);
bool pathway_b_trial(int n, const NoiseModel& noise, std::uint64_t rng_seed);
McEstimate pathway_b_mc(int n, const NoiseModel& noise, std::uint64_t trials, std::uint64_t rng_seed,
                        int workers = 1);

}  // namespace ghzt
