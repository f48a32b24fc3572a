#pragma once

// Hop-by-hop relay of a logical state along a line of nodes. Each hop picks
// the GHZ/POVM scheme or n parallel Bell teleports at random; an eavesdropper
// who sees only the classical traffic guesses which one was used.

#include "ghzt/protocol.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ghzt {

enum class HopProtocol { ghz_povm, bell_basis };
std::string_view protocol_name(HopProtocol p) noexcept;

enum class EveStrategy {
  uniform,          // fair coin per hop
  stationary_bias,  // always the more likely type
};
std::string_view strategy_name(EveStrategy s) noexcept;
EveStrategy parse_strategy(std::string_view name);

struct ChainConfig {
  std::vector<std::string> node_names;
  LogicalInput input;
  ChannelSpec channel;
  double p_ghz_choice = 0.5;
  NoiseModel noise;
  std::uint64_t rng_seed = 0;
  ProtocolConfig protocol;
  EveStrategy eve = EveStrategy::uniform;

  int hops() const noexcept { return static_cast<int>(node_names.size()) - 1; }
  /// Throws InvalidArgument on fewer than 2 nodes, a channel of the wrong
  /// size, or out-of-range probabilities.
  void validate() const;
};

struct HopRecord {
  int hop = 0;  // 1-based
  std::string from;
  std::string to;
  HopProtocol protocol = HopProtocol::ghz_povm;
  bool completed = false;
  int attempts = 0;
  std::optional<ClassicalMessage> message;  // GHZ/POVM hops
  std::vector<BellOutcome> bell_bits;       // Bell-basis hops
  double fidelity = 0.0;                    // overlap of exiting with entering state
  std::size_t cbits = 0;
};

struct ChainResult {
  std::vector<HopRecord> hops;
  bool completed = false;
  double final_fidelity = 0.0;  // |<chi_st|final>|^2, 0 when aborted
  std::optional<StateVector> final_state;

  std::size_t total_cbits() const noexcept;
};

/// Holds the per-config sender machinery so repeated chains share it.
/// Intermediate nodes forward blindly: each hop uses only its own message.
class ChainRunner {
 public:
  explicit ChainRunner(ChainConfig config);

  ChainResult run(Rng& rng) const;
  const ChainConfig& config() const noexcept { return config_; }

 private:
  ChainConfig config_;
  GhzTeleporter ghz_;
  StateVector chi_;
};

ChainResult run_chain(const ChainConfig& config);

struct EveRecord {
  std::vector<HopProtocol> guesses;
  bool all_correct = false;
};

/// Eve's guesses for a chain. She sees only the transcript, which carries no
/// channel-type information, so her guesses depend on the strategy alone.
EveRecord eve_guess(const ChainResult& chain, EveStrategy strategy, double p_ghz_choice, Rng& rng);

struct EveStats {
  std::uint64_t trials = 0;
  std::uint64_t all_correct = 0;
  std::uint64_t completed_chains = 0;
  double min_final_fidelity = 1.0;  // over completed chains

  double rate() const noexcept {
    return trials ? static_cast<double>(all_correct) / static_cast<double>(trials) : 0.0;
  }
};

/// `trials` independent chains seeded from config.rng_seed, with config.eve
/// guessing each one.
EveStats run_eve_experiment(const ChainConfig& config, std::uint64_t trials, int workers = 1);

/// {hop, from, to, protocol, attempts, m1, m2, s, t, fidelity, cbits}. Bell
/// hops give per-qubit m1 (Z) and m2 (X) arrays with s and t null.
nlohmann::ordered_json hop_to_json(const HopRecord& hop);

}  // namespace ghzt
