#include "ghzt/network.hpp"

#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

namespace ghzt {

std::string_view protocol_name(HopProtocol p) noexcept {
  return p == HopProtocol::ghz_povm ? "GHZ-POVM" : "Bell-basis";
}

std::string_view strategy_name(EveStrategy s) noexcept {
  return s == EveStrategy::uniform ? "uniform" : "stationary-bias";
}

EveStrategy parse_strategy(std::string_view name) {
  if (name == "uniform") return EveStrategy::uniform;
  if (name == "stationary-bias") return EveStrategy::stationary_bias;
  throw InvalidArgument(fmt::format("unknown Eve strategy '{}' (uniform | stationary-bias)", name));
}

void ChainConfig::validate() const {
  if (node_names.size() < 2) throw InvalidArgument("a chain needs at least 2 nodes");
  if (channel.n() != input.n()) {
    throw DimensionMismatch(fmt::format("input n = {} but channel n = {}", input.n(), channel.n()));
  }
  if (!(p_ghz_choice >= 0.0 && p_ghz_choice <= 1.0)) {
    throw InvalidArgument(fmt::format("p_ghz_choice = {} outside [0, 1]", p_ghz_choice));
  }
  noise.validate();
}

std::size_t ChainResult::total_cbits() const noexcept {
  std::size_t total = 0;
  for (const HopRecord& h : hops) total += h.cbits;
  return total;
}

namespace {

ChainConfig validated(ChainConfig c) {
  c.validate();
  return c;
}

}  // namespace

ChainRunner::ChainRunner(ChainConfig config)
    : config_(validated(std::move(config))),
      ghz_(config_.input, config_.channel, config_.protocol),
      chi_(prepare_chi_st(config_.input)) {}

ChainResult ChainRunner::run(Rng& rng) const {
  ChainResult out;
  StateVector current = chi_;
  for (int h = 0; h < config_.hops(); ++h) {
    HopRecord rec;
    rec.hop = h + 1;
    rec.from = config_.node_names[static_cast<std::size_t>(h)];
    rec.to = config_.node_names[static_cast<std::size_t>(h + 1)];
    rec.protocol = rng.bernoulli(config_.p_ghz_choice) ? HopProtocol::ghz_povm : HopProtocol::bell_basis;

    TeleportResult r = rec.protocol == HopProtocol::ghz_povm ? ghz_.teleport(current, config_.noise, rng)
                                                             : bell_teleport_register(current, config_.noise, rng);
    rec.attempts = r.attempts;
    rec.completed = r.conclusive;
    rec.message = r.message;
    rec.bell_bits = r.bell_bits;
    if (r.conclusive) {
      rec.fidelity = r.fidelity;
      rec.cbits = r.cbits();
    }
    out.hops.push_back(std::move(rec));
    if (!r.conclusive) return out;
    current = std::move(*r.bob_final);
  }
  out.completed = true;
  out.final_fidelity = state_fidelity(chi_, current);
  out.final_state = std::move(current);
  return out;
}

ChainResult run_chain(const ChainConfig& config) {
  const ChainRunner runner(config);
  Rng rng(config.rng_seed);
  return runner.run(rng);
}

EveRecord eve_guess(const ChainResult& chain, EveStrategy strategy, double p_ghz_choice, Rng& rng) {
  EveRecord rec;
  rec.all_correct = true;
  for (const HopRecord& hop : chain.hops) {
    HopProtocol g;
    if (strategy == EveStrategy::uniform) {
      g = rng.bernoulli(0.5) ? HopProtocol::ghz_povm : HopProtocol::bell_basis;
    } else {
      g = p_ghz_choice >= 0.5 ? HopProtocol::ghz_povm : HopProtocol::bell_basis;
    }
    rec.guesses.push_back(g);
    rec.all_correct = rec.all_correct && g == hop.protocol;
  }
  return rec;
}

EveStats run_eve_experiment(const ChainConfig& config, std::uint64_t trials, int workers) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const ChainRunner runner(config);
  auto chunk = [&](Rng& rng, std::uint64_t count) {
    EveStats s;
    s.trials = count;
    for (std::uint64_t t = 0; t < count; ++t) {
      const ChainResult chain = runner.run(rng);
      const EveRecord eve = eve_guess(chain, config.eve, config.p_ghz_choice, rng);
      s.all_correct += eve.all_correct ? 1 : 0;
      if (chain.completed) {
        ++s.completed_chains;
        s.min_final_fidelity = std::min(s.min_final_fidelity, chain.final_fidelity);
      }
    }
    return s;
  };
  const auto parts = run_chunks<EveStats>(trials, config.rng_seed, workers, chunk);
  EveStats total;
  for (const EveStats& p : parts) {
    total.trials += p.trials;
    total.all_correct += p.all_correct;
    total.completed_chains += p.completed_chains;
    total.min_final_fidelity = std::min(total.min_final_fidelity, p.min_final_fidelity);
  }
  return total;
}

nlohmann::ordered_json hop_to_json(const HopRecord& hop) {
  nlohmann::ordered_json j;
  j["type"] = "hop";
  j["hop"] = hop.hop;
  j["from"] = hop.from;
  j["to"] = hop.to;
  j["protocol"] = protocol_name(hop.protocol);
  j["attempts"] = hop.attempts;
  j["completed"] = hop.completed;
  if (hop.protocol == HopProtocol::ghz_povm && hop.message) {
    j["m1"] = hop.message->m1;
    j["m2"] = hop.message->m2;
    j["s"] = hop.message->s;
    j["t"] = format_bits(hop.message->t);
  } else if (hop.protocol == HopProtocol::bell_basis && hop.completed) {
    auto m1 = nlohmann::ordered_json::array();
    auto m2 = nlohmann::ordered_json::array();
    for (const BellOutcome& b : hop.bell_bits) {
      m1.push_back(b.m_z);
      m2.push_back(b.m_x);
    }
    j["m1"] = std::move(m1);
    j["m2"] = std::move(m2);
    j["s"] = nullptr;
    j["t"] = nullptr;
  } else {
    j["m1"] = nullptr;
    j["m2"] = nullptr;
    j["s"] = nullptr;
    j["t"] = nullptr;
  }
  if (hop.completed) {
    j["fidelity"] = hop.fidelity;
  } else {
    j["fidelity"] = nullptr;
  }
  j["cbits"] = hop.cbits;
  return j;
}

}  // namespace ghzt
