#pragma once

// Seeded randomness and deterministic Monte Carlo fan-out.
//
// Engine: std::mt19937_64. Substreams are keyed by (seed, stream) through the
// SplitMix64 finalizer, so trial t of a batch always draws from the same
// stream no matter how many workers run the batch.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

namespace ghzt {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-substreams";
inline constexpr int kRngVersion = 1;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return mix64(mix64(base) ^ mix64(stream + 0x632BE59BD9B4E019ull));
}

__extension__ using Uint128 = unsigned __int128;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Rng substream(std::uint64_t stream) { return Rng(derive_seed(engine_(), stream)); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n), n > 0 (Lemire's nearly-divisionless method).
  std::uint64_t below(std::uint64_t n) {
    Uint128 m = static_cast<Uint128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<Uint128>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal via Box-Muller.
  double normal();

  /// Index drawn from unnormalized nonnegative weights.
  std::size_t categorical(const double* weights, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

/// Trials per substream in batched Monte Carlo.
inline constexpr std::uint64_t kChunkTrials = 1u << 14;

int default_workers() noexcept;

/// Runs `trials` trials split into chunks of kChunkTrials; chunk c owns
/// Rng(derive_seed(seed, c)). `chunk_fn(Rng&, std::uint64_t count) -> R`
/// evaluates one chunk. Returns per-chunk results in chunk order so callers
/// can reduce deterministically regardless of `workers`.
template <class R, class ChunkFn>
std::vector<R> run_chunks(std::uint64_t trials, std::uint64_t seed, int workers, ChunkFn&& chunk_fn) {
  const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<R> results(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      Rng rng(derive_seed(seed, c));
      const std::uint64_t count = std::min(kChunkTrials, trials - c * kChunkTrials);
      results[c] = chunk_fn(rng, count);
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::uint64_t>(chunks, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace ghzt
