#pragma once

#include <cstdint>

namespace pamlab {

// Counter-based RNG.
//
// Every variate is a pure function of (key, stream, counter).  A stream is a
// named substream (site values, duplication coins, replicate draws, ...);
// the counter is the index within the stream (site index, draw index).
// Nothing is sequential, so parallel samplers are order-independent and a
// value can be regenerated at any time without storing it.
//
// The mix is the SplitMix64 finalizer over a Weyl sequence, keyed per
// (key, stream) by an avalanche of the pair.  Streams are decorrelated by
// hashing rather than by spacing, so any 64-bit stream id is safe.
class CounterRng {
 public:
  CounterRng(std::uint64_t key, std::uint64_t stream)
      : base_(derive_base(key, stream)) {}

  // 64 uniform bits at position `counter` of the stream.
  std::uint64_t bits(std::uint64_t counter) const {
    return finalize(base_ + counter * kGamma);
  }

  // Uniform double in (0, 1]; never 0, can be exactly 1.
  double uniform_pos(std::uint64_t counter) const {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform double in [0, 1).
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Deterministic key derivation for nested seeding (cells, replicates).
  static std::uint64_t derive_key(std::uint64_t key, std::uint64_t salt) {
    return finalize(key ^ (0x9E3779B97F4A7C15ull + finalize(salt)));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t derive_base(std::uint64_t key, std::uint64_t stream) {
    return finalize(key + 0x632BE59BD9B4E019ull) ^
           finalize(stream * 0xFF51AFD7ED558CCDull + 0x2545F4914F6CDD1Dull);
  }

  std::uint64_t base_;
};

// Stream ids used by the potential sampler; fixed so fields are stable
// across versions.
enum class RngStream : std::uint64_t {
  kSiteValue = 1,       // Pareto draws, counter = site index (shifted)
  kDupCoin = 2,         // duplication coins, counter = n >= 1
  kScratch = 3,         // generic per-purpose draws
  kLimitProcess = 4,    // point process samplers
  kResample = 5,        // conditional resampling draws
};

// Sequential convenience wrapper over a CounterRng stream.
class SequentialRng {
 public:
  SequentialRng(std::uint64_t key, std::uint64_t stream)
      : rng_(key, stream) {}

  std::uint64_t bits() { return rng_.bits(n_++); }
  double uniform() { return rng_.uniform(n_++); }
  double uniform_pos() { return rng_.uniform_pos(n_++); }

 private:
  CounterRng rng_;
  std::uint64_t n_ = 0;
};

}  // namespace pamlab
