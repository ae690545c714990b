#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace scnf {

/// Seed for every randomized operation. There is no wall-clock default.
struct RngSeed {
  std::uint64_t value = 0;
};

/// Independent random stream identified by a seed and a key path, e.g.
/// (seed, initial-state index, trajectory index). Streams with different
/// keys never share state, so results do not depend on how work is split
/// across threads.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::initializer_list<std::uint64_t> key)
      : engine_(mix(seed, key)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
  }

  std::mt19937_64& engine() { return engine_; }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
    std::uint64_t h = splitmix(seed);
    for (auto k : key) h = splitmix(h ^ splitmix(k + 0x632be59bd9b4e019ull));
    return h;
  }

  std::mt19937_64 engine_;
};

/// Stream tags that keep the purposes of draws apart under one seed.
namespace stream {
inline constexpr std::uint64_t kTrajectory = 1;
inline constexpr std::uint64_t kInitialStates = 2;
inline constexpr std::uint64_t kGenerate = 3;
inline constexpr std::uint64_t kFidelityInits = 4;
inline constexpr std::uint64_t kFidelityReference = 5;
inline constexpr std::uint64_t kFidelityLearned = 6;
inline constexpr std::uint64_t kOptimizer = 7;
}  // namespace stream

}  // namespace scnf
