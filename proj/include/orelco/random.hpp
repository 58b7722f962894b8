#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace orelco {

/// One splitmix64 step; used to spread seeds before they reach the engine.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trial `index` in a campaign with the given master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seeded generator whose draws are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability p.
  bool chance(double p);
  std::vector<std::uint32_t> permutation(std::uint32_t size);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace orelco
