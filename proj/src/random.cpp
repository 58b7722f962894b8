#include "orelco/random.hpp"

#include <numeric>

namespace orelco {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + index * 0x9E3779B97F4A7C15ull);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = ~0ull - (~0ull % bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

bool Rng::chance(double p) {
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  return static_cast<double>(engine_() >> 11) * scale < p;
}

std::vector<std::uint32_t> Rng::permutation(std::uint32_t size) {
  std::vector<std::uint32_t> out(size);
  std::iota(out.begin(), out.end(), 0u);
  shuffle(out);
  return out;
}

}  // namespace orelco
