#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hyperfact {

// Deterministic 64-bit generator (splitmix64). Used instead of <random>
// engines so that seeded runs serialize identically on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from a master seed and task indices.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0) {
  SplitMix64 rng(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^
                 (b * 0xd1b54a32d192ed03ULL));
  rng.next();
  return rng.next();
}

template <typename T>
void shuffle_in_place(std::vector<T>& values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace hyperfact
