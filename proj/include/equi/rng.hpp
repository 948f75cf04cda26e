#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace equi {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives one independent generator per named algorithmic site from a single
/// 64-bit seed, so results do not depend on the order sites consume randomness.
class SeedStreams {
public:
  explicit SeedStreams(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t derive(std::string_view name) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : name) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    return splitmix64(seed_ ^ splitmix64(h));
  }

  Rng stream(std::string_view name) const { return Rng(derive(name)); }

private:
  std::uint64_t seed_;
};

}  // namespace equi
