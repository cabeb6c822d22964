#pragma once

#include <cstdint>
#include <cstddef>

namespace kfhe {

// Deterministic 64-bit generator (SplitMix64). All sampling in this library
// goes through this class instead of <random> distributions, so results are
// bitwise reproducible across platforms and standard libraries.
//
// Streams: derive(id) returns an independent child generator whose seed is a
// hash of the parent's current state and the id. Deriving the same ids from
// the same parent state always yields the same stream, which is how the
// benchmark splits one master seed per (dataset, noise, repeat, fold, ...).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound). bound must be > 0.
  std::size_t next_below(std::size_t bound) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>((static_cast<u128>(next_u64()) * bound) >> 64);
  }

  // Independent child stream; pure function of (current state, id), does not
  // advance this generator.
  Rng derive(std::uint64_t id) const { return Rng(mix(state_ ^ mix(id ^ 0xD1B54A32D192ED03ULL))); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace kfhe
