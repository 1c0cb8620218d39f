#pragma once

#include <cstdint>
#include <span>

#include "randcx/simplex.hpp"

namespace randcx {

/// Identifies one reproducible random stream: a run-wide master seed and the
/// trial number within the run.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless counter-based generator: every draw is a hash of
/// (seed, domain, counter), so draws can be evaluated in any order or
/// selectively. Generators use domain = face dimension and counter = colex
/// rank of the face, giving one fixed uniform per candidate face.
class CounterRng {
 public:
  explicit constexpr CounterRng(RngSeed seed)
      : key_(mix64(mix64(seed.master_seed ^ 0x6a09e667f3bcc909ULL) + seed.stream_index * 0x9e3779b97f4a7c15ULL)) {}

  constexpr std::uint64_t bits(std::uint64_t domain, std::uint64_t counter) const {
    return mix64(mix64(key_ ^ (domain * 0xd1b54a32d192ed03ULL)) + counter * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t domain, std::uint64_t counter) const {
    return static_cast<double>(bits(domain, counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Binomial coefficient C(n, k) in 64 bits (saturates on overflow).
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Colex rank sum_i C(v_i, i+1) of a sorted vertex tuple; a bijection between
/// k-subsets of [n] and [0, C(n,k)).
std::uint64_t colex_rank(std::span<const Vertex> sorted_vertices);

}  // namespace randcx
