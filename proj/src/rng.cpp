#include "randcx/rng.hpp"

#include <limits>

namespace randcx {

__extension__ using u128 = unsigned __int128;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t colex_rank(std::span<const Vertex> sorted_vertices) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_vertices.size(); ++i) rank += binomial(sorted_vertices[i], i + 1);
  return rank;
}

}  // namespace randcx
