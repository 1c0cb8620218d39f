#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "randcx/complex.hpp"

namespace randcx {

struct CollapseStep {
  Simplex free_face;  // (d-1)-face
  Simplex coface;     // its unique d-coface at removal time
};

struct CollapseReport {
  bool collapsed = false;
  std::vector<CollapseStep> steps;
  FVector residual;
};

/// Greedy d-collapse: repeatedly removes the lexicographically smallest free
/// (d-1)-face with its coface. The set of d-faces that survive does not
/// depend on the order, so greedy failure is genuine non-collapsibility.
/// Throws DomainError when the complex has faces above d or d < 1.
CollapseReport collapse(const SimplicialComplex& complex, int d);

inline constexpr std::size_t kExhaustiveCollapseLimit = 30;

/// Searches all collapse orders with memoisation; at most 30 d-faces,
/// otherwise ResourceError.
bool collapse_exhaustive(const SimplicialComplex& complex, int d);

/// The complex after removing the given pairs, in order. Throws DomainError
/// when a step is not an elementary collapse of the current complex.
SimplicialComplex apply_steps(const SimplicialComplex& complex, const std::vector<CollapseStep>& steps);

}  // namespace randcx
