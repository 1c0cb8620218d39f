#pragma once

#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "randcx/complex.hpp"

namespace randcx {

inline constexpr double kEigenTolerance = 1e-9;
inline constexpr std::size_t kDenseSpectrumLimit = 3000;
inline constexpr std::size_t kCheegerLimit = 24;

/// L = I - D^{-1/2} A D^{-1/2} on the non-isolated vertices of a graph (the
/// 1-skeleton of the input).
struct NormalizedLaplacian {
  Eigen::SparseMatrix<double> matrix;
  std::vector<Vertex> vertices;  // row i is vertices[i]
  std::size_t dropped_isolated = 0;
};

/// Throws DomainError when the graph has no edges.
NormalizedLaplacian normalized_laplacian(const SimplicialComplex& graph);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double lambda2 = 0.0;
  /// lambda2 > tolerance and no isolated vertex was dropped.
  bool connected = false;
  std::size_t dropped_isolated = 0;
};

/// Full spectrum of the normalized Laplacian (dense solver, at most 3000
/// non-isolated vertices, else ResourceError).
SpectrumReport spectral_gap(const SimplicialComplex& graph);

/// min over proper nonempty A of |E(A, A^c)| / min(vol A, vol A^c), by
/// exhaustive enumeration. DomainError on isolated vertices or fewer than two
/// vertices; ResourceError above 24 vertices.
double cheeger_number(const SimplicialComplex& graph);

struct GarlandReport {
  bool holds = false;
  /// On failure: the (d-2)-face whose link fails (empty for d = 1) and the
  /// link's lambda2 (0 for a disconnected or degenerate link).
  std::optional<Simplex> witness;
  double witness_lambda2 = 0.0;
  /// Smallest link lambda2 seen when the certificate holds.
  double min_lambda2 = 0.0;
};

/// Every (d-2)-face link graph must be connected, free of isolated vertices
/// and have lambda2 > 1 - 1/d. For d = 1 the graph itself is the only link.
/// DomainError unless the complex is pure d-dimensional.
GarlandReport garland_certificate(const SimplicialComplex& complex, int d);

}  // namespace randcx
