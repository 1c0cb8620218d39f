#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/rng.hpp"

namespace randcx {

enum class PointDistribution { kUniformCube, kStandardGaussian };

PointDistribution parse_distribution(std::string_view tag);
std::string_view to_string(PointDistribution d);

/// n points in R^d, row-major.
struct PointCloud {
  std::size_t n = 0;
  std::size_t dim = 0;
  PointDistribution distribution = PointDistribution::kUniformCube;
  std::vector<double> coords;

  const double* point(std::size_t i) const { return coords.data() + i * dim; }
  double coord(std::size_t i, std::size_t j) const { return coords[i * dim + j]; }
  double distance2(std::size_t a, std::size_t b) const;
};

void write_points_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_points_csv(std::istream& in);

// RNG domains; the face-dimension domains 0..63 are reserved for face draws.
inline constexpr std::uint64_t kPointDomain = 1000;

/// Erdos-Renyi graph G(n, p) on vertices 0..n-1.
SimplicialComplex gen_gnp(std::size_t n, double p, RngSeed seed);

/// Linial-Meshulam / Meshulam-Wallach Y_d(n, p): complete (d-1)-skeleton plus
/// each d-face independently with probability p.
SimplicialComplex gen_linial_meshulam(std::size_t n, int d, double p, RngSeed seed);

/// The link of vertex v in the Y_d(n, p) draw for this seed, built from the
/// d-faces containing v only. Identical to link(gen_linial_meshulam(...), {v}).
SimplicialComplex lm_vertex_link(std::size_t n, int d, double p, RngSeed seed, Vertex v);

/// Flag complex of a graph: one k-face per (k+1)-clique, k <= max_dim.
SimplicialComplex clique_complex(const SimplicialComplex& graph, int max_dim);

/// Random clique complex X(n, p) truncated at max_dim.
SimplicialComplex gen_clique_complex(std::size_t n, double p, int max_dim, RngSeed seed);

/// Multi-parameter model X(n; p_1, ..., p_m): every i-face whose boundary is
/// present is inserted with probability p_i. Dimension is at most m.
SimplicialComplex gen_multiparameter(std::size_t n, const std::vector<double>& probs, RngSeed seed);

PointCloud gen_points(std::size_t n, std::size_t dim, PointDistribution distribution, RngSeed seed);

/// Vietoris-Rips complex: edges at distance <= r, higher faces are cliques.
SimplicialComplex vietoris_rips(const PointCloud& points, double r, int max_dim);

/// Cech complex: faces whose minimum enclosing ball has radius <= r/2.
SimplicialComplex cech(const PointCloud& points, double r, int max_dim);

/// Absolute slack on enclosing-ball radius comparisons; ties count as inside.
inline constexpr double kBallTolerance = 1e-9;

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

/// Minimum enclosing ball of the listed points (move-to-front Welzl).
Ball min_enclosing_ball(const PointCloud& points, std::span<const Vertex> members);

}  // namespace randcx
