#include "randcx/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "randcx/errors.hpp"

namespace randcx {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": probability must lie in [0, 1]");
}

// binom_table[v][i] = C(v, i) for v < n, i <= k.
class BinomialTable {
 public:
  BinomialTable(std::size_t n, std::size_t k) : k_(k + 1), table_(n * (k + 1)) {
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i <= k; ++i) table_[v * k_ + i] = binomial(v, i);
  }
  std::uint64_t operator()(Vertex v, std::size_t i) const { return table_[v * k_ + i]; }

  std::uint64_t rank(std::span<const Vertex> f) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < f.size(); ++i) r += (*this)(f[i], i + 1);
    return r;
  }

 private:
  std::size_t k_;
  std::vector<std::uint64_t> table_;
};

// All k-subsets of `ground` (sorted) appended to `out` in lexicographic order.
void append_all_subsets(const std::vector<Vertex>& ground, std::size_t k, std::vector<Vertex>& out,
                        const std::function<bool(std::span<const Vertex>)>& keep = {}) {
  const std::size_t m = ground.size();
  if (k == 0 || k > m) return;
  std::vector<std::size_t> pick(k);
  std::vector<Vertex> face(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) face[i] = ground[pick[i]];
    if (!keep || keep(face)) out.insert(out.end(), face.begin(), face.end());
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

bool layer_contains(const std::vector<Vertex>& flat, std::span<const Vertex> f) {
  const std::size_t w = f.size();
  std::size_t lo = 0, hi = flat.size() / w;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lex_less(std::span<const Vertex>(flat.data() + mid * w, w), f)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < flat.size() / w && std::equal(f.begin(), f.end(), flat.begin() + static_cast<std::ptrdiff_t>(lo * w));
}

// Higher-neighbour lists of the graph given by a flat edge layer, indexed by vertex id.
std::vector<std::vector<Vertex>> higher_neighbours(const std::vector<Vertex>& edges, Vertex bound) {
  std::vector<std::vector<Vertex>> adj(bound);
  for (std::size_t e = 0; e + 1 < edges.size(); e += 2) adj[edges[e]].push_back(edges[e + 1]);
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

// Grows layers 2..max_dim from vertex and edge layers. A candidate k-face is
// an extension sigma+w (w above max sigma) of a (k-1)-face whose facets are
// all present; it is kept when accept(face, k) holds. Layers come out sorted.
void expand_layers(std::vector<std::vector<Vertex>>& layers, int max_dim,
                   const std::function<bool(std::span<const Vertex>, int)>& accept,
                   bool check_facets) {
  if (layers.size() < 2 || max_dim < 2) return;
  Vertex bound = 0;
  for (Vertex v : layers[0]) bound = std::max(bound, v + 1);
  const auto adj = higher_neighbours(layers[1], bound);
  std::vector<Vertex> cand, next, face, facet;
  for (int k = 2; k <= max_dim; ++k) {
    const auto& prev = layers[static_cast<std::size_t>(k - 1)];
    if (prev.empty()) break;
    std::vector<Vertex> out;
    const std::size_t w = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < prev.size(); i += w) {
      std::span<const Vertex> sigma(prev.data() + i, w);
      cand = adj[sigma.back()];
      for (std::size_t j = 0; j + 1 < w && !cand.empty(); ++j) {
        const auto& a = adj[sigma[j]];
        next.clear();
        std::set_intersection(cand.begin(), cand.end(), a.begin(), a.end(), std::back_inserter(next));
        cand.swap(next);
      }
      for (Vertex v : cand) {
        face.assign(sigma.begin(), sigma.end());
        face.push_back(v);
        if (check_facets && k >= 3) {
          bool ok = true;
          for (std::size_t drop = 0; drop + 1 < face.size() && ok; ++drop) {
            facet.clear();
            for (std::size_t t = 0; t < face.size(); ++t)
              if (t != drop) facet.push_back(face[t]);
            ok = layer_contains(prev, facet);
          }
          if (!ok) continue;
        }
        if (accept(face, k)) out.insert(out.end(), face.begin(), face.end());
      }
    }
    if (out.empty()) break;
    layers.push_back(std::move(out));
  }
}

}  // namespace

PointDistribution parse_distribution(std::string_view tag) {
  if (tag == "uniform" || tag == "uniform-cube") return PointDistribution::kUniformCube;
  if (tag == "gaussian" || tag == "standard-gaussian") return PointDistribution::kStandardGaussian;
  throw DomainError("unknown point distribution '" + std::string(tag) + "' (expected uniform-cube or standard-gaussian)");
}

std::string_view to_string(PointDistribution d) {
  return d == PointDistribution::kUniformCube ? "uniform-cube" : "standard-gaussian";
}

double PointCloud::distance2(std::size_t a, std::size_t b) const {
  double s = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double t = coords[a * dim + j] - coords[b * dim + j];
    s += t * t;
  }
  return s;
}

void write_points_csv(std::ostream& out, const PointCloud& cloud) {
  char buf[32];
  for (std::size_t i = 0; i < cloud.n; ++i) {
    for (std::size_t j = 0; j < cloud.dim; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", cloud.coord(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

PointCloud read_points_csv(std::istream& in) {
  PointCloud cloud;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw MalformedInput("points csv: non-numeric cell '" + cell + "'");
      }
      if (!std::isfinite(row.back())) throw MalformedInput("points csv: non-finite coordinate");
    }
    if (cloud.n == 0) {
      cloud.dim = row.size();
    } else if (row.size() != cloud.dim) {
      throw MalformedInput("points csv: rows have different lengths");
    }
    cloud.coords.insert(cloud.coords.end(), row.begin(), row.end());
    ++cloud.n;
  }
  return cloud;
}

SimplicialComplex gen_gnp(std::size_t n, double p, RngSeed seed) {
  check_probability(p, "gen_gnp");
  if (n < 1) throw DomainError("gen_gnp: need at least one vertex");
  const CounterRng rng(seed);
  std::vector<std::vector<Vertex>> layers(2);
  layers[0] = iota_vertices(n);
  if (p > 0.0) {
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = i + 1; j < n; ++j) {
        if (rng.uniform(1, j * (j - 1) / 2 + i) < p) {
          layers[1].push_back(static_cast<Vertex>(i));
          layers[1].push_back(static_cast<Vertex>(j));
        }
      }
    }
  }
  return SimplicialComplex::from_layers(std::move(layers));
}

SimplicialComplex gen_linial_meshulam(std::size_t n, int d, double p, RngSeed seed) {
  check_probability(p, "gen_linial_meshulam");
  if (d < 1 || static_cast<std::size_t>(d) >= n) throw DomainError("gen_linial_meshulam: need 1 <= d <= n-1");
  const CounterRng rng(seed);
  const BinomialTable binom(n, static_cast<std::size_t>(d) + 1);
  const auto ground = iota_vertices(n);
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k < d; ++k) append_all_subsets(ground, static_cast<std::size_t>(k) + 1, layers[static_cast<std::size_t>(k)]);
  if (p > 0.0) {
    append_all_subsets(ground, static_cast<std::size_t>(d) + 1, layers[static_cast<std::size_t>(d)],
                       [&](std::span<const Vertex> f) { return rng.uniform(static_cast<std::uint64_t>(d), binom.rank(f)) < p; });
  }
  return SimplicialComplex::from_layers(std::move(layers));
}

SimplicialComplex lm_vertex_link(std::size_t n, int d, double p, RngSeed seed, Vertex v) {
  check_probability(p, "lm_vertex_link");
  if (d < 1 || static_cast<std::size_t>(d) >= n) throw DomainError("lm_vertex_link: need 1 <= d <= n-1");
  if (v >= n) throw DomainError("lm_vertex_link: vertex out of range");
  const CounterRng rng(seed);
  const BinomialTable binom(n, static_cast<std::size_t>(d) + 1);
  std::vector<Vertex> ground;
  for (Vertex u = 0; u < n; ++u)
    if (u != v) ground.push_back(u);
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(d));
  for (int k = 0; k + 1 < d; ++k) append_all_subsets(ground, static_cast<std::size_t>(k) + 1, layers[static_cast<std::size_t>(k)]);
  std::vector<Vertex> full;
  if (p > 0.0) {
    append_all_subsets(ground, static_cast<std::size_t>(d), layers[static_cast<std::size_t>(d - 1)], [&](std::span<const Vertex> f) {
      full.assign(f.begin(), f.end());
      full.insert(std::upper_bound(full.begin(), full.end(), v), v);
      return rng.uniform(static_cast<std::uint64_t>(d), binom.rank(full)) < p;
    });
  }
  return SimplicialComplex::from_layers(std::move(layers));
}

SimplicialComplex clique_complex(const SimplicialComplex& graph, int max_dim) {
  if (graph.empty() || max_dim < 0) return graph.skeleton(max_dim);
  std::vector<std::vector<Vertex>> layers{graph.layer(0)};
  if (graph.dimension() >= 1 && max_dim >= 1) {
    layers.push_back(graph.layer(1));
    expand_layers(layers, max_dim, [](std::span<const Vertex>, int) { return true; }, false);
  }
  return SimplicialComplex::from_layers(std::move(layers));
}

SimplicialComplex gen_clique_complex(std::size_t n, double p, int max_dim, RngSeed seed) {
  return clique_complex(gen_gnp(n, p, seed), max_dim);
}

SimplicialComplex gen_multiparameter(std::size_t n, const std::vector<double>& probs, RngSeed seed) {
  if (probs.empty()) throw DomainError("gen_multiparameter: probability list is empty");
  for (double p : probs) check_probability(p, "gen_multiparameter");
  if (n < 1) throw DomainError("gen_multiparameter: need at least one vertex");
  const CounterRng rng(seed);
  std::vector<std::vector<Vertex>> layers(1, iota_vertices(n));
  layers.emplace_back();
  if (probs[0] > 0.0) {
    const double p = probs[0];
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = i + 1; j < n; ++j)
        if (rng.uniform(1, j * (j - 1) / 2 + i) < p) {
          layers[1].push_back(static_cast<Vertex>(i));
          layers[1].push_back(static_cast<Vertex>(j));
        }
  }
  int top = static_cast<int>(probs.size());
  for (int k = 2; k <= top; ++k) {
    if (probs[static_cast<std::size_t>(k - 1)] <= 0.0) {
      top = k - 1;
      break;
    }
  }
  const BinomialTable binom(n, static_cast<std::size_t>(top) + 1);
  expand_layers(
      layers, top,
      [&](std::span<const Vertex> f, int k) {
        return rng.uniform(static_cast<std::uint64_t>(k), binom.rank(f)) < probs[static_cast<std::size_t>(k - 1)];
      },
      true);
  return SimplicialComplex::from_layers(std::move(layers));
}

PointCloud gen_points(std::size_t n, std::size_t dim, PointDistribution distribution, RngSeed seed) {
  if (n < 1 || dim < 1) throw DomainError("gen_points: need n >= 1 and d >= 1");
  const CounterRng rng(seed);
  PointCloud cloud{n, dim, distribution, std::vector<double>(n * dim)};
  for (std::size_t c = 0; c < n * dim; ++c) {
    if (distribution == PointDistribution::kUniformCube) {
      cloud.coords[c] = rng.uniform(kPointDomain, c);
    } else {
      const double u1 = 1.0 - rng.uniform(kPointDomain + 1, 2 * c);
      const double u2 = rng.uniform(kPointDomain + 1, 2 * c + 1);
      cloud.coords[c] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  }
  return cloud;
}

namespace {

std::vector<std::vector<Vertex>> proximity_graph_layers(const PointCloud& points, double r) {
  if (!(r >= 0.0)) throw DomainError("radius must be non-negative");
  std::vector<std::vector<Vertex>> layers(2);
  layers[0] = iota_vertices(points.n);
  const double r2 = r * r;
  for (std::size_t i = 0; i < points.n; ++i)
    for (std::size_t j = i + 1; j < points.n; ++j)
      if (points.distance2(i, j) <= r2) {
        layers[1].push_back(static_cast<Vertex>(i));
        layers[1].push_back(static_cast<Vertex>(j));
      }
  return layers;
}

}  // namespace

SimplicialComplex vietoris_rips(const PointCloud& points, double r, int max_dim) {
  auto layers = proximity_graph_layers(points, r);
  if (max_dim < 1) layers.resize(1);
  expand_layers(layers, max_dim, [](std::span<const Vertex>, int) { return true; }, false);
  return SimplicialComplex::from_layers(std::move(layers));
}

SimplicialComplex cech(const PointCloud& points, double r, int max_dim) {
  auto layers = proximity_graph_layers(points, r);
  if (max_dim < 1) layers.resize(1);
  const double limit = r / 2.0 + kBallTolerance;
  expand_layers(
      layers, max_dim,
      [&](std::span<const Vertex> f, int) { return min_enclosing_ball(points, f).radius <= limit; }, true);
  return SimplicialComplex::from_layers(std::move(layers));
}

namespace {

struct BallSolver {
  std::size_t dim;
  std::vector<const double*> boundary;

  Ball circumball() const {
    Ball b;
    if (boundary.empty()) {
      b.radius = -1.0;
      return b;
    }
    const double* p0 = boundary[0];
    b.center.assign(p0, p0 + dim);
    const std::size_t m = boundary.size() - 1;
    if (m == 0) return b;
    Eigen::MatrixXd diff(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < dim; ++t) diff(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = boundary[j + 1][t] - p0[t];
    const Eigen::MatrixXd gram = diff.transpose() * diff;
    const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
    const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
    const Eigen::VectorXd offset = diff * lambda;
    for (std::size_t t = 0; t < dim; ++t) b.center[t] += offset(static_cast<Eigen::Index>(t));
    b.radius = offset.norm();
    return b;
  }

  bool outside(const Ball& b, const double* p) const {
    if (b.radius < 0.0) return true;
    double s = 0.0;
    for (std::size_t t = 0; t < dim; ++t) s += (p[t] - b.center[t]) * (p[t] - b.center[t]);
    return std::sqrt(s) > b.radius * (1.0 + 1e-12) + 1e-15;
  }

  Ball move_to_front(std::vector<const double*>& pts, std::size_t end) {
    Ball b = circumball();
    if (boundary.size() == dim + 1) return b;
    for (std::size_t i = 0; i < end; ++i) {
      if (outside(b, pts[i])) {
        boundary.push_back(pts[i]);
        b = move_to_front(pts, i);
        boundary.pop_back();
        std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i), pts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      }
    }
    return b;
  }
};

}  // namespace

Ball min_enclosing_ball(const PointCloud& points, std::span<const Vertex> members) {
  BallSolver solver{points.dim, {}};
  std::vector<const double*> pts;
  pts.reserve(members.size());
  for (Vertex v : members) pts.push_back(points.point(v));
  Ball b = solver.move_to_front(pts, pts.size());
  if (b.radius < 0.0) b.radius = 0.0;
  return b;
}

}  // namespace randcx
