#include "randcx/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "randcx/errors.hpp"

namespace randcx {

namespace {

struct LocalGraph {
  std::vector<Vertex> vertices;  // non-isolated, ascending
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::size_t dropped = 0;
};

LocalGraph local_graph(const SimplicialComplex& g) {
  LocalGraph out;
  if (g.dimension() < 1) {
    out.dropped = g.n_vertices();
    return out;
  }
  const auto& e = g.layer(1);
  std::vector<Vertex> touched(e.begin(), e.end());
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  out.vertices = touched;
  out.dropped = g.n_vertices() - touched.size();
  auto idx = [&](Vertex v) { return static_cast<std::uint32_t>(std::lower_bound(touched.begin(), touched.end(), v) - touched.begin()); };
  for (std::size_t i = 0; i + 1 < e.size(); i += 2) out.edges.push_back({idx(e[i]), idx(e[i + 1])});
  return out;
}

Eigen::MatrixXd dense_laplacian(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<double> deg(n, 0.0);
  for (const auto& [a, b] : edges) {
    deg[a] += 1;
    deg[b] += 1;
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& [a, b] : edges) {
    const double w = -1.0 / std::sqrt(deg[a] * deg[b]);
    l(a, b) = w;
    l(b, a) = w;
  }
  return l;
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

NormalizedLaplacian normalized_laplacian(const SimplicialComplex& graph) {
  const auto g = local_graph(graph);
  if (g.edges.empty()) throw DomainError("normalized laplacian: graph has no edges");
  const std::size_t n = g.vertices.size();
  std::vector<double> deg(n, 0.0);
  for (const auto& [a, b] : g.edges) {
    deg[a] += 1;
    deg[b] += 1;
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n + 2 * g.edges.size());
  for (std::size_t i = 0; i < n; ++i) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
  for (const auto& [a, b] : g.edges) {
    const double w = -1.0 / std::sqrt(deg[a] * deg[b]);
    trip.emplace_back(static_cast<int>(a), static_cast<int>(b), w);
    trip.emplace_back(static_cast<int>(b), static_cast<int>(a), w);
  }
  NormalizedLaplacian out;
  out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.vertices = g.vertices;
  out.dropped_isolated = g.dropped;
  return out;
}

SpectrumReport spectral_gap(const SimplicialComplex& graph) {
  const auto g = local_graph(graph);
  if (g.edges.empty()) throw DomainError("spectral gap: graph has no edges");
  if (g.vertices.size() > kDenseSpectrumLimit)
    throw ResourceError("spectral gap: " + std::to_string(g.vertices.size()) + " vertices exceed the dense limit of " +
                        std::to_string(kDenseSpectrumLimit));
  SpectrumReport r;
  r.eigenvalues = sorted_eigenvalues(dense_laplacian(g.vertices.size(), g.edges));
  r.lambda2 = r.eigenvalues.size() > 1 ? r.eigenvalues[1] : 0.0;
  r.dropped_isolated = g.dropped;
  r.connected = r.lambda2 > kEigenTolerance && g.dropped == 0;
  return r;
}

double cheeger_number(const SimplicialComplex& graph) {
  const std::size_t n = graph.n_vertices();
  if (n < 2) throw DomainError("cheeger number: need at least two vertices");
  if (n > kCheegerLimit)
    throw ResourceError("cheeger number: " + std::to_string(n) + " vertices exceed the exhaustive limit of " +
                        std::to_string(kCheegerLimit) + "; use the spectral bound lambda2/2 instead");
  const auto& verts = graph.layer(0);
  std::vector<std::uint32_t> adj(n, 0);
  std::vector<long> deg(n, 0);
  if (graph.dimension() >= 1) {
    const auto& e = graph.layer(1);
    auto idx = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
    for (std::size_t i = 0; i + 1 < e.size(); i += 2) {
      const auto a = idx(e[i]), b = idx(e[i + 1]);
      adj[a] |= 1u << b;
      adj[b] |= 1u << a;
      ++deg[a];
      ++deg[b];
    }
  }
  long total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] == 0) throw DomainError("cheeger number: graph has an isolated vertex");
    total += deg[v];
  }
  // Gray-code walk over subsets A of the first n-1 vertices; the last vertex
  // stays outside A, so every bipartition is visited once.
  std::uint32_t in_a = 0;
  long cut = 0, vol = 0;
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t count = 1ULL << (n - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i));
    const long inside = std::popcount(adj[v] & in_a);
    if (in_a >> v & 1) {
      in_a &= ~(1u << v);
      vol -= deg[v];
      cut -= deg[v] - 2 * inside;
    } else {
      in_a |= 1u << v;
      vol += deg[v];
      cut += deg[v] - 2 * inside;
    }
    best = std::min(best, static_cast<double>(cut) / static_cast<double>(std::min(vol, total - vol)));
  }
  return best;
}

GarlandReport garland_certificate(const SimplicialComplex& complex, int d) {
  if (d < 1 || !is_pure(complex, d)) throw DomainError("garland certificate: complex is not pure " + std::to_string(d) + "-dimensional");
  const double bound = 1.0 - 1.0 / d;
  GarlandReport report;
  report.min_lambda2 = std::numeric_limits<double>::infinity();
  auto check_link = [&](std::size_t n_vertices, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                        std::optional<Simplex> face) {
    std::vector<bool> touched(n_vertices, false);
    for (const auto& [a, b] : edges) touched[a] = touched[b] = true;
    double lambda2 = 0.0;
    const bool degenerate = n_vertices < 2 || std::find(touched.begin(), touched.end(), false) != touched.end();
    if (!degenerate) {
      const auto ev = sorted_eigenvalues(dense_laplacian(n_vertices, edges));
      lambda2 = ev[1];
    }
    if (degenerate || lambda2 <= kEigenTolerance || lambda2 <= bound) {
      report.holds = false;
      report.witness = std::move(face);
      report.witness_lambda2 = degenerate ? 0.0 : lambda2;
      return false;
    }
    report.min_lambda2 = std::min(report.min_lambda2, lambda2);
    return true;
  };

  if (d == 1) {
    const auto g = local_graph(complex);
    if (!check_link(complex.n_vertices(), g.edges, std::nullopt)) return report;
    report.holds = true;
    return report;
  }

  // Link graphs of all (d-2)-faces in one pass over the (d-1)- and d-faces.
  const std::size_t nl = complex.count(d - 2);
  std::vector<std::vector<Vertex>> link_vertices(nl);
  std::vector<std::vector<std::pair<Vertex, Vertex>>> link_edges(nl);
  std::vector<Vertex> rest;
  for (std::size_t i = 0; i < complex.count(d - 1); ++i) {
    const auto f = complex.face(d - 1, i);
    for (std::size_t j = 0; j < f.size(); ++j) {
      rest.assign(f.begin(), f.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      link_vertices[*complex.index_of(rest)].push_back(f[j]);
    }
  }
  for (std::size_t i = 0; i < complex.count(d); ++i) {
    const auto f = complex.face(d, i);
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = a + 1; b < f.size(); ++b) {
        rest.clear();
        for (std::size_t t = 0; t < f.size(); ++t)
          if (t != a && t != b) rest.push_back(f[t]);
        link_edges[*complex.index_of(rest)].push_back({f[a], f[b]});
      }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> local;
  for (std::size_t s = 0; s < nl; ++s) {
    auto& lv = link_vertices[s];
    std::sort(lv.begin(), lv.end());
    local.clear();
    for (const auto& [a, b] : link_edges[s]) {
      const auto ia = static_cast<std::uint32_t>(std::lower_bound(lv.begin(), lv.end(), a) - lv.begin());
      const auto ib = static_cast<std::uint32_t>(std::lower_bound(lv.begin(), lv.end(), b) - lv.begin());
      local.push_back({ia, ib});
    }
    if (!check_link(lv.size(), local, complex.simplex(d - 2, s))) return report;
  }
  report.holds = true;
  return report;
}

}  // namespace randcx
