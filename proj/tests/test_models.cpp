#include <doctest.h>

#include <cmath>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles/stats.hpp"
#include "randcx/errors.hpp"
#include "randcx/homology.hpp"
#include "randcx/models.hpp"

using namespace randcx;

TEST_CASE("rng helpers") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 3) == 1313400);
  // colex rank is a bijection onto [0, C(n,k)).
  std::vector<bool> seen(binomial(7, 3), false);
  for (Vertex a = 0; a < 7; ++a)
    for (Vertex b = a + 1; b < 7; ++b)
      for (Vertex c = b + 1; c < 7; ++c) {
        const Vertex f[3] = {a, b, c};
        const auto r = colex_rank(f);
        REQUIRE(r < seen.size());
        CHECK_FALSE(seen[r]);
        seen[r] = true;
      }
  const CounterRng rng({1, 2});
  CHECK(rng.uniform(0, 0) == CounterRng({1, 2}).uniform(0, 0));
  CHECK(rng.uniform(0, 0) != CounterRng({1, 3}).uniform(0, 0));
}

TEST_CASE("gnp edge cases and mean") {
  CHECK(gen_gnp(5, 0, {1, 0}).f_vector().counts == std::vector<std::size_t>{5});
  CHECK(gen_gnp(5, 1, {1, 0}).f_vector().counts == std::vector<std::size_t>{5, 10});
  CHECK_THROWS_AS(gen_gnp(5, 1.5, {1, 0}), DomainError);
  CHECK_THROWS_AS(gen_gnp(5, -0.1, {1, 0}), DomainError);

  const std::size_t trials = 10000;
  double sum = 0;
  for (std::uint64_t t = 0; t < trials; ++t) sum += static_cast<double>(gen_gnp(100, 0.3, {9, t}).count(1));
  const double mean = 1485.0, var = 4950 * 0.3 * 0.7;
  CHECK(std::abs(sum / trials - mean) < 3 * std::sqrt(var / trials));
}

TEST_CASE("determinism and monotone coupling") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RngSeed seed{3, s};
    CHECK(gen_clique_complex(30, 0.3, 3, seed) == gen_clique_complex(30, 0.3, 3, seed));
    const auto lo = gen_linial_meshulam(15, 2, 0.2, seed), hi = gen_linial_meshulam(15, 2, 0.35, seed);
    for (std::size_t i = 0; i < lo.count(2); ++i) CHECK(hi.index_of(lo.face(2, i)).has_value());
    const auto g1 = gen_gnp(40, 0.1, seed), g2 = gen_gnp(40, 0.2, seed);
    for (std::size_t i = 0; i < g1.count(1); ++i) CHECK(g2.index_of(g1.face(1, i)).has_value());
    const auto pts = gen_points(40, 2, PointDistribution::kUniformCube, seed);
    const auto r1 = vietoris_rips(pts, 0.2, 2), r2 = vietoris_rips(pts, 0.3, 2);
    for (std::size_t i = 0; i < r1.count(2); ++i) CHECK(r2.index_of(r1.face(2, i)).has_value());
  }
}

TEST_CASE("linial-meshulam") {
  CHECK(gen_linial_meshulam(4, 2, 0, {1, 0}).f_vector().counts == std::vector<std::size_t>{4, 6});
  CHECK(gen_linial_meshulam(4, 2, 1, {1, 0}).f_vector().counts == std::vector<std::size_t>{4, 6, 4});
  CHECK_THROWS_AS(gen_linial_meshulam(4, 4, 0.5, {1, 0}), DomainError);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto y = gen_linial_meshulam(12, 3, 0.1, {4, s});
    CHECK(y.count(0) == 12);
    CHECK(y.count(1) == 66);
    CHECK(y.count(2) == 220);
  }
  // d = 1 is G(n, p) draw for draw.
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(gen_linial_meshulam(30, 1, 0.2, {8, s}) == gen_gnp(30, 0.2, {8, s}));
}

TEST_CASE("vertex link generator matches extracted links") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const RngSeed seed{6, s};
    const auto y = gen_linial_meshulam(12, 2, 0.3, seed);
    for (Vertex v : {0u, 5u, 11u}) CHECK(lm_vertex_link(12, 2, 0.3, seed, v) == link(y, Simplex{v}));
    const auto y3 = gen_linial_meshulam(9, 3, 0.4, seed);
    CHECK(lm_vertex_link(9, 3, 0.4, seed, 4) == link(y3, Simplex{4}));
  }
}

TEST_CASE("clique complexes") {
  const auto k4 = gen_gnp(4, 1, {0, 0});
  CHECK(clique_complex(k4, 3).f_vector().counts == std::vector<std::size_t>{4, 6, 4, 1});
  const auto c3 = SimplicialComplex::from_facets(std::vector<Simplex>{{0, 1}, {1, 2}, {0, 2}});
  CHECK(clique_complex(c3, 2).count(2) == 1);
  const auto c4 = SimplicialComplex::from_facets(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto x = clique_complex(c4, 3);
  CHECK(x.dimension() == 1);
  CHECK(betti_numbers(x, Field::f2())[1] == 1);
  CHECK(gen_clique_complex(7, 1, 3, {2, 0}).f_vector().counts == std::vector<std::size_t>{7, 21, 35, 35});

  // Mean f_2 of X(50, 0.3).
  const std::size_t trials = 10000;
  double sum = 0, sum2 = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double f2 = static_cast<double>(gen_clique_complex(50, 0.3, 2, {12, t}).count(2));
    sum += f2;
    sum2 += f2 * f2;
  }
  const double mean = sum / trials, sd = std::sqrt(sum2 / trials - mean * mean);
  CHECK(std::abs(mean - 19600 * 0.027) < 3 * sd / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("multiparameter model") {
  CHECK(gen_multiparameter(6, {0}, {1, 0}).f_vector().counts == std::vector<std::size_t>{6});
  CHECK_THROWS_AS(gen_multiparameter(6, {}, {1, 0}), DomainError);
  CHECK_THROWS_AS(gen_multiparameter(6, {0.5, 2.0}, {1, 0}), DomainError);
  // All-ones gives the full simplex skeleton.
  CHECK(gen_multiparameter(6, {1, 1, 1}, {1, 0}).f_vector().counts == std::vector<std::size_t>{6, 15, 20, 15});
  // Each face has its whole boundary.
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto c = gen_multiparameter(10, {0.6, 0.5, 0.7}, {5, s});
    CHECK(c == SimplicialComplex::from_layers({c.layer(0), c.dimension() >= 1 ? c.layer(1) : std::vector<Vertex>{},
                                               c.dimension() >= 2 ? c.layer(2) : std::vector<Vertex>{},
                                               c.dimension() >= 3 ? c.layer(3) : std::vector<Vertex>{}},
                                              true));
  }
}

TEST_CASE("multiparameter reproduces Y_2 and X(n,p) f-vector laws") {
  const std::size_t trials = 3000;
  std::vector<double> a, b, c, d;
  for (std::uint64_t t = 0; t < trials; ++t) {
    a.push_back(static_cast<double>(gen_multiparameter(12, {1, 0.2}, {21, t}).count(2)));
    b.push_back(static_cast<double>(gen_linial_meshulam(12, 2, 0.2, {22, t}).count(2)));
    const auto m = gen_multiparameter(14, {0.4, 1, 1}, {23, t});
    const auto x = gen_clique_complex(14, 0.4, 3, {24, t});
    c.push_back(static_cast<double>(m.count(2)) + 1000.0 * static_cast<double>(m.count(1)));
    d.push_back(static_cast<double>(x.count(2)) + 1000.0 * static_cast<double>(x.count(1)));
  }
  CHECK(stats::two_sample_chi2(a, b) > 0.01);
  CHECK(stats::two_sample_chi2(c, d) > 0.01);
}

TEST_CASE("point clouds") {
  const auto u = gen_points(1000, 2, PointDistribution::kUniformCube, {1, 0});
  const auto g = gen_points(1000, 2, PointDistribution::kStandardGaussian, {1, 0});
  for (double x : u.coords) CHECK((x >= 0 && x <= 1));
  for (std::size_t j = 0; j < 2; ++j) {
    double su = 0, sg = 0, sg2 = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      su += u.coord(i, j);
      sg += g.coord(i, j);
      sg2 += g.coord(i, j) * g.coord(i, j);
    }
    CHECK(std::abs(su / 1000 - 0.5) < 3 * std::sqrt(1.0 / 12 / 1000));
    CHECK(std::abs(sg / 1000) < 3 * std::sqrt(1.0 / 1000));
    CHECK(std::abs(sg2 / 1000 - 1) < 3 * std::sqrt(2.0 / 1000));
  }
  CHECK(gen_points(5, 3, PointDistribution::kStandardGaussian, {4, 4}).coords ==
        gen_points(5, 3, PointDistribution::kStandardGaussian, {4, 4}).coords);
  CHECK_THROWS_AS(parse_distribution("cauchy"), DomainError);
  CHECK_THROWS_AS(gen_points(0, 2, PointDistribution::kUniformCube, {1, 0}), DomainError);

  std::stringstream ss;
  write_points_csv(ss, g);
  const auto back = read_points_csv(ss);
  CHECK(back.coords == g.coords);
  std::stringstream bad("1,2\n3\n");
  CHECK_THROWS_AS(read_points_csv(bad), MalformedInput);
}

namespace {

PointCloud hexagon(double side) {
  PointCloud c{6, 2, PointDistribution::kUniformCube, {}};
  for (int i = 0; i < 6; ++i) {
    c.coords.push_back(side * std::cos(M_PI / 3 * i));
    c.coords.push_back(side * std::sin(M_PI / 3 * i));
  }
  return c;
}

}  // namespace

TEST_CASE("vietoris-rips") {
  const auto pts = gen_points(30, 2, PointDistribution::kUniformCube, {2, 0});
  CHECK(vietoris_rips(pts, 0, 2).f_vector().counts == std::vector<std::size_t>{30});
  CHECK(vietoris_rips(pts, 2, 2).f_vector().counts == std::vector<std::size_t>{30, 435, 4060});
  const auto hex = vietoris_rips(hexagon(1.0), 1.0 + 1e-12, 2);
  CHECK(hex.f_vector().counts == std::vector<std::size_t>{6, 6});
  CHECK(betti_numbers(hex, Field::rational())[1] == 1);
  CHECK_THROWS_AS(vietoris_rips(pts, -1, 2), DomainError);
}

TEST_CASE("enclosing balls against brute force") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t dim = 1 + s % 3;
    const auto pts = gen_points(dim + 1 + s % 3, dim, PointDistribution::kStandardGaussian, {31, s});
    std::vector<Vertex> all(pts.n);
    for (std::size_t i = 0; i < pts.n; ++i) all[i] = static_cast<Vertex>(i);
    const Ball b = min_enclosing_ball(pts, all);
    // Contains every point.
    for (std::size_t i = 0; i < pts.n; ++i) {
      double d2 = 0;
      for (std::size_t t = 0; t < dim; ++t) d2 += std::pow(pts.coord(i, t) - b.center[t], 2);
      CHECK(std::sqrt(d2) <= b.radius + 1e-9);
    }
    // Minimal: no smaller ball around any circumcentre of a subset does better.
    double best = std::numeric_limits<double>::infinity();
    const std::size_t subsets = 1u << pts.n;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::vector<Vertex> sub;
      for (std::size_t i = 0; i < pts.n; ++i)
        if (mask >> i & 1) sub.push_back(static_cast<Vertex>(i));
      if (sub.size() > dim + 1) continue;
      // Circumcentre of sub within its affine hull, via the normal equations.
      const std::size_t m = sub.size() - 1;
      std::vector<double> center(pts.point(sub[0]), pts.point(sub[0]) + dim);
      if (m > 0) {
        std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            double dot = 0;
            for (std::size_t t = 0; t < dim; ++t)
              dot += (pts.coord(sub[i + 1], t) - center[t]) * (pts.coord(sub[j + 1], t) - center[t]);
            a[i][j] = dot;
          }
          a[i][m] = a[i][i] / 2;
        }
        for (std::size_t i = 0; i < m; ++i) {
          std::size_t p = i;
          for (std::size_t r = i; r < m; ++r)
            if (std::abs(a[r][i]) > std::abs(a[p][i])) p = r;
          std::swap(a[i], a[p]);
          for (std::size_t r = 0; r < m; ++r)
            if (r != i) {
              const double f = a[r][i] / a[i][i];
              for (std::size_t c = i; c <= m; ++c) a[r][c] -= f * a[i][c];
            }
        }
        std::vector<double> base = center;
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t t = 0; t < dim; ++t) center[t] += a[j][m] / a[j][j] * (pts.coord(sub[j + 1], t) - base[t]);
      }
      double radius = 0;
      for (std::size_t i = 0; i < pts.n; ++i) {
        double d2 = 0;
        for (std::size_t t = 0; t < dim; ++t) d2 += std::pow(pts.coord(i, t) - center[t], 2);
        radius = std::max(radius, std::sqrt(d2));
      }
      best = std::min(best, radius);
    }
    CHECK(b.radius == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("cech complexes") {
  const double s = 1.0;
  PointCloud tri{3, 2, PointDistribution::kUniformCube, {0, 0, s, 0, s / 2, s * std::sqrt(3.0) / 2}};
  const double circ = s / std::sqrt(3.0);
  CHECK(cech(tri, 2 * circ, 2).count(2) == 1);
  CHECK(cech(tri, 2 * circ - 1e-6, 2).count(2) == 0);
  CHECK(cech(tri, s, 2).count(1) == 3);
  // Grid check: the three balls of radius r/2 share a point iff the 2-face exists.
  for (double r : {1.1, 1.13, 1.16, 1.2}) {
    bool common = false;
    for (int i = 0; i <= 400 && !common; ++i)
      for (int j = 0; j <= 400 && !common; ++j) {
        const double x = i / 400.0, y = j / 400.0;
        bool in_all = true;
        for (int v = 0; v < 3; ++v) in_all = in_all && std::hypot(x - tri.coords[2 * v], y - tri.coords[2 * v + 1]) <= r / 2;
        common = in_all;
      }
    CHECK(common == (cech(tri, r, 2).count(2) == 1));
  }
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto pts = gen_points(25, 2, PointDistribution::kUniformCube, {7, t});
    const auto c = cech(pts, 0.35, 3), v = vietoris_rips(pts, 0.35, 3);
    CHECK(c.skeleton(1) == v.skeleton(1));
    for (int k = 2; k <= c.dimension(); ++k)
      for (std::size_t i = 0; i < c.count(k); ++i) CHECK(v.index_of(c.face(k, i)).has_value());
  }
}
