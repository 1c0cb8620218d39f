#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles/linear_algebra.hpp"
#include "randcx/errors.hpp"
#include "randcx/homology.hpp"
#include "randcx/models.hpp"

using namespace randcx;

namespace {

oracle::Dense to_dense(const SparseMatrix& m) {
  oracle::Dense d(m.rows, std::vector<long>(m.cols, 0));
  for (std::size_t c = 0; c < m.cols; ++c)
    for (std::size_t e = m.col_ptr[c]; e < m.col_ptr[c + 1]; ++e) d[m.row_idx[e]][c] = m.values[e];
  return d;
}

SparseMatrix from_dense(const oracle::Dense& d) {
  SparseMatrix m;
  m.rows = d.size();
  m.cols = d.empty() ? 0 : d[0].size();
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (std::size_t r = 0; r < m.rows; ++r)
      if (d[r][c] != 0) {
        m.row_idx.push_back(static_cast<std::uint32_t>(r));
        m.values.push_back(d[r][c]);
      }
    m.col_ptr.push_back(m.row_idx.size());
  }
  return m;
}

std::vector<SimplicialComplex> random_complexes(std::size_t count) {
  std::vector<SimplicialComplex> out;
  for (std::uint64_t s = 0; out.size() < count; ++s) {
    const RngSeed seed{77, s};
    switch (s % 5) {
      case 0: out.push_back(gen_linial_meshulam(8, 2, 0.3, seed)); break;
      case 1: out.push_back(gen_clique_complex(10, 0.5, 3, seed)); break;
      case 2: out.push_back(gen_multiparameter(9, {0.7, 0.6, 0.5}, seed)); break;
      case 3: out.push_back(vietoris_rips(gen_points(12, 2, PointDistribution::kUniformCube, seed), 0.45, 3)); break;
      default: out.push_back(gen_linial_meshulam(7, 3, 0.4, seed)); break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("field parsing") {
  CHECK(Field::parse("f2") == Field::f2());
  CHECK(Field::parse("fp:7").prime == 7);
  CHECK(Field::parse("rational").kind == FieldKind::kRational);
  CHECK_THROWS_AS(Field::parse("fp:8"), DomainError);
  CHECK_THROWS_AS(Field::parse("reals"), DomainError);
  CHECK(Field::fp(kLargePrime).prime == kLargePrime);
}

TEST_CASE("boundary matrices") {
  const auto hollow = fixtures::hollow_triangle();
  const auto d1 = boundary_matrix(hollow, 1, CoefficientDomain::kInteger);
  CHECK(d1.rows == 3);
  CHECK(d1.cols == 3);
  CHECK(matrix_rank(d1, Field::rational()).rank == 2);

  const auto d2 = boundary_matrix(fixtures::full_triangle(), 2, CoefficientDomain::kInteger);
  CHECK(d2.cols == 1);
  // rows {0,1},{0,2},{1,2}
  CHECK(d2.at(0, 0) == 1);
  CHECK(d2.at(1, 0) == -1);
  CHECK(d2.at(2, 0) == 1);

  CHECK_THROWS_AS(boundary_matrix(hollow, 2, CoefficientDomain::kF2), DomainError);
  CHECK_THROWS_AS(boundary_matrix(hollow, 0, CoefficientDomain::kF2), DomainError);

  // Matches the independent dense construction.
  const auto torus = fixtures::torus7();
  CHECK(to_dense(boundary_matrix(torus, 2, CoefficientDomain::kInteger)) == oracle::boundary(torus, 2));
}

TEST_CASE("boundary of boundary vanishes") {
  for (const auto& c : random_complexes(60)) {
    for (int k = 2; k <= c.dimension(); ++k) {
      const auto a = to_dense(boundary_matrix(c, k - 1, CoefficientDomain::kInteger));
      const auto b = to_dense(boundary_matrix(c, k, CoefficientDomain::kInteger));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j) {
          long s = 0;
          for (std::size_t t = 0; t < b.size(); ++t) s += a[i][t] * b[t][j];
          REQUIRE(s == 0);
        }
    }
  }
}

TEST_CASE("rank engine agrees with dense elimination on random matrices") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + gen() % 16, c = 1 + gen() % 16;
    // Sparse draws split into several blocks after peeling.
    const double density = 0.05 + 0.85 * static_cast<double>(gen() % 100) / 100.0;
    oracle::Dense d(r, std::vector<long>(c, 0));
    for (auto& row : d)
      for (auto& x : row)
        if (static_cast<double>(gen() % 1000) / 1000.0 < density) x = static_cast<long>(gen() % 7) - 3;
    const auto m = from_dense(d);
    CHECK(matrix_rank(m, Field::rational()).rank == oracle::rank_rational(d));
    CHECK(matrix_rank(m, Field::f2()).rank == oracle::rank_mod_p(d, 2));
    CHECK(matrix_rank(m, Field::fp(5)).rank == oracle::rank_mod_p(d, 5));
    CHECK(matrix_rank(m, Field::fp(kLargePrime)).rank == oracle::rank_rational(d));

    const auto full = matrix_rank(m, Field::rational());
    // Pivot columns are a basis of the column space.
    oracle::Dense sub(r, std::vector<long>());
    for (auto col : full.pivot_columns)
      for (std::size_t i = 0; i < r; ++i) sub[i].push_back(d[i][col]);
    CHECK(oracle::rank_rational(sub) == full.rank);
    CHECK(full.pivot_columns.size() == full.rank);

    // Early exit decides the comparison with the target correctly.
    const std::size_t target = 1 + gen() % 6;
    const auto t = matrix_rank(m, Field::rational(), {target, nullptr});
    CHECK((t.rank >= target) == (full.rank >= target));

    RankOptions independent;
    independent.stop_at_dependent = true;
    for (Field f : {Field::rational(), Field::f2(), Field::fp(kLargePrime)}) {
      const auto s = matrix_rank(m, f, independent);
      CHECK((s.exact && s.rank == c) == (matrix_rank(m, f).rank == c));
    }
  }
}

TEST_CASE("named complexes") {
  const auto sphere = fixtures::tetra_boundary();
  CHECK(betti_numbers(sphere, Field::rational()).betti == std::vector<std::size_t>{1, 0, 1});
  CHECK(betti_numbers(sphere, Field::rational(), true).betti == std::vector<std::size_t>{0, 0, 1});

  const auto torus = fixtures::torus7();
  CHECK(oracle::betti(torus) == std::vector<std::size_t>{1, 2, 1});
  CHECK(betti_numbers(torus, Field::rational()).betti == std::vector<std::size_t>{1, 2, 1});
  CHECK(betti_numbers(torus, Field::f2()).betti == std::vector<std::size_t>{1, 2, 1});

  const auto rp2 = fixtures::rp2();
  CHECK(rp2.f_vector().counts == std::vector<std::size_t>{6, 15, 10});
  CHECK(oracle::betti(rp2, 2) == std::vector<std::size_t>{1, 1, 1});
  CHECK(oracle::betti(rp2) == std::vector<std::size_t>{1, 0, 0});
  CHECK(betti_numbers(rp2, Field::f2()).betti == std::vector<std::size_t>{1, 1, 1});
  CHECK(betti_numbers(rp2, Field::rational()).betti == std::vector<std::size_t>{1, 0, 0});
  CHECK(betti_number(rp2, 1, Field::f2()) == 1);
  CHECK_FALSE(betti_is_zero(rp2, 1, Field::f2()));
  CHECK(betti_is_zero(rp2, 1, Field::rational()));
  CHECK(betti_is_zero(rp2, 2, Field::fp(3)));

  CHECK(betti_numbers(SimplicialComplex{}, Field::f2()).betti.empty());
}

TEST_CASE("integer homology") {
  const auto rp2 = integer_homology(fixtures::rp2());
  REQUIRE(rp2.groups.size() == 3);
  CHECK(rp2.groups[0] == HomologyGroup{1, {}});
  CHECK(rp2.groups[1] == HomologyGroup{0, {2}});
  CHECK(rp2.groups[2] == HomologyGroup{0, {}});

  const auto sphere = integer_homology(fixtures::tetra_boundary());
  CHECK(sphere.groups[2] == HomologyGroup{1, {}});
  CHECK(sphere.groups[1] == HomologyGroup{0, {}});

  const auto torus = integer_homology(fixtures::torus7());
  CHECK(torus.groups[1] == HomologyGroup{2, {}});
  CHECK(torus.groups[2] == HomologyGroup{1, {}});

  CHECK_THROWS_AS(integer_homology(fixtures::torus7(), 10), ResourceError);
}

TEST_CASE("smith invariants match determinantal divisors") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + gen() % 5, c = 1 + gen() % 5;
    oracle::Dense d(r, std::vector<long>(c, 0));
    for (auto& row : d)
      for (auto& x : row)
        if (gen() % 3) x = static_cast<long>(gen() % 13) - 6;
    const auto inv = smith_invariants(from_dense(d));
    CHECK(inv.size() == oracle::rank_rational(d));
    for (std::size_t i = 1; i < inv.size(); ++i) CHECK(inv[i] % inv[i - 1] == 0);
    mpz_class prod = 1;
    for (std::size_t k = 1; k <= inv.size(); ++k) {
      prod *= static_cast<unsigned long>(inv[k - 1]);
      CHECK(prod == oracle::determinantal_divisor(d, k));
    }
  }
}

TEST_CASE("field betti numbers match the dense oracle") {
  for (const auto& c : random_complexes(80)) {
    CHECK(betti_numbers(c, Field::rational()).betti == oracle::betti(c));
    CHECK(betti_numbers(c, Field::f2()).betti == oracle::betti(c, 2));
    CHECK(betti_numbers(c, Field::fp(3)).betti == oracle::betti(c, 3));
  }
}

TEST_CASE("euler-poincare and universal coefficients") {
  for (const auto& c : random_complexes(100)) {
    const auto chi = euler_characteristic(c);
    for (Field f : {Field::f2(), Field::fp(3), Field::fp(kLargePrime), Field::rational()}) {
      const auto b = betti_numbers(c, f).betti;
      std::int64_t alt = 0;
      for (std::size_t i = 0; i < b.size(); ++i) alt += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(b[i]);
      CHECK(alt == chi);
    }
    const auto q = betti_numbers(c, Field::rational()).betti;
    const auto h = integer_homology(c);
    for (int k = 0; k <= c.dimension(); ++k) {
      const auto ku = static_cast<std::size_t>(k);
      CHECK(h.groups[ku].free_rank == q[ku]);
      const bool clean = h.groups[ku].torsion.empty() && (k == 0 || h.groups[ku - 1].torsion.empty());
      for (std::uint64_t p : {2, 3, 5, 7}) {
        const auto bp = betti_numbers(c, Field::fp(p)).betti;
        CHECK(bp[ku] >= q[ku]);
        if (clean) CHECK(bp[ku] == q[ku]);
      }
    }
    for (int k = 1; k <= c.dimension(); ++k) {
      const auto m = boundary_matrix(c, k, CoefficientDomain::kInteger);
      const auto inv = smith_invariants(m);
      for (std::uint64_t p : {2, 3, 5, 7}) {
        const bool divides = std::any_of(inv.begin(), inv.end(), [p](auto t) { return t % p == 0; });
        if (!divides) CHECK(matrix_rank(m, Field::fp(p)).rank == inv.size());
      }
    }
  }
}

TEST_CASE("betti_is_zero agrees with full profiles") {
  for (const auto& c : random_complexes(100))
    for (int k = 0; k <= c.dimension() + 1; ++k) {
      CHECK(betti_is_zero(c, k, Field::f2()) == (betti_numbers(c, Field::f2())[static_cast<std::size_t>(k)] == 0));
      CHECK(betti_number(c, k, Field::rational()) == betti_numbers(c, Field::rational())[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("large rational requests switch to the large prime") {
  const auto y = gen_linial_meshulam(20, 2, 0.4, {1, 0});
  REQUIRE(y.total_faces() >= kExactRationalLimit);
  CHECK(betti_numbers(y, Field::rational()).field == Field::fp(kLargePrime));
  CHECK(betti_numbers(fixtures::rp2(), Field::rational()).field == Field::rational());
}
