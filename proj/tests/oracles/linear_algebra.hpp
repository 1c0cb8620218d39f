#pragma once

// Dense reference linear algebra used only as a test oracle. Deliberately
// naive: full matrices, textbook elimination, no structural shortcuts.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "randcx/complex.hpp"

namespace oracle {

using Dense = std::vector<std::vector<long>>;

inline std::size_t rank_rational(const Dense& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<mpq_class>> a(m.size(), std::vector<mpq_class>(m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) a[i][j] = m[i][j];
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a[0].size() && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const mpq_class f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < a[0].size(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_mod_p(const Dense& m, long p) {
  if (m.empty()) return 0;
  Dense a = m;
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  auto inv = [p](long x) {
    long r = 1;
    for (long e = p - 2, b = x; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a[0].size() && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const long iv = inv(a[rank][col]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const long f = a[i][col] * iv % p;
      for (std::size_t j = col; j < a[0].size(); ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Determinant by cofactor-free Bareiss elimination.
inline mpz_class determinant(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// gcd of all r x r minors (the r-th determinantal divisor). Exponential;
/// tiny matrices only.
inline mpz_class determinantal_divisor(const Dense& m, std::size_t r) {
  const std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  mpz_class g = 0;
  std::vector<std::size_t> ri, ci;
  auto choose = [](std::size_t n, std::size_t k, auto&& visit) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      visit(idx);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) return;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  if (r == 0) return 1;
  if (r > rows || r > cols) return 0;
  choose(rows, r, [&](const std::vector<std::size_t>& rs) {
    choose(cols, r, [&](const std::vector<std::size_t>& cs) {
      std::vector<std::vector<mpz_class>> sub(r, std::vector<mpz_class>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i][j] = m[rs[i]][cs[j]];
      mpz_class d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

/// Boundary matrix built from explicit face sets, independent of the library's
/// indexing: rows and columns follow std::set order of vertex vectors.
inline Dense boundary(const randcx::SimplicialComplex& c, int k) {
  std::map<std::vector<randcx::Vertex>, std::size_t> rows;
  std::vector<std::vector<randcx::Vertex>> cols;
  for (std::size_t i = 0; i < c.count(k - 1); ++i) {
    auto f = c.face(k - 1, i);
    rows.emplace(std::vector<randcx::Vertex>(f.begin(), f.end()), 0);
  }
  std::size_t idx = 0;
  for (auto& [f, i] : rows) i = idx++;
  for (std::size_t i = 0; i < c.count(k); ++i) {
    auto f = c.face(k, i);
    cols.emplace_back(f.begin(), f.end());
  }
  Dense m(rows.size(), std::vector<long>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t drop = 0; drop < cols[j].size(); ++drop) {
      std::vector<randcx::Vertex> f;
      for (std::size_t t = 0; t < cols[j].size(); ++t)
        if (t != drop) f.push_back(cols[j][t]);
      m[rows.at(f)][j] = drop % 2 ? -1 : 1;
    }
  return m;
}

/// Betti numbers by dense elimination; p = 0 means rationals.
inline std::vector<std::size_t> betti(const randcx::SimplicialComplex& c, long p = 0) {
  std::vector<std::size_t> out;
  const int dim = c.dimension();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(dim) + 2, 0);
  for (int k = 1; k <= dim; ++k) {
    const Dense b = boundary(c, k);
    ranks[static_cast<std::size_t>(k)] = p == 0 ? rank_rational(b) : rank_mod_p(b, p);
  }
  for (int k = 0; k <= dim; ++k)
    out.push_back(c.count(k) - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k) + 1]);
  return out;
}

}  // namespace oracle
