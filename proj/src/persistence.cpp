#include "randcx/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "randcx/errors.hpp"

namespace randcx {

namespace {

void check_values(const SimplicialComplex& c, const std::vector<std::vector<double>>& values) {
  if (values.size() != static_cast<std::size_t>(c.dimension() + 1))
    throw MalformedInput("filtration: need one value list per dimension");
  for (int k = 0; k <= c.dimension(); ++k) {
    const auto& v = values[static_cast<std::size_t>(k)];
    if (v.size() != c.count(k)) throw MalformedInput("filtration: value count does not match face count in degree " + std::to_string(k));
    for (double x : v)
      if (!std::isfinite(x)) throw MalformedInput("filtration: non-finite value");
  }
}

}  // namespace

Filtration Filtration::from_values(SimplicialComplex complex, std::vector<std::vector<double>> values, double cap) {
  check_values(complex, values);
  std::vector<FaceRef> order;
  order.reserve(complex.total_faces());
  for (int k = 0; k <= complex.dimension(); ++k)
    for (std::size_t i = 0; i < complex.count(k); ++i) order.push_back({k, static_cast<std::uint32_t>(i)});
  // Layers are lexicographic, so index order breaks remaining ties.
  std::stable_sort(order.begin(), order.end(), [&](FaceRef a, FaceRef b) {
    const double va = values[static_cast<std::size_t>(a.dim)][a.index], vb = values[static_cast<std::size_t>(b.dim)][b.index];
    if (va != vb) return va < vb;
    return a.dim < b.dim;
  });
  return from_sequence(std::move(complex), std::move(order), std::move(values), cap);
}

Filtration Filtration::from_sequence(SimplicialComplex complex, std::vector<FaceRef> order,
                                     std::vector<std::vector<double>> values, double cap) {
  check_values(complex, values);
  Filtration f;
  f.complex_ = std::move(complex);
  f.values_ = std::move(values);
  f.order_ = std::move(order);
  f.cap_ = cap;
  f.validate();
  return f;
}

void Filtration::validate() {
  const int dim = complex_.dimension();
  if (order_.size() != complex_.total_faces()) throw MalformedInput("filtration: order must list every face exactly once");
  auto& pos = position_;
  pos.assign(static_cast<std::size_t>(dim + 1), {});
  for (int k = 0; k <= dim; ++k) pos[static_cast<std::size_t>(k)].assign(complex_.count(k), std::numeric_limits<std::size_t>::max());
  for (std::size_t t = 0; t < order_.size(); ++t) {
    const auto f = order_[t];
    if (f.dim < 0 || f.dim > dim || f.index >= complex_.count(f.dim)) throw MalformedInput("filtration: face reference out of range");
    auto& slot = pos[static_cast<std::size_t>(f.dim)][f.index];
    if (slot != std::numeric_limits<std::size_t>::max()) throw MalformedInput("filtration: face listed twice");
    slot = t;
    if (t > 0 && value(order_[t - 1]) > value(f)) throw MalformedInput("filtration: values decrease along the order");
  }
  std::vector<Vertex> facet;
  for (int k = 1; k <= dim; ++k) {
    for (std::size_t i = 0; i < complex_.count(k); ++i) {
      const auto face = complex_.face(k, i);
      for (std::size_t drop = 0; drop < face.size(); ++drop) {
        facet.clear();
        for (std::size_t t = 0; t < face.size(); ++t)
          if (t != drop) facet.push_back(face[t]);
        const auto j = *complex_.index_of(facet);
        if (pos[static_cast<std::size_t>(k - 1)][j] > pos[static_cast<std::size_t>(k)][i])
          throw MalformedInput("filtration: a face precedes its boundary");
      }
    }
  }
  if (!order_.empty() && cap_ < value(order_.back())) throw MalformedInput("filtration: cap below the last appearance value");
}

namespace {

std::vector<std::vector<double>> diameters(const SimplicialComplex& c, const PointCloud& pts) {
  std::vector<std::vector<double>> values(static_cast<std::size_t>(c.dimension() + 1));
  for (int k = 0; k <= c.dimension(); ++k) {
    auto& v = values[static_cast<std::size_t>(k)];
    v.resize(c.count(k), 0.0);
    if (k == 0) continue;
    for (std::size_t i = 0; i < c.count(k); ++i) {
      const auto f = c.face(k, i);
      double d2 = 0.0;
      for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t b = a + 1; b < f.size(); ++b) d2 = std::max(d2, pts.distance2(f[a], f[b]));
      v[i] = std::sqrt(d2);
    }
  }
  return values;
}

}  // namespace

Filtration rips_filtration(const PointCloud& points, double max_r, int max_dim) {
  auto c = vietoris_rips(points, max_r, max_dim);
  auto values = diameters(c, points);
  return Filtration::from_values(std::move(c), std::move(values), max_r);
}

Filtration cech_filtration(const PointCloud& points, double max_r, int max_dim) {
  auto c = cech(points, max_r, max_dim);
  std::vector<std::vector<double>> values(static_cast<std::size_t>(c.dimension() + 1));
  std::vector<Vertex> facet;
  for (int k = 0; k <= c.dimension(); ++k) {
    auto& v = values[static_cast<std::size_t>(k)];
    v.resize(c.count(k), 0.0);
    if (k == 0) continue;
    for (std::size_t i = 0; i < c.count(k); ++i) {
      const auto f = c.face(k, i);
      double value = k == 1 ? std::sqrt(points.distance2(f[0], f[1])) : 2.0 * min_enclosing_ball(points, f).radius;
      // Keep values monotone despite rounding in the ball solver.
      for (std::size_t drop = 0; drop < f.size() && k > 1; ++drop) {
        facet.clear();
        for (std::size_t t = 0; t < f.size(); ++t)
          if (t != drop) facet.push_back(f[t]);
        value = std::max(value, values[static_cast<std::size_t>(k - 1)][*c.index_of(facet)]);
      }
      v[i] = std::min(value, max_r);
    }
  }
  return Filtration::from_values(std::move(c), std::move(values), max_r);
}

double PersistencePair::persistence() const {
  return birth > 0.0 ? death / birth : std::numeric_limits<double>::infinity();
}

namespace {

using Column = std::vector<std::uint32_t>;  // sorted positions, low = back()

// Boundary column of face (k, i) as sorted filtration positions.
Column boundary_column(const Filtration& f, int k, std::uint32_t i, std::vector<Vertex>& facet) {
  const auto& c = f.complex();
  const auto face = c.face(k, i);
  Column col;
  col.reserve(face.size());
  for (std::size_t drop = 0; drop < face.size(); ++drop) {
    facet.clear();
    for (std::size_t t = 0; t < face.size(); ++t)
      if (t != drop) facet.push_back(face[t]);
    col.push_back(static_cast<std::uint32_t>(f.position({k - 1, static_cast<std::uint32_t>(*c.index_of(facet))})));
  }
  std::sort(col.begin(), col.end());
  return col;
}

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(), std::back_inserter(scratch));
  target.swap(scratch);
}

// Reduces the degree-k boundary columns in filtration order. Returns, per
// column position, the low row position (or -1), keeping reduced columns in
// `reduced` keyed by their low. Stops early once `stop_after` pivots exist.
struct Reduction {
  std::unordered_map<std::uint32_t, std::uint32_t> column_of_low;  // low row -> column position
  std::vector<std::uint32_t> negative_rows;                        // low rows found
};

Reduction reduce(const Filtration& f, int k, std::size_t stop_after) {
  Reduction red;
  if (k < 1 || k > f.complex().dimension()) return red;
  std::unordered_map<std::uint32_t, Column> stored;
  std::vector<Vertex> facet;
  Column scratch;
  for (std::size_t t = 0; t < f.order().size() && red.negative_rows.size() < stop_after; ++t) {
    const auto ref = f.order()[t];
    if (ref.dim != k) continue;
    Column col = boundary_column(f, k, ref.index, facet);
    while (!col.empty()) {
      const auto it = red.column_of_low.find(col.back());
      if (it == red.column_of_low.end()) break;
      add_into(col, stored.at(it->second), scratch);
    }
    if (col.empty()) continue;
    red.column_of_low.emplace(col.back(), static_cast<std::uint32_t>(t));
    red.negative_rows.push_back(col.back());
    stored.emplace(static_cast<std::uint32_t>(t), std::move(col));
  }
  return red;
}

}  // namespace

std::vector<PersistencePair> persistence_diagram(const Filtration& f, int k) {
  std::vector<PersistencePair> out;
  const auto& c = f.complex();
  if (k < 0 || k > c.dimension()) return out;
  // Positive k-faces: those whose boundary column reduces to zero.
  std::vector<bool> negative(c.count(k), false);
  if (k >= 1) {
    const auto below = reduce(f, k, std::numeric_limits<std::size_t>::max());
    for (const auto& [low, col] : below.column_of_low) negative[f.order()[col].index] = true;
  }
  std::size_t positive = 0;
  for (bool n : negative) positive += !n;
  const auto above = reduce(f, k + 1, positive);
  std::vector<bool> paired(c.count(k), false);
  for (const auto& [low, col] : above.column_of_low) {
    const auto born = f.order()[low];
    paired[born.index] = true;
    const double b = f.value(born), d = f.value(f.order()[col]);
    if (d > b) out.push_back({k, b, d, false});
  }
  for (std::uint32_t i = 0; i < c.count(k); ++i)
    if (!negative[i] && !paired[i]) {
      const double b = f.value({k, i});
      if (f.cap() > b) out.push_back({k, b, f.cap(), true});
    }
  std::sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death != b.death) return a.death < b.death;
    return a.censored < b.censored;
  });
  return out;
}

double max_persistence(const std::vector<PersistencePair>& diagram) {
  double best = 0.0;
  for (const auto& p : diagram)
    if (!p.censored && p.birth > 0.0) best = std::max(best, p.death / p.birth);
  return best;
}

double max_persistence(const Filtration& filtration, int k) { return max_persistence(persistence_diagram(filtration, k)); }

}  // namespace randcx
