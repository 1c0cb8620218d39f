#pragma once

// Comparison of a Rips persistence diagram with persistent Betti numbers
// recomputed from the points.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "oracles/persistence.hpp"
#include "randcx/persistence.hpp"

namespace oracle {

/// Filtered faces with values recomputed from the points, not the library.
inline FilteredFaces rips_faces(const randcx::Filtration& f, const randcx::PointCloud& pts) {
  FilteredFaces out;
  const auto& c = f.complex();
  out.faces.resize(static_cast<std::size_t>(c.dimension() + 1));
  for (int k = 0; k <= c.dimension(); ++k)
    for (std::size_t i = 0; i < c.count(k); ++i) {
      const auto face = c.face(k, i);
      double d = 0;
      for (std::size_t a = 0; a < face.size(); ++a)
        for (std::size_t b = a + 1; b < face.size(); ++b) d = std::max(d, std::sqrt(pts.distance2(face[a], face[b])));
      out.faces[static_cast<std::size_t>(k)].push_back({d, {face.begin(), face.end()}});
    }
  return out;
}

/// Number of disagreements between the degree-k diagram and the brute-force
/// persistent Betti numbers: births per critical value, classes alive at the
/// cap, and the multiplicity of every finite (birth, death) pair.
inline long diagram_mismatches(const randcx::Filtration& f, const randcx::PointCloud& pts, int k) {
  const auto diagram = randcx::persistence_diagram(f, k);
  PersistentBetti pb(rips_faces(f, pts), k);
  const auto& crit = pb.critical();
  const long last = static_cast<long>(crit.size()) - 1;
  long bad = 0;
  auto index_of = [&](double v) -> long {
    const auto it = std::lower_bound(crit.begin(), crit.end(), v);
    if (it == crit.end() || *it != v) return -1;
    return static_cast<long>(it - crit.begin());
  };
  std::map<std::pair<long, long>, long> finite;
  std::map<long, long> censored, births;
  for (const auto& p : diagram) {
    const long i = index_of(p.birth);
    if (i < 0) {
      ++bad;
      continue;
    }
    ++births[i];
    if (p.censored) {
      bad += p.death != f.cap();
      ++censored[i];
    } else {
      const long j = index_of(p.death);
      if (j < 0) {
        ++bad;
        continue;
      }
      ++finite[{i, j}];
    }
  }
  for (long i = 0; i <= last; ++i) {
    bad += births[i] != pb.beta(i, i) - pb.beta(i - 1, i);
    // Classes alive at the last critical value are censored unless the cap is reached exactly.
    if (f.cap() > crit[static_cast<std::size_t>(last)])
      bad += censored[i] != pb.beta(i, last) - pb.beta(i - 1, last);
  }
  for (const auto& [key, mult] : finite) {
    const auto [i, j] = key;
    bad += mult != pb.beta(i, j - 1) - pb.beta(i, j) - pb.beta(i - 1, j - 1) + pb.beta(i - 1, j);
  }
  return bad;
}

}  // namespace oracle
