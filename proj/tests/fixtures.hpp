#pragma once

#include <vector>

#include "randcx/complex.hpp"

namespace fixtures {

using randcx::Simplex;
using randcx::SimplicialComplex;

inline SimplicialComplex make(const std::vector<Simplex>& facets) { return SimplicialComplex::from_facets(facets); }

inline SimplicialComplex tetra_boundary() { return make({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }
inline SimplicialComplex hollow_triangle() { return make({{0, 1}, {1, 2}, {0, 2}}); }
inline SimplicialComplex full_triangle() { return make({{0, 1, 2}}); }

// Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline SimplicialComplex torus7() {
  std::vector<Simplex> f;
  for (randcx::Vertex i = 0; i < 7; ++i) {
    f.push_back(Simplex({i, (i + 1) % 7, (i + 3) % 7}));
    f.push_back(Simplex({i, (i + 2) % 7, (i + 3) % 7}));
  }
  return make(f);
}

// Six-vertex projective plane (hemi-icosahedron).
inline SimplicialComplex rp2() {
  return make({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
               {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

}  // namespace fixtures
