#include "randcx/collapse.hpp"

#include <functional>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>

#include "randcx/errors.hpp"

namespace randcx {

namespace {

// Facet indices of every d-face and the transposed coface lists.
struct Incidence {
  std::size_t width = 0;
  std::vector<std::uint32_t> facets;  // d-face t -> width entries
  std::vector<std::size_t> cof_ptr;
  std::vector<std::uint32_t> cofaces;
};

Incidence incidence(const SimplicialComplex& c, int d) {
  Incidence inc;
  inc.width = static_cast<std::size_t>(d) + 1;
  const std::size_t nd = c.count(d), nf = c.count(d - 1);
  inc.facets.resize(nd * inc.width);
  std::vector<Vertex> facet;
  for (std::size_t t = 0; t < nd; ++t) {
    const auto f = c.face(d, t);
    for (std::size_t j = 0; j < inc.width; ++j) {
      facet.assign(f.begin(), f.end());
      facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(j));
      inc.facets[t * inc.width + j] = static_cast<std::uint32_t>(*c.index_of(facet));
    }
  }
  inc.cof_ptr.assign(nf + 1, 0);
  for (auto g : inc.facets) ++inc.cof_ptr[g + 1];
  for (std::size_t i = 0; i < nf; ++i) inc.cof_ptr[i + 1] += inc.cof_ptr[i];
  inc.cofaces.resize(inc.facets.size());
  std::vector<std::size_t> fill(inc.cof_ptr.begin(), inc.cof_ptr.end() - 1);
  for (std::size_t t = 0; t < nd; ++t)
    for (std::size_t j = 0; j < inc.width; ++j) inc.cofaces[fill[inc.facets[t * inc.width + j]]++] = static_cast<std::uint32_t>(t);
  return inc;
}

void check_degree(const SimplicialComplex& c, int d) {
  if (d < 1) throw DomainError("collapse: d must be at least 1");
  if (c.dimension() > d)
    throw DomainError("collapse: complex has dimension " + std::to_string(c.dimension()) + " above d = " + std::to_string(d));
}

}  // namespace

CollapseReport collapse(const SimplicialComplex& complex, int d) {
  check_degree(complex, d);
  CollapseReport report;
  report.residual = complex.f_vector();
  if (complex.dimension() < d) {
    report.collapsed = true;
    return report;
  }
  const auto inc = incidence(complex, d);
  const std::size_t nf = complex.count(d - 1);
  std::vector<std::size_t> cnt(nf);
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> free;
  for (std::size_t f = 0; f < nf; ++f) {
    cnt[f] = inc.cof_ptr[f + 1] - inc.cof_ptr[f];
    if (cnt[f] == 1) free.push(static_cast<std::uint32_t>(f));
  }
  std::vector<bool> alive(complex.count(d), true);
  while (!free.empty()) {
    const auto f = free.top();
    free.pop();
    if (cnt[f] != 1) continue;
    std::size_t e = inc.cof_ptr[f];
    while (!alive[inc.cofaces[e]]) ++e;
    const auto t = inc.cofaces[e];
    report.steps.push_back({complex.simplex(d - 1, f), complex.simplex(d, t)});
    alive[t] = false;
    for (std::size_t j = 0; j < inc.width; ++j) {
      const auto g = inc.facets[t * inc.width + j];
      if (--cnt[g] == 1) free.push(g);
    }
  }
  const auto removed = report.steps.size();
  report.residual.counts[static_cast<std::size_t>(d)] -= removed;
  report.residual.counts[static_cast<std::size_t>(d) - 1] -= removed;
  if (report.residual.counts.back() == 0) report.residual.counts.pop_back();
  report.collapsed = removed == complex.count(d);
  return report;
}

bool collapse_exhaustive(const SimplicialComplex& complex, int d) {
  check_degree(complex, d);
  if (complex.dimension() < d) return true;
  const std::size_t nd = complex.count(d);
  if (nd > kExhaustiveCollapseLimit)
    throw ResourceError("exhaustive collapse: " + std::to_string(nd) + " d-faces exceed the limit of " +
                        std::to_string(kExhaustiveCollapseLimit));
  const auto inc = incidence(complex, d);
  const std::size_t nf = complex.count(d - 1);
  std::vector<std::uint32_t> cof_mask(nf, 0);
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t e = inc.cof_ptr[f]; e < inc.cof_ptr[f + 1]; ++e) cof_mask[f] |= 1u << inc.cofaces[e];
  std::unordered_set<std::uint32_t> dead_ends;
  std::function<bool(std::uint32_t)> search = [&](std::uint32_t mask) {
    if (mask == 0) return true;
    if (dead_ends.count(mask)) return false;
    for (std::size_t f = 0; f < nf; ++f) {
      const std::uint32_t live = cof_mask[f] & mask;
      if (live != 0 && (live & (live - 1)) == 0 && search(mask & ~live)) return true;
    }
    dead_ends.insert(mask);
    return false;
  };
  return search(nd == 32 ? ~0u : (1u << nd) - 1);
}

SimplicialComplex apply_steps(const SimplicialComplex& complex, const std::vector<CollapseStep>& steps) {
  std::set<Simplex> faces;
  for (int k = 0; k <= complex.dimension(); ++k)
    for (std::size_t i = 0; i < complex.count(k); ++i) faces.insert(complex.simplex(k, i));
  for (const auto& s : steps) {
    if (!faces.count(s.free_face) || !faces.count(s.coface) || s.coface.dimension() != s.free_face.dimension() + 1 ||
        !s.free_face.is_subset_of(s.coface))
      throw DomainError("apply_steps: not a face pair of the current complex");
    std::size_t above = 0;
    for (const auto& f : faces)
      if (f.dimension() > s.free_face.dimension() && s.free_face.is_subset_of(f)) ++above;
    if (above != 1) throw DomainError("apply_steps: face is not free");
    faces.erase(s.free_face);
    faces.erase(s.coface);
  }
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(std::max(complex.dimension(), 0)) + 1);
  for (const auto& f : faces) {
    auto& l = layers[static_cast<std::size_t>(f.dimension())];
    l.insert(l.end(), f.begin(), f.end());
  }
  return SimplicialComplex::from_layers(std::move(layers));
}

}  // namespace randcx
