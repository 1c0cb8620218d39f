#include "randcx/complex.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "randcx/errors.hpp"

namespace randcx {
namespace {

// Sorts a flat layer of width w lexicographically and removes duplicates.
void canonicalize_layer(std::vector<Vertex>& flat, std::size_t w, unsigned bits) {
  const std::size_t m = flat.size() / w;
  if (m == 0) return;
  if (w * bits <= 64) {
    std::vector<std::uint64_t> keys(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < w; ++j) key = (key << bits) | flat[i * w + j];
      keys[i] = key;
    }
    if (!std::is_sorted(keys.begin(), keys.end())) std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    flat.resize(keys.size() * w);
    const std::uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::uint64_t key = keys[i];
      for (std::size_t j = w; j-- > 0;) {
        flat[i * w + j] = static_cast<Vertex>(key & mask);
        key = bits == 64 ? 0 : key >> bits;
      }
    }
    return;
  }
  auto at = [&](std::size_t i) { return std::span<const Vertex>(flat.data() + i * w, w); };
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(at(a), at(b)); });
  std::vector<Vertex> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < m; ++i) {
    auto f = at(order[i]);
    if (!out.empty() && std::equal(f.begin(), f.end(), out.end() - static_cast<std::ptrdiff_t>(w))) continue;
    out.insert(out.end(), f.begin(), f.end());
  }
  flat = std::move(out);
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const FVector& f) {
  os << '(';
  for (std::size_t i = 0; i < f.counts.size(); ++i) os << (i ? "," : "") << f.counts[i];
  return os << ')';
}

SimplicialComplex SimplicialComplex::from_facets(std::span<const Simplex> facets, int max_dim) {
  std::vector<std::vector<Vertex>> layers;
  std::vector<std::size_t> pick;
  for (const Simplex& facet : facets) {
    if (facet.empty()) throw MalformedInput("facet must have at least one vertex");
    const std::size_t m = facet.size();
    std::size_t top = m;
    if (max_dim != kNoDimCap) top = std::min<std::size_t>(m, static_cast<std::size_t>(max_dim) + 1);
    if (layers.size() < top) layers.resize(top);
    for (std::size_t s = 1; s <= top; ++s) {
      pick.resize(s);
      std::iota(pick.begin(), pick.end(), 0);
      auto& out = layers[s - 1];
      while (true) {
        for (std::size_t i : pick) out.push_back(facet[i]);
        std::size_t i = s;
        while (i > 0 && pick[i - 1] == m - s + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  return from_layers(std::move(layers));
}

SimplicialComplex SimplicialComplex::from_layers(std::vector<std::vector<Vertex>> layers,
                                                 bool check_closure) {
  while (!layers.empty() && layers.back().empty()) layers.pop_back();
  Vertex bound = 0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const std::size_t w = k + 1;
    if (layers[k].size() % w != 0) throw MalformedInput("layer size is not a multiple of face width");
    for (std::size_t i = 0; i < layers[k].size(); ++i) {
      bound = std::max(bound, layers[k][i] + 1);
      if (i % w != 0 && layers[k][i] <= layers[k][i - 1]) {
        throw MalformedInput("face vertices are not strictly increasing");
      }
    }
  }
  const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(bound)));
  SimplicialComplex c;
  for (std::size_t k = 0; k < layers.size(); ++k) canonicalize_layer(layers[k], k + 1, bits);
  c.layers_ = std::move(layers);
  if (check_closure) {
    std::vector<Vertex> buf;
    for (int k = 1; k <= c.dimension(); ++k) {
      if (c.count(k) > 0 && c.count(k - 1) == 0) throw MalformedInput("complex is not downward closed");
      for (std::size_t i = 0; i < c.count(k); ++i) {
        auto f = c.face(k, i);
        for (std::size_t j = 0; j < f.size(); ++j) {
          buf.clear();
          for (std::size_t t = 0; t < f.size(); ++t)
            if (t != j) buf.push_back(f[t]);
          if (!c.index_of(buf)) throw MalformedInput("complex is not downward closed");
        }
      }
    }
  }
  return c;
}

std::size_t SimplicialComplex::count(int k) const {
  if (k < 0 || k > dimension()) return 0;
  return layers_[static_cast<std::size_t>(k)].size() / (static_cast<std::size_t>(k) + 1);
}

std::size_t SimplicialComplex::total_faces() const {
  std::size_t total = 0;
  for (int k = 0; k <= dimension(); ++k) total += count(k);
  return total;
}

Vertex SimplicialComplex::vertex_bound() const {
  Vertex bound = 0;
  for (const auto& layer : layers_)
    for (Vertex v : layer) bound = std::max(bound, v + 1);
  return bound;
}

FVector SimplicialComplex::f_vector() const {
  FVector f;
  for (int k = 0; k <= dimension(); ++k) f.counts.push_back(count(k));
  return f;
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const Vertex> f) const {
  if (f.empty()) return std::nullopt;
  const int k = static_cast<int>(f.size()) - 1;
  if (k > dimension()) return std::nullopt;
  std::size_t lo = 0, hi = count(k);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lex_less(face(k, mid), f)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count(k)) {
    auto g = face(k, lo);
    if (std::equal(g.begin(), g.end(), f.begin())) return lo;
  }
  return std::nullopt;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<std::vector<char>> covered(layers_.size());
  for (int k = 0; k <= dimension(); ++k) covered[static_cast<std::size_t>(k)].assign(count(k), 0);
  std::vector<Vertex> buf;
  for (int k = 1; k <= dimension(); ++k) {
    for (std::size_t i = 0; i < count(k); ++i) {
      auto f = face(k, i);
      for (std::size_t j = 0; j < f.size(); ++j) {
        buf.clear();
        for (std::size_t t = 0; t < f.size(); ++t)
          if (t != j) buf.push_back(f[t]);
        if (auto idx = index_of(buf)) covered[static_cast<std::size_t>(k - 1)][*idx] = 1;
      }
    }
  }
  std::vector<Simplex> out;
  for (int k = 0; k <= dimension(); ++k)
    for (std::size_t i = 0; i < count(k); ++i)
      if (!covered[static_cast<std::size_t>(k)][i]) out.push_back(simplex(k, i));
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex SimplicialComplex::skeleton(int k) const {
  SimplicialComplex c;
  if (k < 0) return c;
  c.layers_.assign(layers_.begin(), layers_.begin() + std::min<std::ptrdiff_t>(k + 1, static_cast<std::ptrdiff_t>(layers_.size())));
  return c;
}

SimplicialComplex link(const SimplicialComplex& complex, const Simplex& sigma) {
  if (!complex.contains(sigma)) throw DomainError("link: simplex is not a face of the complex");
  const auto s = sigma.vertices();
  std::vector<std::vector<Vertex>> layers;
  for (int k = sigma.dimension() + 1; k <= complex.dimension(); ++k) {
    auto& out = layers.emplace_back();
    for (std::size_t i = 0; i < complex.count(k); ++i) {
      auto f = complex.face(k, i);
      if (!std::includes(f.begin(), f.end(), s.begin(), s.end())) continue;
      std::set_difference(f.begin(), f.end(), s.begin(), s.end(), std::back_inserter(out));
    }
  }
  return SimplicialComplex::from_layers(std::move(layers));
}

std::int64_t euler_characteristic(const SimplicialComplex& complex) {
  std::int64_t chi = 0;
  for (int k = 0; k <= complex.dimension(); ++k) {
    const auto f = static_cast<std::int64_t>(complex.count(k));
    chi += (k % 2 == 0) ? f : -f;
  }
  return chi;
}

bool is_pure(const SimplicialComplex& complex, int d) {
  if (d < 0 || complex.dimension() != d) return false;
  // Every face lies in a d-face iff every vertex-maximal face is a d-face.
  for (const Simplex& f : complex.facets())
    if (f.dimension() != d) return false;
  return true;
}

std::vector<std::uint32_t> component_labels(const SimplicialComplex& complex) {
  const std::size_t n = complex.n_vertices();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  if (complex.dimension() >= 1) {
    const auto& verts = complex.layer(0);
    auto pos = [&](Vertex v) {
      return static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    for (std::size_t e = 0; e < complex.count(1); ++e) {
      auto f = complex.face(1, e);
      const auto a = find(pos(f[0]));
      const auto b = find(pos(f[1]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::uint32_t> label(n);
  for (std::uint32_t i = 0; i < n; ++i) label[i] = find(i);
  return label;
}

std::size_t component_count(const SimplicialComplex& complex) {
  auto label = component_labels(complex);
  std::size_t count = 0;
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] == i) ++count;
  return count;
}

SimplicialComplex read_scx(std::istream& in, int max_dim) {
  std::vector<Simplex> facets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::vector<Vertex> verts;
    long long v = 0;
    while (ss >> v) {
      if (v < 0 || v > static_cast<long long>(UINT32_MAX) - 1) {
        throw MalformedInput("scx line " + std::to_string(lineno) + ": vertex id out of range");
      }
      verts.push_back(static_cast<Vertex>(v));
    }
    if (!ss.eof()) throw MalformedInput("scx line " + std::to_string(lineno) + ": expected integers");
    try {
      facets.emplace_back(std::move(verts));
    } catch (const MalformedInput& e) {
      throw MalformedInput("scx line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return SimplicialComplex::from_facets(facets, max_dim);
}

void write_scx(std::ostream& out, const SimplicialComplex& complex) {
  for (const Simplex& f : complex.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
    out << '\n';
  }
}

}  // namespace randcx
