#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "randcx/simplex.hpp"

namespace randcx {

/// Face counts f_0, f_1, ... of a complex.
struct FVector {
  std::vector<std::size_t> counts;

  std::size_t operator[](std::size_t i) const { return i < counts.size() ? counts[i] : 0; }
  std::size_t size() const { return counts.size(); }
  friend bool operator==(const FVector&, const FVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const FVector& f);

inline constexpr int kNoDimCap = -1;

/// A finite abstract simplicial complex.
///
/// Faces are stored per dimension as flat, lexicographically sorted vertex
/// arrays (k+1 ids per k-face). The position of a face in its layer is its
/// index everywhere a face is mapped to a matrix row or column, so every
/// enumeration is deterministic. Instances are immutable once built.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of the given faces, truncated at max_dim when set.
  /// Throws MalformedInput on empty faces.
  static SimplicialComplex from_facets(std::span<const Simplex> facets, int max_dim = kNoDimCap);

  /// Builds from per-dimension flat vertex arrays whose union is already
  /// downward closed. Faces must have sorted vertices; layer order and
  /// duplicates do not matter. With check_closure the closure is verified
  /// and MalformedInput thrown on violation.
  static SimplicialComplex from_layers(std::vector<std::vector<Vertex>> layers,
                                       bool check_closure = false);

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(layers_.size()) - 1; }
  bool empty() const { return layers_.empty(); }
  std::size_t count(int k) const;
  std::size_t total_faces() const;
  std::size_t n_vertices() const { return count(0); }
  /// One past the largest vertex id (0 for the empty complex).
  Vertex vertex_bound() const;
  FVector f_vector() const;

  std::span<const Vertex> face(int k, std::size_t i) const {
    const auto w = static_cast<std::size_t>(k) + 1;
    return {layers_[static_cast<std::size_t>(k)].data() + i * w, w};
  }
  Simplex simplex(int k, std::size_t i) const { return Simplex::from_sorted(face(k, i)); }
  const std::vector<Vertex>& layer(int k) const { return layers_[static_cast<std::size_t>(k)]; }

  std::optional<std::size_t> index_of(std::span<const Vertex> face) const;
  bool contains(const Simplex& s) const { return !s.empty() && index_of(s.vertices()).has_value(); }

  /// Inclusion-maximal faces in lexicographic order.
  std::vector<Simplex> facets() const;
  SimplicialComplex skeleton(int k) const;
  /// Vertex ids present as 0-faces, increasing.
  std::vector<Vertex> vertices() const { return layers_.empty() ? std::vector<Vertex>{} : layers_[0]; }

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  std::vector<std::vector<Vertex>> layers_;
};

/// lk(sigma) = { tau : tau and sigma disjoint, tau u sigma a face }.
/// Throws DomainError when sigma is not a face.
SimplicialComplex link(const SimplicialComplex& complex, const Simplex& sigma);

std::int64_t euler_characteristic(const SimplicialComplex& complex);

/// True iff every face lies in some d-dimensional face (false if the complex
/// has no d-faces or has faces above d).
bool is_pure(const SimplicialComplex& complex, int d);

/// Components of the 1-skeleton as a label per vertex position (layer 0 order).
std::vector<std::uint32_t> component_labels(const SimplicialComplex& complex);
std::size_t component_count(const SimplicialComplex& complex);

// ---- ".scx" text format ----------------------------------------------------

/// Reads facet lines (space separated vertex ids, '#' comments, blank lines
/// ignored) and returns their downward closure.
SimplicialComplex read_scx(std::istream& in, int max_dim = kNoDimCap);
/// Writes the facets in lexicographic order, one per line.
void write_scx(std::ostream& out, const SimplicialComplex& complex);

}  // namespace randcx
