#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace randcx {

using Vertex = std::uint32_t;

/// A face given by its strictly increasing vertex ids.
///
/// A default-constructed Simplex is the empty face; every other constructor
/// enforces a nonempty, duplicate-free vertex set and sorts it.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vertices);
  explicit Simplex(std::vector<Vertex> vertices);

  /// Wraps vertices already known to be strictly increasing.
  static Simplex from_sorted(std::span<const Vertex> vertices);

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }

  bool contains(Vertex v) const;
  bool is_subset_of(const Simplex& other) const;
  bool disjoint_from(const Simplex& other) const;

  /// The codimension-one face obtained by dropping position j.
  Simplex facet(std::size_t j) const;
  Simplex union_with(const Simplex& other) const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  std::vector<Vertex> vertices_;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

/// Lexicographic comparison of two vertex tuples of any length.
inline bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace randcx
