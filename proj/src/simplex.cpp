#include "randcx/simplex.hpp"

#include <algorithm>
#include <ostream>

#include "randcx/errors.hpp"

namespace randcx {

Simplex::Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw MalformedInput("simplex must have at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw MalformedInput("simplex has a repeated vertex");
  }
}

Simplex Simplex::from_sorted(std::span<const Vertex> vertices) {
  Simplex s;
  s.vertices_.assign(vertices.begin(), vertices.end());
  return s;
}

bool Simplex::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_subset_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

bool Simplex::disjoint_from(const Simplex& other) const {
  auto a = vertices_.begin();
  auto b = other.vertices_.begin();
  while (a != vertices_.end() && b != other.vertices_.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

Simplex Simplex::facet(std::size_t j) const {
  Simplex s;
  s.vertices_.reserve(vertices_.size() - 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i != j) s.vertices_.push_back(vertices_[i]);
  }
  return s;
}

Simplex Simplex::union_with(const Simplex& other) const {
  Simplex s;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                 std::back_inserter(s.vertices_));
  return s;
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  return os << '}';
}

}  // namespace randcx
