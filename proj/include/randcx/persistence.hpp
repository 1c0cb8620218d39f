#pragma once

#include <cstdint>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/models.hpp"

namespace randcx {

/// A face of a filtered complex: (dimension, index within its layer).
struct FaceRef {
  int dim = 0;
  std::uint32_t index = 0;

  friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

/// A complex with a total order of its faces such that every prefix is a
/// subcomplex, and non-decreasing appearance values along the order.
class Filtration {
 public:
  /// values[k][i] is the appearance value of face (k, i). Faces are ordered
  /// by (value, dimension, lexicographic). Throws MalformedInput when a face
  /// appears before one of its facets.
  static Filtration from_values(SimplicialComplex complex, std::vector<std::vector<double>> values, double cap);

  /// Explicit order; each face exactly once, never before its facets, values
  /// non-decreasing. Throws MalformedInput otherwise.
  static Filtration from_sequence(SimplicialComplex complex, std::vector<FaceRef> order,
                                  std::vector<std::vector<double>> values, double cap);

  const SimplicialComplex& complex() const { return complex_; }
  const std::vector<FaceRef>& order() const { return order_; }
  double value(FaceRef f) const { return values_[static_cast<std::size_t>(f.dim)][f.index]; }
  /// Position of a face in the order.
  std::size_t position(FaceRef f) const { return position_[static_cast<std::size_t>(f.dim)][f.index]; }
  /// Scan limit; classes alive at the end are censored here.
  double cap() const { return cap_; }

 private:
  void validate();

  SimplicialComplex complex_;
  std::vector<std::vector<double>> values_;
  std::vector<FaceRef> order_;
  std::vector<std::vector<std::size_t>> position_;
  double cap_ = 0.0;
};

/// Vietoris-Rips filtration up to max_r: a face appears at its diameter.
Filtration rips_filtration(const PointCloud& points, double max_r, int max_dim);

/// Cech filtration up to max_r: a face appears at twice its enclosing radius.
Filtration cech_filtration(const PointCloud& points, double max_r, int max_dim);

struct PersistencePair {
  int degree = 0;
  double birth = 0.0;
  double death = 0.0;
  /// Class still alive at the cap; death is the cap.
  bool censored = false;

  /// death / birth (infinite for birth 0).
  double persistence() const;
};

/// Degree-k pairs from F2 column reduction, sorted by (birth, death).
/// Zero-length pairs are dropped.
std::vector<PersistencePair> persistence_diagram(const Filtration& filtration, int k);

/// Largest death/birth over uncensored pairs with positive birth; 0 if none.
double max_persistence(const std::vector<PersistencePair>& diagram);
double max_persistence(const Filtration& filtration, int k);

}  // namespace randcx
