#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randcx/complex.hpp"

namespace randcx {

enum class FieldKind { kF2, kFp, kRational };

/// Coefficient field for ranks and Betti numbers.
struct Field {
  FieldKind kind = FieldKind::kF2;
  std::uint64_t prime = 2;  // meaningful for kFp only

  static Field f2() { return {FieldKind::kF2, 2}; }
  static Field fp(std::uint64_t q);
  static Field rational() { return {FieldKind::kRational, 0}; }

  /// "f2", "fp:<q>", "rational" (also "q").
  static Field parse(std::string_view tag);
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;
};

/// Prime used for "rational" ranks of complexes at or above kExactRationalLimit
/// faces. Rank over it differs from the rational rank only when it divides a
/// torsion coefficient.
inline constexpr std::uint64_t kLargePrime = 4611686018427387847ULL;  // 2^62 - 57
inline constexpr std::size_t kExactRationalLimit = 500;

/// Field actually used for a "rational" computation on this complex.
Field effective_field(const SimplicialComplex& complex, Field requested);

enum class CoefficientDomain { kF2, kFp, kRational, kInteger };

/// Column-major sparse matrix with int64 entries. Row indices within a column
/// are strictly increasing and no stored value is zero (values are reduced
/// into [0, q) for kFp and are all 1 for kF2).
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  CoefficientDomain domain = CoefficientDomain::kInteger;
  std::uint64_t prime = 0;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<std::int64_t> values;

  std::size_t nnz() const { return row_idx.size(); }
  std::int64_t at(std::size_t r, std::size_t c) const;
};

/// Domain tag of a field.
CoefficientDomain domain_of(Field f);

/// Simplicial boundary d_k: rows are (k-1)-faces and columns k-faces in layer
/// order; dropping vertex position j contributes (-1)^j.
SparseMatrix boundary_matrix(const SimplicialComplex& complex, int k, CoefficientDomain domain,
                             std::uint64_t prime = 0);

struct RankOptions {
  /// Stop as soon as the rank reaches target, or once it provably cannot.
  std::optional<std::size_t> target;
  /// Rows treated as absent (size rows or empty).
  const std::vector<bool>* deleted_rows = nullptr;
  /// Stop at the first column found dependent on the others (exact is then false).
  bool stop_at_dependent = false;
};

struct RankResult {
  std::size_t rank = 0;
  /// False when the computation stopped early; rank is then a lower bound
  /// that decides the target comparison.
  bool exact = true;
  /// Columns forming a basis of the column space (complete when exact).
  std::vector<std::uint32_t> pivot_columns;
  /// Pivots settled by structural peeling, for diagnostics.
  std::size_t peeled = 0;
};

/// Rank over a field. Singleton rows and columns are pivoted first at no
/// arithmetic cost; each connected block of the residual is then eliminated
/// on its own.
RankResult matrix_rank(const SparseMatrix& m, Field field, const RankOptions& options = {});

struct BettiProfile {
  std::vector<std::size_t> betti;
  Field field;
  bool reduced = false;

  std::size_t operator[](std::size_t k) const { return k < betti.size() ? betti[k] : 0; }
};

BettiProfile betti_numbers(const SimplicialComplex& complex, Field field, bool reduced = false);

/// beta_k alone (unreduced); degrees above the dimension give 0.
std::size_t betti_number(const SimplicialComplex& complex, int k, Field field);

/// beta_k == 0 (unreduced), with early exits.
bool betti_is_zero(const SimplicialComplex& complex, int k, Field field);

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<std::uint64_t> torsion;  // each > 1 and dividing the next

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct IntegerHomology {
  std::vector<HomologyGroup> groups;  // H_0 .. H_dim
};

inline constexpr std::size_t kDefaultSnfBudget = 2000;

/// Nonzero Smith normal form invariants (positive, each dividing the next).
/// Exact over arbitrary precision integers.
std::vector<std::uint64_t> smith_invariants(const SparseMatrix& m);

/// H_*(complex; Z). Throws ResourceError when a degree has more than budget faces.
IntegerHomology integer_homology(const SimplicialComplex& complex, std::size_t budget = kDefaultSnfBudget);

}  // namespace randcx
