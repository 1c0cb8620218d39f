#include "randcx/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "randcx/errors.hpp"

namespace randcx {

__extension__ using u128 = unsigned __int128;

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % q);
}

// Multiplication by a fixed f with Shoup's precomputed quotient
// floor(f 2^64 / q); needs q < 2^63.
struct ShoupFactor {
  std::uint64_t f, pre, q;
  ShoupFactor(std::uint64_t f_, std::uint64_t q_)
      : f(f_), pre(static_cast<std::uint64_t>((static_cast<u128>(f_) << 64) / q_)), q(q_) {}
  std::uint64_t times(std::uint64_t b) const {
    const auto hi = static_cast<std::uint64_t>((static_cast<u128>(pre) * b) >> 64);
    const std::uint64_t r = f * b - hi * q;
    return r >= q ? r - q : r;
  }
};

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t s : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (q % s == 0) return q == s;
  }
  std::uint64_t d = q - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, q);
    if (x == 1 || x == q - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, q);
      if (x == q - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t q) {
  const std::int64_t r = v % static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q) { return powmod(a, q - 2, q); }

// Nonzero pattern of a matrix over a field (or over Z for SNF), with deleted
// rows removed. Values: residues for F2/Fp, raw integers otherwise.
struct Pattern {
  std::size_t rows = 0, cols = 0;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<std::int64_t> values;
  std::vector<std::size_t> row_ptr;
  std::vector<std::uint32_t> col_idx;

  void build_transpose() {
    row_ptr.assign(rows + 1, 0);
    for (auto r : row_idx) ++row_ptr[r + 1];
    std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
    col_idx.resize(row_idx.size());
    std::vector<std::size_t> fill(row_ptr.begin(), row_ptr.end() - 1);
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t e = col_ptr[c]; e < col_ptr[c + 1]; ++e) col_idx[fill[row_idx[e]]++] = static_cast<std::uint32_t>(c);
  }
};

Pattern make_pattern(const SparseMatrix& m, const Field* field, const std::vector<bool>* deleted) {
  Pattern p;
  p.rows = m.rows;
  p.cols = m.cols;
  p.col_ptr.reserve(m.cols + 1);
  p.row_idx.reserve(m.nnz());
  p.values.reserve(m.nnz());
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (std::size_t e = m.col_ptr[c]; e < m.col_ptr[c + 1]; ++e) {
      const auto r = m.row_idx[e];
      if (deleted && !deleted->empty() && (*deleted)[r]) continue;
      std::int64_t v = m.values[e];
      if (field) {
        if (field->kind == FieldKind::kF2) {
          v &= 1;
        } else if (field->kind == FieldKind::kFp) {
          v = static_cast<std::int64_t>(reduce_mod(v, field->prime));
        }
      }
      if (v == 0) continue;
      p.row_idx.push_back(r);
      p.values.push_back(v);
    }
    p.col_ptr.push_back(p.row_idx.size());
  }
  p.build_transpose();
  return p;
}

// Structural elimination of singleton rows and columns. A singleton pivot
// (r, c) contributes one to the rank and leaves the remaining submatrix
// unchanged, so the residual can be eliminated independently. With
// units_only, only +-1 pivots are accepted (valid over Z).
class Peeler {
 public:
  Peeler(const Pattern& p, bool units_only)
      : p_(p), units_only_(units_only), row_active_(p.rows, true), col_active_(p.cols, true),
        row_cnt_(p.rows), col_cnt_(p.cols) {
    for (std::size_t r = 0; r < p.rows; ++r) {
      row_cnt_[r] = p.row_ptr[r + 1] - p.row_ptr[r];
      if (row_cnt_[r] <= 1) queue_.push_back(encode_row(r));
    }
    for (std::size_t c = 0; c < p.cols; ++c) {
      col_cnt_[c] = p.col_ptr[c + 1] - p.col_ptr[c];
      if (col_cnt_[c] <= 1) queue_.push_back(encode_col(c));
    }
  }

  // Runs until no singleton remains or rank reaches target.
  void run(std::optional<std::size_t> target) {
    while (!queue_.empty()) {
      if (target && pivots.size() >= *target) return;
      const std::size_t item = queue_.front();
      queue_.pop_front();
      if (item & 1) {
        const std::size_t c = item >> 1;
        if (!col_active_[c]) continue;
        if (col_cnt_[c] == 0) {
          drop_col(c);
          continue;
        }
        if (col_cnt_[c] != 1) continue;
        std::size_t e = p_.col_ptr[c];
        while (!row_active_[p_.row_idx[e]]) ++e;
        if (units_only_ && std::llabs(p_.values[e]) != 1) continue;
        const std::size_t r = p_.row_idx[e];
        pivots.push_back(static_cast<std::uint32_t>(c));
        drop_col(c);
        drop_row(r);
      } else {
        const std::size_t r = item >> 1;
        if (!row_active_[r]) continue;
        if (row_cnt_[r] == 0) {
          drop_row(r);
          continue;
        }
        if (row_cnt_[r] != 1) continue;
        std::size_t e = p_.row_ptr[r];
        while (!col_active_[p_.col_idx[e]]) ++e;
        const std::size_t c = p_.col_idx[e];
        if (units_only_ && std::llabs(entry(r, c)) != 1) continue;
        pivots.push_back(static_cast<std::uint32_t>(c));
        drop_row(r);
        drop_col(c);
      }
    }
  }

  std::vector<std::uint32_t> active_rows() const { return collect(row_active_); }
  std::vector<std::uint32_t> active_cols() const { return collect(col_active_); }
  bool row_active(std::size_t r) const { return row_active_[r]; }

  std::vector<std::uint32_t> pivots;

 private:
  static std::size_t encode_row(std::size_t r) { return r << 1; }
  static std::size_t encode_col(std::size_t c) { return (c << 1) | 1; }

  std::int64_t entry(std::size_t r, std::size_t c) const {
    const auto b = p_.row_idx.begin() + static_cast<std::ptrdiff_t>(p_.col_ptr[c]);
    const auto e = p_.row_idx.begin() + static_cast<std::ptrdiff_t>(p_.col_ptr[c + 1]);
    return p_.values[static_cast<std::size_t>(std::lower_bound(b, e, static_cast<std::uint32_t>(r)) - p_.row_idx.begin())];
  }

  void drop_col(std::size_t c) {
    col_active_[c] = false;
    for (std::size_t e = p_.col_ptr[c]; e < p_.col_ptr[c + 1]; ++e) {
      const auto r = p_.row_idx[e];
      if (!row_active_[r]) continue;
      if (--row_cnt_[r] <= 1) queue_.push_back(encode_row(r));
    }
  }

  void drop_row(std::size_t r) {
    row_active_[r] = false;
    for (std::size_t e = p_.row_ptr[r]; e < p_.row_ptr[r + 1]; ++e) {
      const auto c = p_.col_idx[e];
      if (!col_active_[c]) continue;
      if (--col_cnt_[c] <= 1) queue_.push_back(encode_col(c));
    }
  }

  static std::vector<std::uint32_t> collect(const std::vector<bool>& flags) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  const Pattern& p_;
  bool units_only_;
  std::vector<bool> row_active_, col_active_;
  std::vector<std::size_t> row_cnt_, col_cnt_;
  std::deque<std::size_t> queue_;
};

// Dense elimination of the residual. Each basis vector has its lowest
// nonzero row as pivot, normalised to one; reducing a new column only ever
// touches entries at or above the current pivot row.
class DenseEliminator {
 public:
  DenseEliminator(const Pattern& p, const std::vector<std::uint32_t>& rows, Field field)
      : p_(p), field_(field), local_(p.rows, kNone), n_(rows.size()) {
    for (std::size_t i = 0; i < rows.size(); ++i) local_[rows[i]] = static_cast<std::uint32_t>(i);
    pivot_of_.assign(n_, kNone);
    words_ = (n_ + 63) / 64;
  }

  // Returns true when column c is independent of the columns added so far.
  bool add(std::size_t c) {
    switch (field_.kind) {
      case FieldKind::kF2: return add_f2(c);
      case FieldKind::kFp: return add_fp(c);
      case FieldKind::kRational: return add_q(c);
    }
    return false;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  bool add_f2(std::size_t c) {
    std::vector<std::uint64_t> v(words_, 0);
    for (std::size_t e = p_.col_ptr[c]; e < p_.col_ptr[c + 1]; ++e) {
      const auto l = local_[p_.row_idx[e]];
      if (l != kNone) v[l >> 6] ^= 1ULL << (l & 63);
    }
    std::size_t w = 0;
    while (true) {
      while (w < words_ && v[w] == 0) ++w;
      if (w == words_) return false;
      const std::size_t r = w * 64 + static_cast<std::size_t>(__builtin_ctzll(v[w]));
      const auto j = pivot_of_[r];
      if (j == kNone) {
        pivot_of_[r] = static_cast<std::uint32_t>(bits_.size() / words_);
        bits_.insert(bits_.end(), v.begin(), v.end());
        return true;
      }
      const std::uint64_t* b = bits_.data() + static_cast<std::size_t>(j) * words_;
      for (std::size_t t = w; t < words_; ++t) v[t] ^= b[t];
    }
  }

  // Sparse left-looking reduction: a dense accumulator plus a min-heap of
  // rows that may be nonzero, so the cost follows the fill-in, not n_.
  bool add_fp(std::size_t c) {
    const std::uint64_t q = field_.prime;
    if (work_.empty()) {
      work_.assign(n_, 0);
      queued_.assign(n_, false);
    }
    auto push = [&](std::uint32_t r) {
      if (queued_[r]) return;
      queued_[r] = true;
      heap_.push_back(r);
      std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
    };
    auto pop = [&] {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
      const auto r = heap_.back();
      heap_.pop_back();
      queued_[r] = false;
      return r;
    };
    for (std::size_t e = p_.col_ptr[c]; e < p_.col_ptr[c + 1]; ++e) {
      const auto l = local_[p_.row_idx[e]];
      if (l == kNone) continue;
      work_[l] = static_cast<std::uint64_t>(p_.values[e]);
      push(l);
    }
    while (!heap_.empty()) {
      const auto r = pop();
      if (work_[r] == 0) continue;
      const auto j = pivot_of_[r];
      if (j == kNone) {
        const std::uint64_t inv = inverse_mod(work_[r], q);
        SparseVec vec;
        vec.idx.push_back(r);
        vec.val.push_back(1);
        work_[r] = 0;
        while (!heap_.empty()) {
          const auto t = pop();
          if (work_[t] == 0) continue;
          vec.idx.push_back(t);
          vec.val.push_back(mulmod(work_[t], inv, q));
          work_[t] = 0;
        }
        pivot_of_[r] = static_cast<std::uint32_t>(fp_.size());
        fp_.push_back(std::move(vec));
        return true;
      }
      const ShoupFactor f(work_[r], q);
      const auto& b = fp_[j];
      for (std::size_t i = 0; i < b.idx.size(); ++i) {
        const auto t = b.idx[i];
        const std::uint64_t s = f.times(b.val[i]);
        work_[t] = work_[t] >= s ? work_[t] - s : work_[t] + (q - s);
        if (t != r) push(t);
      }
    }
    return false;
  }

  bool add_q(std::size_t c) {
    std::vector<mpq_class> v(n_);
    for (std::size_t e = p_.col_ptr[c]; e < p_.col_ptr[c + 1]; ++e) {
      const auto l = local_[p_.row_idx[e]];
      if (l != kNone) v[l] = static_cast<long>(p_.values[e]);
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (sgn(v[r]) == 0) continue;
      const auto j = pivot_of_[r];
      if (j == kNone) {
        const mpq_class inv = 1 / v[r];
        for (std::size_t t = r; t < n_; ++t) v[t] *= inv;
        pivot_of_[r] = static_cast<std::uint32_t>(q_.size());
        q_.push_back(std::move(v));
        return true;
      }
      const mpq_class f = v[r];
      const auto& b = q_[j];
      for (std::size_t t = r; t < n_; ++t)
        if (sgn(b[t]) != 0) v[t] -= f * b[t];
    }
    return false;
  }

  const Pattern& p_;
  Field field_;
  std::vector<std::uint32_t> local_;
  std::size_t n_;
  std::size_t words_ = 0;
  std::vector<std::uint32_t> pivot_of_;
  std::vector<std::uint64_t> bits_;
  struct SparseVec {
    std::vector<std::uint32_t> idx;  // ascending; idx[0] is the pivot row
    std::vector<std::uint64_t> val;
  };
  std::vector<SparseVec> fp_;
  std::vector<std::uint64_t> work_;
  std::vector<bool> queued_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::vector<mpq_class>> q_;
};

}  // namespace

Field Field::fp(std::uint64_t q) {
  if (q == 2) return f2();
  if (q >= (1ULL << 63) || !is_prime(q)) throw DomainError("field: " + std::to_string(q) + " is not a prime below 2^63");
  return {FieldKind::kFp, q};
}

Field Field::parse(std::string_view tag) {
  if (tag == "f2" || tag == "F2") return f2();
  if (tag == "rational" || tag == "q" || tag == "Q") return rational();
  if (tag.starts_with("fp:")) {
    const std::string digits(tag.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("field: bad prime in '" + std::string(tag) + "'");
    return fp(std::stoull(digits));
  }
  throw DomainError("unknown field '" + std::string(tag) + "' (expected f2, fp:<prime> or rational)");
}

std::string Field::name() const {
  switch (kind) {
    case FieldKind::kF2: return "f2";
    case FieldKind::kFp: return "fp:" + std::to_string(prime);
    case FieldKind::kRational: return "rational";
  }
  return "?";
}

Field effective_field(const SimplicialComplex& complex, Field requested) {
  if (requested.kind == FieldKind::kRational && complex.total_faces() >= kExactRationalLimit) return Field::fp(kLargePrime);
  return requested;
}

CoefficientDomain domain_of(Field f) {
  switch (f.kind) {
    case FieldKind::kF2: return CoefficientDomain::kF2;
    case FieldKind::kFp: return CoefficientDomain::kFp;
    case FieldKind::kRational: return CoefficientDomain::kRational;
  }
  return CoefficientDomain::kInteger;
}

std::int64_t SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto b = row_idx.begin() + static_cast<std::ptrdiff_t>(col_ptr[c]);
  const auto e = row_idx.begin() + static_cast<std::ptrdiff_t>(col_ptr[c + 1]);
  const auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(r));
  return it != e && *it == r ? values[static_cast<std::size_t>(it - row_idx.begin())] : 0;
}

SparseMatrix boundary_matrix(const SimplicialComplex& complex, int k, CoefficientDomain domain, std::uint64_t prime) {
  if (k < 1 || k > complex.dimension())
    throw DomainError("boundary_matrix: degree " + std::to_string(k) + " outside 1.." + std::to_string(complex.dimension()));
  if (domain == CoefficientDomain::kFp && prime < 2) throw DomainError("boundary_matrix: F_p needs a prime");
  SparseMatrix m;
  m.rows = complex.count(k - 1);
  m.cols = complex.count(k);
  m.domain = domain;
  m.prime = domain == CoefficientDomain::kFp ? prime : (domain == CoefficientDomain::kF2 ? 2 : 0);
  const std::size_t w = static_cast<std::size_t>(k) + 1;
  m.col_ptr.reserve(m.cols + 1);
  m.row_idx.reserve(m.cols * w);
  m.values.reserve(m.cols * w);
  std::vector<Vertex> facet(w - 1);
  std::vector<std::pair<std::uint32_t, std::int64_t>> entries(w);
  for (std::size_t c = 0; c < m.cols; ++c) {
    const auto f = complex.face(k, c);
    for (std::size_t j = 0; j < w; ++j) {
      std::size_t t = 0;
      for (std::size_t i = 0; i < w; ++i)
        if (i != j) facet[t++] = f[i];
      const auto row = complex.index_of(facet);
      std::int64_t v = (j % 2 == 0) ? 1 : -1;
      if (domain == CoefficientDomain::kF2) v = 1;
      if (domain == CoefficientDomain::kFp) v = static_cast<std::int64_t>(reduce_mod(v, prime));
      entries[w - 1 - j] = {static_cast<std::uint32_t>(*row), v};
    }
    // Dropping later positions gives lexicographically smaller facets.
    for (const auto& [r, v] : entries) {
      m.row_idx.push_back(r);
      m.values.push_back(v);
    }
    m.col_ptr.push_back(m.row_idx.size());
  }
  return m;
}

namespace {

// Connected blocks of the submatrix on the given rows and columns: two
// columns share a block when they have a common active row. Blocks are
// returned smallest first, each with its rows and columns ascending.
struct Block {
  std::vector<std::uint32_t> rows, cols;
};

std::vector<Block> blocks_of(const Pattern& p, const std::vector<std::uint32_t>& rows,
                             const std::vector<std::uint32_t>& cols) {
  std::vector<std::uint32_t> parent(p.rows);
  std::vector<bool> active(p.rows, false);
  for (auto r : rows) {
    parent[r] = r;
    active[r] = true;
  }
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::uint32_t> anchor(cols.size(), 0xffffffffu);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const auto c = cols[i];
    for (std::size_t e = p.col_ptr[c]; e < p.col_ptr[c + 1]; ++e) {
      const auto r = p.row_idx[e];
      if (!active[r]) continue;
      if (anchor[i] == 0xffffffffu) {
        anchor[i] = r;
      } else {
        parent[find(r)] = find(anchor[i]);
      }
    }
  }
  std::vector<std::uint32_t> block_of(p.rows, 0xffffffffu);
  std::vector<Block> blocks;
  for (auto r : rows) {
    const auto root = find(r);
    if (block_of[root] == 0xffffffffu) {
      block_of[root] = static_cast<std::uint32_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].rows.push_back(r);
  }
  // Active columns always meet an active row: peeling drops empty ones.
  for (std::size_t i = 0; i < cols.size(); ++i) blocks[block_of[find(anchor[i])]].cols.push_back(cols[i]);
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
    return x.rows.size() + x.cols.size() < y.rows.size() + y.cols.size();
  });
  return blocks;
}

}  // namespace

RankResult matrix_rank(const SparseMatrix& m, Field field, const RankOptions& options) {
  if (options.deleted_rows && !options.deleted_rows->empty() && options.deleted_rows->size() != m.rows)
    throw DomainError("matrix_rank: deleted-row mask has the wrong size");
  const Pattern p = make_pattern(m, &field, options.deleted_rows);
  RankResult result;
  const auto& target = options.target;
  if (target && *target == 0) {
    result.exact = false;
    return result;
  }
  Peeler peeler(p, false);
  peeler.run(target);
  result.pivot_columns = peeler.pivots;
  result.peeled = peeler.pivots.size();
  result.rank = result.peeled;
  if (target && result.rank >= *target) {
    result.exact = false;
    return result;
  }
  const auto rows = peeler.active_rows();
  const auto cols = peeler.active_cols();
  if (target && result.rank + std::min(rows.size(), cols.size()) < *target) {
    result.exact = false;
    return result;
  }
  // Columns dropped without a pivot were zero on the remaining rows.
  if (options.stop_at_dependent && result.rank + cols.size() < m.cols) {
    result.exact = false;
    return result;
  }
  if (rows.empty() || cols.empty()) return result;
  std::size_t remaining = cols.size();
  for (const auto& block : blocks_of(p, rows, cols)) {
    if (options.stop_at_dependent && block.cols.size() > block.rows.size()) {
      result.exact = false;
      return result;
    }
    DenseEliminator dense(p, block.rows, field);
    std::size_t found = 0;
    for (std::size_t i = 0; i < block.cols.size(); ++i) {
      --remaining;
      if (dense.add(block.cols[i])) {
        result.pivot_columns.push_back(block.cols[i]);
        ++result.rank;
        if (target && result.rank >= *target) {
          result.exact = remaining == 0;
          return result;
        }
        // Block row space exhausted: the rest of the block is dependent.
        if (++found == block.rows.size()) {
          remaining -= block.cols.size() - i - 1;
          if (options.stop_at_dependent && i + 1 < block.cols.size()) {
            result.exact = false;
            return result;
          }
          break;
        }
      } else if (options.stop_at_dependent) {
        result.exact = false;
        return result;
      }
      if (target && result.rank + remaining < *target) {
        result.exact = false;
        return result;
      }
    }
  }
  std::sort(result.pivot_columns.begin(), result.pivot_columns.end());
  return result;
}

namespace {

// Rank of d_1 with a spanning forest as pivot columns: BFS from vertices in
// order of decreasing degree, so the forest is star-like around hubs.
RankResult graph_rank(const SimplicialComplex& c) {
  RankResult res;
  if (c.dimension() < 1) return res;
  const std::size_t n = c.count(0);
  const std::size_t m = c.count(1);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n);
  const auto& verts = c.layer(0);
  auto local = [&](Vertex v) { return static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
  for (std::size_t e = 0; e < m; ++e) {
    const auto f = c.face(1, e);
    const auto a = local(f[0]), b = local(f[1]);
    adj[a].push_back({b, static_cast<std::uint32_t>(e)});
    adj[b].push_back({a, static_cast<std::uint32_t>(e)});
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return adj[x].size() > adj[y].size(); });
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> queue;
  for (auto s : order) {
    if (seen[s]) continue;
    seen[s] = true;
    queue.assign(1, s);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (const auto& [u, e] : adj[queue[h]]) {
        if (seen[u]) continue;
        seen[u] = true;
        res.pivot_columns.push_back(e);
        queue.push_back(u);
      }
    }
  }
  res.rank = res.pivot_columns.size();
  std::sort(res.pivot_columns.begin(), res.pivot_columns.end());
  return res;
}

std::vector<bool> mask_of(const std::vector<std::uint32_t>& idx, std::size_t size) {
  std::vector<bool> mask(size, false);
  for (auto i : idx) mask[i] = true;
  return mask;
}

// Exact ranks of d_1..d_top; ranks[k] for k in 1..top, ranks[0] = 0. Each
// d_k is computed with the pivot rows of d_{k-1} deleted, which preserves the
// rank because those rows meet ker d_{k-1} trivially.
struct ChainState {
  std::vector<std::size_t> ranks{0};
  std::vector<std::uint32_t> last_pivots;
};

ChainState chain_ranks(const SimplicialComplex& c, int top, Field field) {
  ChainState st;
  for (int k = 1; k <= top && k <= c.dimension(); ++k) {
    RankResult r;
    if (k == 1) {
      r = graph_rank(c);
    } else {
      const auto mask = mask_of(st.last_pivots, c.count(k - 1));
      r = matrix_rank(boundary_matrix(c, k, domain_of(field), field.prime), field, {std::nullopt, &mask});
    }
    st.ranks.push_back(r.rank);
    st.last_pivots = std::move(r.pivot_columns);
  }
  return st;
}

}  // namespace

BettiProfile betti_numbers(const SimplicialComplex& complex, Field field, bool reduced) {
  const Field f = effective_field(complex, field);
  BettiProfile out{{}, f, reduced};
  const int dim = complex.dimension();
  if (dim < 0) return out;
  const auto st = chain_ranks(complex, dim, f);
  for (int k = 0; k <= dim; ++k) {
    const std::size_t next = k + 1 <= dim ? st.ranks[static_cast<std::size_t>(k) + 1] : 0;
    out.betti.push_back(complex.count(k) - st.ranks[static_cast<std::size_t>(k)] - next);
  }
  if (reduced) --out.betti[0];
  return out;
}

std::size_t betti_number(const SimplicialComplex& complex, int k, Field field) {
  if (k < 0 || k > complex.dimension()) return 0;
  const Field f = effective_field(complex, field);
  const auto st = chain_ranks(complex, std::min(k + 1, complex.dimension()), f);
  const std::size_t next = static_cast<std::size_t>(k) + 1 < st.ranks.size() ? st.ranks[static_cast<std::size_t>(k) + 1] : 0;
  return complex.count(k) - st.ranks[static_cast<std::size_t>(k)] - next;
}

bool betti_is_zero(const SimplicialComplex& complex, int k, Field field) {
  if (k < 0 || k > complex.dimension()) return true;
  if (k == 0) return complex.empty();
  const Field f = effective_field(complex, field);
  if (k == complex.dimension() && k >= 2) {
    // Top degree: beta_k = 0 iff d_k has independent columns.
    const auto st = chain_ranks(complex, k - 1, f);
    const auto mask = mask_of(st.last_pivots, complex.count(k - 1));
    RankOptions opts;
    opts.deleted_rows = &mask;
    opts.stop_at_dependent = true;
    const auto r = matrix_rank(boundary_matrix(complex, k, domain_of(f), f.prime), f, opts);
    return r.exact && r.rank == complex.count(k);
  }
  const auto st = chain_ranks(complex, k, f);
  const std::size_t kernel = complex.count(k) - st.ranks[static_cast<std::size_t>(k)];
  if (kernel == 0) return true;
  if (k == complex.dimension()) return false;
  const auto mask = mask_of(st.last_pivots, complex.count(k));
  const auto r = matrix_rank(boundary_matrix(complex, k + 1, domain_of(f), f.prime), f, {kernel, &mask});
  return r.rank >= kernel;
}

namespace {

std::uint64_t to_u64(const mpz_class& z) {
  if (!z.fits_ulong_p()) throw ResourceError("smith normal form: invariant does not fit in 64 bits");
  return z.get_ui();
}

int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

void dense_snf(std::vector<std::vector<mpz_class>>& a, std::vector<std::uint64_t>& out) {
  const std::size_t m = a.size();
  if (m == 0) return;
  const std::size_t n = a[0].size();
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (sgn(a[i][j]) != 0 && (bi == m || cmpabs(a[i][j], a[bi][bj]) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == m) return;
    std::swap(a[t], a[bi]);
    swap_cols(t, bj);
    mpz_class q;
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < n; ++j)
          if (sgn(a[t][j]) != 0) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(a[i][t]) != 0 && cmpabs(a[i][t], a[best][t]) < 0) best = i;
        std::swap(a[t], a[best]);
        continue;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < m; ++i)
          if (sgn(a[i][t]) != 0) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(a[t][j]) != 0 && cmpabs(a[t][j], a[t][best]) < 0) best = j;
        swap_cols(t, best);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the rest.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(a[i][j]) != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
    }
    out.push_back(to_u64(abs(a[t][t])));
  }
}

}  // namespace

std::vector<std::uint64_t> smith_invariants(const SparseMatrix& m) {
  const Pattern p = make_pattern(m, nullptr, nullptr);
  Peeler peeler(p, true);
  peeler.run(std::nullopt);
  std::vector<std::uint64_t> out(peeler.pivots.size(), 1);
  const auto rows = peeler.active_rows();
  const auto cols = peeler.active_cols();
  if (!rows.empty() && !cols.empty()) {
    std::vector<std::uint32_t> local(m.rows, 0xffffffffu);
    for (std::size_t i = 0; i < rows.size(); ++i) local[rows[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::vector<mpz_class>> a(rows.size(), std::vector<mpz_class>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t e = p.col_ptr[cols[j]]; e < p.col_ptr[cols[j] + 1]; ++e)
        if (local[p.row_idx[e]] != 0xffffffffu) a[local[p.row_idx[e]]][j] = static_cast<long>(p.values[e]);
    dense_snf(a, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntegerHomology integer_homology(const SimplicialComplex& complex, std::size_t budget) {
  IntegerHomology h;
  const int dim = complex.dimension();
  for (int k = 0; k <= dim; ++k)
    if (complex.count(k) > budget)
      throw ResourceError("integer homology: degree " + std::to_string(k) + " has " + std::to_string(complex.count(k)) +
                          " faces, above the SNF budget of " + std::to_string(budget));
  std::vector<std::vector<std::uint64_t>> inv(static_cast<std::size_t>(std::max(dim, 0)) + 2);
  for (int k = 1; k <= dim; ++k) inv[static_cast<std::size_t>(k)] = smith_invariants(boundary_matrix(complex, k, CoefficientDomain::kInteger));
  for (int k = 0; k <= dim; ++k) {
    HomologyGroup g;
    const auto& here = inv[static_cast<std::size_t>(k)];
    const auto& up = inv[static_cast<std::size_t>(k) + 1];
    g.free_rank = complex.count(k) - here.size() - up.size();
    for (auto d : up)
      if (d > 1) g.torsion.push_back(d);
    h.groups.push_back(std::move(g));
  }
  return h;
}

}  // namespace randcx
