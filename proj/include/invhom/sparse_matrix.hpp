#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "invhom/integer.hpp"

namespace invhom {

using index_t = std::uint32_t;

struct SparseEntry {
  index_t index;
  Integer value;
};

/// Sorted list of (index, nonzero value) pairs.
using SparseVector = std::vector<SparseEntry>;

/// Exact sparse integer matrix stored column-major. No stored zeros.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(cols) {}

  static SparseIntMatrix identity(std::size_t n);
  static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& rows);
  /// Build from columns given as dense vectors.
  static SparseIntMatrix from_columns(std::size_t rows,
                                      const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& v);
  void add_to(std::size_t r, std::size_t c, const Integer& v);

  const SparseVector& column(std::size_t c) const { return data_[c]; }
  /// Replace a column; entries are sorted and zeros dropped.
  void set_column(std::size_t c, SparseVector col);

  bool is_zero() const { return nnz() == 0; }

  SparseIntMatrix transpose() const;
  /// Row-major view: rows()[r] lists (column, value).
  std::vector<SparseVector> row_lists() const;

  IntVector multiply(std::span<const Integer> x) const;
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  SparseIntMatrix scaled(const Integer& k) const;
  SparseIntMatrix minus(const SparseIntMatrix& rhs) const;
  /// Entries reduced to [0, m), zeros dropped.
  SparseIntMatrix reduced_mod(const Integer& m) const;
  SparseIntMatrix select_rows(std::span<const index_t> rows) const;
  SparseIntMatrix select_columns(std::span<const index_t> cols) const;

  std::vector<std::vector<Integer>> to_dense() const;

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

/// Sort by index, merge duplicates, drop zeros.
void canonicalize(SparseVector& v);
SparseVector to_sparse(std::span<const Integer> dense);
IntVector to_dense(const SparseVector& v, std::size_t n);

}  // namespace invhom
