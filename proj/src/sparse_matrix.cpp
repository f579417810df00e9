#include "invhom/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace invhom {

void canonicalize(SparseVector& v) {
  std::sort(v.begin(), v.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    index_t idx = v[i].index;
    Integer sum = std::move(v[i].value);
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].index == idx; ++j) sum += v[j].value;
    if (sum != 0) {
      v[out].index = idx;
      v[out].value = std::move(sum);
      ++out;
    }
    i = j;
  }
  v.resize(out);
}

SparseVector to_sparse(std::span<const Integer> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.push_back({static_cast<index_t>(i), dense[i]});
  return v;
}

IntVector to_dense(const SparseVector& v, std::size_t n) {
  IntVector out(n);
  for (const auto& e : v) out[e.index] = e.value;
  return out;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
  SparseIntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({static_cast<index_t>(i), 1});
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Integer>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  SparseIntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.data_[j].push_back({static_cast<index_t>(i), rows[i][j]});
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::from_columns(std::size_t rows,
                                              const std::vector<IntVector>& columns) {
  SparseIntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    m.data_[j] = to_sparse(columns[j]);
  }
  return m;
}

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

Integer SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = data_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const SparseEntry& e, std::size_t v) { return e.index < v; });
  if (it != col.end() && it->index == r) return it->value;
  return 0;
}

void SparseIntMatrix::set(std::size_t r, std::size_t c, const Integer& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseIntMatrix::set");
  auto& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const SparseEntry& e, std::size_t x) { return e.index < x; });
  if (it != col.end() && it->index == r) {
    if (v == 0)
      col.erase(it);
    else
      it->value = v;
  } else if (v != 0) {
    col.insert(it, {static_cast<index_t>(r), v});
  }
}

void SparseIntMatrix::add_to(std::size_t r, std::size_t c, const Integer& v) {
  if (v == 0) return;
  set(r, c, at(r, c) + v);
}

void SparseIntMatrix::set_column(std::size_t c, SparseVector col) {
  canonicalize(col);
  if (!col.empty() && col.back().index >= rows_)
    throw std::out_of_range("SparseIntMatrix::set_column");
  data_.at(c) = std::move(col);
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : data_[c]) t.data_[e.index].push_back({static_cast<index_t>(c), e.value});
  return t;
}

std::vector<SparseVector> SparseIntMatrix::row_lists() const {
  std::vector<SparseVector> rows(rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : data_[c]) rows[e.index].push_back({static_cast<index_t>(c), e.value});
  return rows;
}

IntVector SparseIntMatrix::multiply(std::span<const Integer> x) const {
  if (x.size() != cols_) throw std::invalid_argument("multiply: dimension mismatch");
  IntVector y(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c] == 0) continue;
    for (const auto& e : data_[c]) y[e.index] += e.value * x[c];
  }
  return y;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("multiply: dimension mismatch");
  SparseIntMatrix out(rows_, rhs.cols_);
  for (std::size_t c = 0; c < rhs.cols_; ++c) {
    SparseVector acc;
    for (const auto& r : rhs.data_[c])
      for (const auto& e : data_[r.index]) acc.push_back({e.index, e.value * r.value});
    canonicalize(acc);
    out.data_[c] = std::move(acc);
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::scaled(const Integer& k) const {
  SparseIntMatrix out(rows_, cols_);
  if (k == 0) return out;
  for (std::size_t c = 0; c < cols_; ++c) {
    out.data_[c] = data_[c];
    for (auto& e : out.data_[c]) e.value *= k;
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::minus(const SparseIntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("minus: dimension mismatch");
  SparseIntMatrix out(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    SparseVector acc = data_[c];
    for (const auto& e : rhs.data_[c]) acc.push_back({e.index, -e.value});
    canonicalize(acc);
    out.data_[c] = std::move(acc);
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::reduced_mod(const Integer& m) const {
  SparseIntMatrix out(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : data_[c]) {
      Integer r = mod_floor(e.value, m);
      if (r != 0) out.data_[c].push_back({e.index, std::move(r)});
    }
  return out;
}

SparseIntMatrix SparseIntMatrix::select_rows(std::span<const index_t> rows) const {
  std::vector<std::int64_t> remap(rows_, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) remap.at(rows[i]) = static_cast<std::int64_t>(i);
  SparseIntMatrix out(rows.size(), cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& e : data_[c])
      if (remap[e.index] >= 0)
        out.data_[c].push_back({static_cast<index_t>(remap[e.index]), e.value});
    canonicalize(out.data_[c]);
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::select_columns(std::span<const index_t> cols) const {
  SparseIntMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) out.data_[i] = data_.at(cols[i]);
  return out;
}

std::vector<std::vector<Integer>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_));
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : data_[c]) d[e.index][c] = e.value;
  return d;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t c = 0; c < a.cols_; ++c) {
    const auto& x = a.data_[c];
    const auto& y = b.data_[c];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].index != y[i].index || x[i].value != y[i].value) return false;
  }
  return true;
}

}  // namespace invhom
