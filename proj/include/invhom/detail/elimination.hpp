#pragma once

// Sparse pivoted elimination toward Smith normal form.
//
// Phase A eliminates unit pivots (Markowitz-style: sparsest column, then
// shortest row, lowest index on ties) using row operations only; the matching
// column operations touch the pivot row alone and are recorded, not applied.
// Phase B handles the non-unit remainder with Euclidean row and column steps.
// Phase C normalizes signs and turns the diagonal into a divisibility chain.
// Row operations compose U, column operations compose V, U*M*V = diag.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "invhom/detail/rings.hpp"
#include "invhom/sparse_matrix.hpp"

namespace invhom::detail {

template <class Ring>
class Eliminator {
 public:
  using T = typename Ring::value_type;
  struct Entry {
    index_t col;
    T val;
  };
  using Row = std::vector<Entry>;

  struct Options {
    bool row_log = false;      // record row operations (apply U to vectors)
    bool row_inverse = false;  // track columns of U^{-1} for rows alive after phase A
    bool col_log = false;      // record column operations (apply V, V^{-1})
    bool col_log_unit_phase = true;  // include the unit-phase column operations
    bool lift_rows = false;    // keep phase-A pivot rows for kernel back-substitution
    bool normalize = true;     // positive pivots in a divisibility chain
  };

  struct Pivot {
    index_t row;
    index_t col;
    T value;
    bool unit_phase;
  };

  enum class OpKind : std::uint8_t { Axpy, Mix, Negate };
  /// Axpy: a -= c * b.  Mix: (a, b) <- 2x2 block.  Negate: a <- -a.
  struct Op {
    OpKind kind;
    index_t a;
    index_t b;
    std::uint32_t coef;
  };

  Eliminator(Ring ring, std::size_t nrows, std::size_t ncols, std::vector<Row> rows,
             Options opt)
      : ring_(std::move(ring)),
        nrows_(nrows),
        ncols_(ncols),
        opt_(opt),
        rows_(std::move(rows)),
        row_active_(nrows, 1),
        col_active_(ncols, 1),
        col_count_(ncols, 0),
        col_units_(ncols, 0),
        col_rows_(ncols) {
    rows_.resize(nrows);
    for (index_t r = 0; r < nrows_; ++r)
      for (const auto& e : rows_[r]) {
        ++col_count_[e.col];
        if (ring_.is_unit(e.val)) ++col_units_[e.col];
        col_rows_[e.col].push_back(r);
      }
  }

  static std::vector<Row> rows_from(const Ring& ring, const SparseIntMatrix& m) {
    std::vector<Row> rows(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& e : m.column(c)) {
        T v = ring.from_integer(e.value);
        if (!ring.is_zero(v)) rows[e.index].push_back({static_cast<index_t>(c), std::move(v)});
      }
    return rows;
  }

  void run() {
    unit_phase();
    unit_phase_done_ = true;
    col_log_phase_b_begin_ = col_ops_.size();
    for (index_t c = 0; c < ncols_; ++c)
      if (col_active_[c]) survivors_cols_.push_back(c);
    for (index_t r = 0; r < nrows_; ++r)
      if (row_active_[r]) survivors_rows_.push_back(r);
    euclid_phase();
    if (opt_.normalize) normalize();
    finished_ = true;
  }

  /// Drop the working matrix; logs, pivots and lift data are kept.
  void compact() {
    std::vector<Row>().swap(rows_);
    std::vector<std::vector<index_t>>().swap(col_rows_);
    std::vector<std::uint32_t>().swap(col_count_);
    std::vector<std::uint32_t>().swap(col_units_);
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Pivot>& pivots() const { return pivots_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }

  /// Columns never used as pivots, ascending.
  std::vector<index_t> free_columns() const {
    std::vector<char> used(ncols_, 0);
    for (const auto& p : pivots_) used[p.col] = 1;
    std::vector<index_t> out;
    for (index_t c = 0; c < ncols_; ++c)
      if (!used[c]) out.push_back(c);
    return out;
  }

  /// Rows never used as pivots, ascending.
  std::vector<index_t> zero_rows() const {
    std::vector<char> used(nrows_, 0);
    for (const auto& p : pivots_) used[p.row] = 1;
    std::vector<index_t> out;
    for (index_t r = 0; r < nrows_; ++r)
      if (!used[r]) out.push_back(r);
    return out;
  }

  /// Columns still active after the unit phase, ascending.
  const std::vector<index_t>& unit_phase_survivor_columns() const { return survivors_cols_; }
  std::size_t euclid_pivot_count() const {
    return static_cast<std::size_t>(
        std::count_if(pivots_.begin(), pivots_.end(), [](const Pivot& p) { return !p.unit_phase; }));
  }

  /// x <- U x.
  void apply_row_ops(std::vector<T>& x) const {
    for (const auto& op : row_ops_) apply_forward(op, x);
  }

  /// w <- V w, restricted to the Euclid/normalization part when requested.
  void apply_col_ops(std::vector<T>& w, bool phase_b_only) const {
    std::size_t begin = phase_b_only ? col_log_phase_b_begin_ : 0;
    for (std::size_t k = col_ops_.size(); k-- > begin;) apply_col_forward(col_ops_[k], w);
  }

  /// z <- V^{-1} z, restricted to the Euclid/normalization part when requested.
  void apply_col_ops_inverse(std::vector<T>& z, bool phase_b_only) const {
    std::size_t begin = phase_b_only ? col_log_phase_b_begin_ : 0;
    for (std::size_t k = begin; k < col_ops_.size(); ++k) apply_col_inverse(col_ops_[k], z);
  }

  /// Same as apply_col_ops_inverse(.., true) with coordinates stored as sparse rows.
  void apply_col_ops_inverse_to_rows(std::vector<Row>& rows) const {
    for (std::size_t k = col_log_phase_b_begin_; k < col_ops_.size(); ++k) {
      const Op& op = col_ops_[k];
      switch (op.kind) {
        case OpKind::Axpy:  // z_b += c z_a
          axpy_rows(rows[op.b], ring_.neg(coefs_[op.coef]), rows[op.a]);
          break;
        case OpKind::Mix: {
          const T* m = &coefs_[op.coef];
          // inverse block [[m11, -m01], [-m10, m00]]
          mix_rows(rows[op.a], rows[op.b], m[3], ring_.neg(m[1]), ring_.neg(m[2]), m[0]);
          break;
        }
        case OpKind::Negate:
          for (auto& e : rows[op.a]) e.val = ring_.neg(e.val);
          break;
      }
    }
  }

  /// Back-substitute phase-A pivot columns so that z solves the original system.
  void lift(std::vector<T>& z) const {
    for (std::size_t k = lift_records_.size(); k-- > 0;) {
      const auto& rec = lift_records_[k];
      T acc{};
      for (const auto& e : rec.row) {
        if (e.col == rec.col) continue;
        if (ring_.is_zero(z[e.col])) continue;
        ring_.submul(acc, e.val, z[e.col]);
      }
      // acc = -sum; z_j = acc * s^{-1}
      z[rec.col] = ring_.mul(acc, rec.pivot_inverse);
    }
  }

  /// Column t of U^{-1} for a row alive after phase A, as (row, value) pairs.
  Row u_inverse_column(index_t t) const {
    auto it = uinv_.find(t);
    if (it != uinv_.end()) return it->second;
    return Row{{t, T(1)}};
  }

 private:
  struct LiftRecord {
    index_t col;
    T pivot_inverse;
    Row row;
  };

  static bool find_in(const Row& row, index_t col, std::size_t& pos) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const Entry& e, index_t c) { return e.col < c; });
    pos = static_cast<std::size_t>(it - row.begin());
    return it != row.end() && it->col == col;
  }

  const T& value_at(index_t r, index_t c) const {
    std::size_t pos;
    find_in(rows_[r], c, pos);
    return rows_[r][pos].val;
  }

  std::vector<index_t> rows_in_column(index_t j) {
    auto& list = col_rows_[j];
    std::vector<index_t> out;
    out.reserve(list.size());
    std::size_t pos;
    for (index_t k : list)
      if (row_active_[k] && find_in(rows_[k], j, pos)) out.push_back(k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    list = out;
    return out;
  }

  // target -= c * src (plain rows, no bookkeeping)
  void axpy_rows(Row& target, const T& c, const Row& src) const {
    Row out;
    out.reserve(target.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < src.size()) {
      if (b == src.size() || (a < target.size() && target[a].col < src[b].col)) {
        out.push_back(std::move(target[a++]));
      } else if (a == target.size() || src[b].col < target[a].col) {
        T v = ring_.neg(ring_.mul(c, src[b].val));
        if (!ring_.is_zero(v)) out.push_back({src[b].col, std::move(v)});
        ++b;
      } else {
        T v = std::move(target[a].val);
        ring_.submul(v, c, src[b].val);
        if (!ring_.is_zero(v)) out.push_back({target[a].col, std::move(v)});
        ++a;
        ++b;
      }
    }
    target = std::move(out);
  }

  // (x, y) <- (m00 x + m01 y, m10 x + m11 y)
  void mix_rows(Row& x, Row& y, const T& m00, const T& m01, const T& m10, const T& m11) const {
    Row nx, ny;
    std::size_t a = 0, b = 0;
    while (a < x.size() || b < y.size()) {
      index_t col;
      T xv{}, yv{};
      if (b == y.size() || (a < x.size() && x[a].col < y[b].col)) {
        col = x[a].col;
        xv = x[a++].val;
      } else if (a == x.size() || y[b].col < x[a].col) {
        col = y[b].col;
        yv = y[b++].val;
      } else {
        col = x[a].col;
        xv = x[a++].val;
        yv = y[b++].val;
      }
      T u = ring_.add(ring_.mul(m00, xv), ring_.mul(m01, yv));
      T w = ring_.add(ring_.mul(m10, xv), ring_.mul(m11, yv));
      if constexpr (Ring::is_field) {
        u = ring_.norm(u);
        w = ring_.norm(w);
      }
      if (!ring_.is_zero(u)) nx.push_back({col, std::move(u)});
      if (!ring_.is_zero(w)) ny.push_back({col, std::move(w)});
    }
    x = std::move(nx);
    y = std::move(ny);
  }

  // row_k -= c * row_i with column statistics maintained
  void row_axpy(index_t k, const T& c, index_t i) {
    Row& tk = rows_[k];
    const Row& ri = rows_[i];
    Row out;
    out.reserve(tk.size() + ri.size());
    std::size_t a = 0, b = 0;
    while (a < tk.size() || b < ri.size()) {
      if (b == ri.size() || (a < tk.size() && tk[a].col < ri[b].col)) {
        out.push_back(std::move(tk[a++]));
      } else if (a == tk.size() || ri[b].col < tk[a].col) {
        T v = ring_.neg(ring_.mul(c, ri[b].val));
        index_t col = ri[b].col;
        if (!ring_.is_zero(v)) {
          ++col_count_[col];
          if (ring_.is_unit(v)) ++col_units_[col];
          col_rows_[col].push_back(k);
          out.push_back({col, std::move(v)});
        }
        ++b;
      } else {
        index_t col = tk[a].col;
        T v = std::move(tk[a].val);
        bool was_unit = ring_.is_unit(v);
        ring_.submul(v, c, ri[b].val);
        if (ring_.is_zero(v)) {
          --col_count_[col];
          if (was_unit) --col_units_[col];
        } else {
          bool now_unit = ring_.is_unit(v);
          if (was_unit && !now_unit) --col_units_[col];
          if (!was_unit && now_unit) ++col_units_[col];
          out.push_back({col, std::move(v)});
        }
        ++a;
        ++b;
      }
    }
    tk = std::move(out);
  }

  std::uint32_t push_coef(T c) {
    coefs_.push_back(std::move(c));
    return static_cast<std::uint32_t>(coefs_.size() - 1);
  }

  void log_row_axpy(index_t target, const T& c, index_t source) {
    if (opt_.row_log) row_ops_.push_back({OpKind::Axpy, target, source, push_coef(c)});
    if (opt_.row_inverse && unit_phase_done_) {
      // U^{-1}: col_source += c * col_target
      Row src = u_inverse_column(target);
      Row& dst = uinv_slot(source);
      axpy_rows(dst, ring_.neg(c), src);
    }
  }

  void log_col_axpy(index_t target, const T& c, index_t source) {
    if (opt_.col_log) col_ops_.push_back({OpKind::Axpy, target, source, push_coef(c)});
  }

  Row& uinv_slot(index_t r) {
    auto it = uinv_.find(r);
    if (it == uinv_.end()) it = uinv_.emplace(r, Row{{r, T(1)}}).first;
    return it->second;
  }

  void deactivate_row(index_t r) {
    row_active_[r] = 0;
    for (const auto& e : rows_[r]) {
      if (!col_active_[e.col]) continue;
      --col_count_[e.col];
      if (ring_.is_unit(e.val)) --col_units_[e.col];
    }
  }

  void unit_phase() {
    for (;;) {
      std::optional<index_t> best_col;
      for (index_t c = 0; c < ncols_; ++c) {
        if (!col_active_[c] || col_units_[c] == 0) continue;
        if (!best_col || col_count_[c] < col_count_[*best_col]) best_col = c;
        if (col_count_[c] == 1) break;
      }
      if (!best_col) return;
      index_t j = *best_col;
      auto rows = rows_in_column(j);
      std::optional<index_t> best_row;
      for (index_t k : rows) {
        if (!ring_.is_unit(value_at(k, j))) continue;
        if (!best_row || rows_[k].size() < rows_[*best_row].size()) best_row = k;
      }
      index_t i = *best_row;
      T s = value_at(i, j);
      T sinv = ring_.unit_inverse(s);
      for (index_t k : rows) {
        if (k == i) continue;
        T c = ring_.mul(value_at(k, j), sinv);
        row_axpy(k, c, i);
        log_row_axpy(k, c, i);
      }
      if (opt_.col_log && opt_.col_log_unit_phase)
        for (const auto& e : rows_[i])
          if (e.col != j) log_col_axpy(e.col, ring_.mul(e.val, sinv), j);
      if (opt_.lift_rows) lift_records_.push_back({j, sinv, rows_[i]});
      deactivate_row(i);
      col_active_[j] = 0;
      pivots_.push_back({i, j, s, true});
    }
  }

  void euclid_phase() {
    for (;;) {
      std::optional<std::pair<index_t, index_t>> best;
      for (index_t r = 0; r < nrows_; ++r) {
        if (!row_active_[r]) continue;
        for (const auto& e : rows_[r]) {
          if (!col_active_[e.col]) continue;
          if (!best) {
            best = {r, e.col};
            continue;
          }
          const T& bv = value_at(best->first, best->second);
          int cmp = ring_.compare_magnitude(e.val, bv);
          if (cmp < 0) {
            best = {r, e.col};
          } else if (cmp == 0) {
            std::size_t cost = (rows_[r].size() - 1) * (col_count_[e.col] - 1);
            std::size_t bcost =
                (rows_[best->first].size() - 1) * (col_count_[best->second] - 1);
            if (cost < bcost) best = {r, e.col};
          }
        }
      }
      if (!best) return;
      index_t i = best->first, j = best->second;
      reduce_pivot(i, j);
      T v = value_at(i, j);
      deactivate_row(i);
      col_active_[j] = 0;
      pivots_.push_back({i, j, std::move(v), false});
    }
  }

  void reduce_pivot(index_t& i, index_t& j) {
    for (;;) {
      T p = value_at(i, j);
      std::optional<index_t> next_row;
      T best_r{};
      for (index_t k : rows_in_column(j)) {
        if (k == i) continue;
        T q, r;
        ring_.div_round(value_at(k, j), p, q, r);
        if (!ring_.is_zero(q)) {
          row_axpy(k, q, i);
          log_row_axpy(k, q, i);
        }
        if (!ring_.is_zero(r) && (!next_row || ring_.compare_magnitude(r, best_r) < 0)) {
          next_row = k;
          best_r = r;
        }
      }
      if (next_row) {
        i = *next_row;
        continue;
      }
      std::optional<index_t> next_col;
      Row snapshot = rows_[i];
      for (const auto& e : snapshot) {
        if (e.col == j) continue;
        T q, r;
        ring_.div_round(e.val, p, q, r);
        if (ring_.is_zero(q)) {
          if (!next_col || ring_.compare_magnitude(r, best_r) < 0) {
            next_col = e.col;
            best_r = r;
          }
          continue;
        }
        // col_l -= q col_j; column j is p * e_i so only row i changes
        set_entry(i, e.col, r, e.val);
        log_col_axpy(e.col, q, j);
        if (!ring_.is_zero(r) && (!next_col || ring_.compare_magnitude(r, best_r) < 0)) {
          next_col = e.col;
          best_r = r;
        }
      }
      if (next_col) {
        j = *next_col;
        continue;
      }
      return;
    }
  }

  void set_entry(index_t r, index_t c, const T& v, const T& old) {
    Row& row = rows_[r];
    std::size_t pos;
    find_in(row, c, pos);
    bool was_unit = ring_.is_unit(old);
    if (ring_.is_zero(v)) {
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(pos));
      --col_count_[c];
      if (was_unit) --col_units_[c];
    } else {
      row[pos].val = v;
      bool now_unit = ring_.is_unit(v);
      if (was_unit && !now_unit) --col_units_[c];
      if (!was_unit && now_unit) ++col_units_[c];
    }
  }

  void normalize() {
    if constexpr (Ring::is_field) {
      return;
    } else {
      for (auto& p : pivots_) {
        if (!ring_.is_negative(p.value)) continue;
        p.value = -p.value;
        if (opt_.row_log) row_ops_.push_back({OpKind::Negate, p.row, p.row, 0});
        if (opt_.row_inverse && uinv_.count(p.row)) {
          for (auto& e : uinv_[p.row]) e.val = -e.val;
        } else if (opt_.row_inverse && !p.unit_phase) {
          uinv_slot(p.row)[0].val = -1;
        }
      }
      std::vector<std::size_t> nonunit;
      for (std::size_t k = 0; k < pivots_.size(); ++k)
        if (!ring_.is_unit(pivots_[k].value)) nonunit.push_back(k);
      for (std::size_t x = 0; x < nonunit.size(); ++x) {
        for (std::size_t y = x + 1; y < nonunit.size(); ++y) {
          Pivot& pa = pivots_[nonunit[x]];
          Pivot& pb = pivots_[nonunit[y]];
          if (divides(pa.value, pb.value)) continue;
          Integer g, s, t;
          extended_gcd(pa.value, pb.value, g, s, t);
          Integer a_g = pa.value / g, b_g = pb.value / g;
          // rows: [[s, t], [-b/g, a/g]]
          mix_rows_logged(pa.row, pb.row, s, t, -b_g, a_g);
          // cols: E e_a = e_a + e_b, E e_b = -t b/g e_a + s a/g e_b
          if (opt_.col_log) {
            std::uint32_t base = push_coef(Integer(1));
            push_coef(-t * b_g);
            push_coef(Integer(1));
            push_coef(s * a_g);
            col_ops_.push_back({OpKind::Mix, pa.col, pb.col, base});
          }
          Integer l = pa.value * b_g;
          pa.value = g;
          pb.value = l;
        }
      }
      std::stable_sort(pivots_.begin(), pivots_.end(), [](const Pivot& a, const Pivot& b) {
        return mpz_cmpabs(a.value.get_mpz_t(), b.value.get_mpz_t()) < 0;
      });
    }
  }

  void mix_rows_logged(index_t a, index_t b, const T& m00, const T& m01, const T& m10,
                       const T& m11) {
    if (opt_.row_log) {
      std::uint32_t base = push_coef(m00);
      push_coef(m01);
      push_coef(m10);
      push_coef(m11);
      row_ops_.push_back({OpKind::Mix, a, b, base});
    }
    if (opt_.row_inverse) {
      // [col_a, col_b] <- [col_a, col_b] * [[m11, -m01], [-m10, m00]]
      Row ca = u_inverse_column(a);
      Row cb = u_inverse_column(b);
      mix_columns_of_uinv(ca, cb, m11, ring_.neg(m10), ring_.neg(m01), m00);
      uinv_[a] = std::move(ca);
      uinv_[b] = std::move(cb);
    }
  }

  // new_a = x00 a + x01 b, new_b = x10 a + x11 b
  void mix_columns_of_uinv(Row& a, Row& b, const T& x00, const T& x01, const T& x10,
                           const T& x11) const {
    Row aa = a, bb = b;
    mix_rows(aa, bb, x00, x01, x10, x11);
    a = std::move(aa);
    b = std::move(bb);
  }

  void apply_forward(const Op& op, std::vector<T>& x) const {
    switch (op.kind) {
      case OpKind::Axpy:
        if (!ring_.is_zero(x[op.b])) ring_.submul(x[op.a], coefs_[op.coef], x[op.b]);
        break;
      case OpKind::Mix: {
        const T* m = &coefs_[op.coef];
        T u = ring_.add(ring_.mul(m[0], x[op.a]), ring_.mul(m[1], x[op.b]));
        T w = ring_.add(ring_.mul(m[2], x[op.a]), ring_.mul(m[3], x[op.b]));
        x[op.a] = std::move(u);
        x[op.b] = std::move(w);
        break;
      }
      case OpKind::Negate:
        x[op.a] = ring_.neg(x[op.a]);
        break;
    }
  }

  // column op col_a -= c col_b is E = I - c e_b e_a^T; E w: w_b -= c w_a
  void apply_col_forward(const Op& op, std::vector<T>& w) const {
    switch (op.kind) {
      case OpKind::Axpy:
        if (!ring_.is_zero(w[op.a])) ring_.submul(w[op.b], coefs_[op.coef], w[op.a]);
        break;
      case OpKind::Mix: {
        const T* m = &coefs_[op.coef];
        T u = ring_.add(ring_.mul(m[0], w[op.a]), ring_.mul(m[1], w[op.b]));
        T v = ring_.add(ring_.mul(m[2], w[op.a]), ring_.mul(m[3], w[op.b]));
        w[op.a] = std::move(u);
        w[op.b] = std::move(v);
        break;
      }
      case OpKind::Negate:
        w[op.a] = ring_.neg(w[op.a]);
        break;
    }
  }

  void apply_col_inverse(const Op& op, std::vector<T>& z) const {
    switch (op.kind) {
      case OpKind::Axpy:
        if (!ring_.is_zero(z[op.a])) ring_.submul(z[op.b], ring_.neg(coefs_[op.coef]), z[op.a]);
        break;
      case OpKind::Mix: {
        const T* m = &coefs_[op.coef];
        T u = ring_.add(ring_.mul(m[3], z[op.a]), ring_.mul(ring_.neg(m[1]), z[op.b]));
        T v = ring_.add(ring_.mul(ring_.neg(m[2]), z[op.a]), ring_.mul(m[0], z[op.b]));
        z[op.a] = std::move(u);
        z[op.b] = std::move(v);
        break;
      }
      case OpKind::Negate:
        z[op.a] = ring_.neg(z[op.a]);
        break;
    }
  }

  Ring ring_;
  std::size_t nrows_;
  std::size_t ncols_;
  Options opt_;
  std::vector<Row> rows_;
  std::vector<char> row_active_;
  std::vector<char> col_active_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::uint32_t> col_units_;
  std::vector<std::vector<index_t>> col_rows_;

  std::vector<Pivot> pivots_;
  std::vector<T> coefs_;
  std::vector<Op> row_ops_;
  std::vector<Op> col_ops_;
  std::size_t col_log_phase_b_begin_ = 0;
  std::vector<LiftRecord> lift_records_;
  std::unordered_map<index_t, Row> uinv_;
  std::vector<index_t> survivors_cols_;
  std::vector<index_t> survivors_rows_;
  bool unit_phase_done_ = false;
  bool finished_ = false;
};

}  // namespace invhom::detail
