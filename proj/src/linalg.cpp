#include "invhom/linalg.hpp"

#include <memory>
#include <stdexcept>

#include "invhom/detail/elimination.hpp"

namespace invhom {

using detail::Eliminator;
using detail::IntegerRing;
using detail::PrimeField;
using IntElim = Eliminator<IntegerRing>;

namespace {

std::unique_ptr<IntElim> run_integer(const SparseIntMatrix& m, IntElim::Options opt) {
  IntegerRing ring;
  auto e = std::make_unique<IntElim>(ring, m.rows(), m.cols(), IntElim::rows_from(ring, m), opt);
  e->run();
  return e;
}

}  // namespace

SnfResult smith_normal_form(const SparseIntMatrix& m) {
  IntElim::Options opt;
  opt.row_log = true;
  opt.col_log = true;
  auto e = run_integer(m, opt);
  const auto& piv = e->pivots();

  std::vector<index_t> row_order, col_order;
  for (const auto& p : piv) {
    row_order.push_back(p.row);
    col_order.push_back(p.col);
  }
  for (index_t r : e->zero_rows()) row_order.push_back(r);
  for (index_t c : e->free_columns()) col_order.push_back(c);

  SnfResult out;
  for (const auto& p : piv) out.s.push_back(p.value);

  // Row k of u is row row_order[k] of U; build U column by column.
  std::vector<index_t> row_pos(m.rows());
  for (std::size_t k = 0; k < row_order.size(); ++k) row_pos[row_order[k]] = static_cast<index_t>(k);
  out.u = SparseIntMatrix(m.rows(), m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    IntVector x(m.rows());
    x[j] = 1;
    e->apply_row_ops(x);
    SparseVector col;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) col.push_back({row_pos[i], x[i]});
    out.u.set_column(j, std::move(col));
  }
  out.v = SparseIntMatrix(m.cols(), m.cols());
  for (std::size_t k = 0; k < col_order.size(); ++k) {
    IntVector w(m.cols());
    w[col_order[k]] = 1;
    e->apply_col_ops(w, false);
    out.v.set_column(k, to_sparse(w));
  }
  return out;
}

IntVector invariant_factors(const SparseIntMatrix& m) {
  auto e = run_integer(m, {});
  IntVector s;
  for (const auto& p : e->pivots()) s.push_back(p.value);
  return s;
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p) {
  PrimeField f(p);
  Eliminator<PrimeField>::Options opt;
  opt.normalize = false;
  Eliminator<PrimeField> e(f, m.rows(), m.cols(), Eliminator<PrimeField>::rows_from(f, m), opt);
  e.run();
  return e.rank();
}

std::size_t rank_over_q(const SparseIntMatrix& m) {
  IntElim::Options opt;
  opt.normalize = false;
  return run_integer(m, opt)->rank();
}

SparseIntMatrix kernel_basis(const SparseIntMatrix& m) {
  IntElim::Options opt;
  opt.col_log = true;
  opt.normalize = false;
  auto e = run_integer(m, opt);
  auto free = e->free_columns();
  SparseIntMatrix k(m.cols(), free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    IntVector w(m.cols());
    w[free[i]] = 1;
    e->apply_col_ops(w, false);
    k.set_column(i, to_sparse(w));
  }
  return k;
}

std::optional<IntVector> solve_in_lattice(const SparseIntMatrix& m, std::span<const Integer> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_in_lattice: length mismatch");
  IntElim::Options opt;
  opt.row_log = true;
  opt.col_log = true;
  opt.normalize = false;
  auto e = run_integer(m, opt);
  IntVector y(b.begin(), b.end());
  e->apply_row_ops(y);
  IntVector w(m.cols());
  for (const auto& p : e->pivots()) {
    if (!divides(p.value, y[p.row])) return std::nullopt;
    w[p.col] = y[p.row] / p.value;
    y[p.row] = 0;
  }
  for (const auto& v : y)
    if (v != 0) return std::nullopt;
  e->apply_col_ops(w, false);
  return w;
}

FgAbelianGroup present_fg_abelian(std::size_t ambient_rank, const SparseIntMatrix& relations) {
  if (relations.rows() != ambient_rank)
    throw std::invalid_argument("present_fg_abelian: relation length mismatch");
  IntElim::Options opt;
  opt.row_log = true;
  opt.row_inverse = true;
  std::shared_ptr<IntElim> e = run_integer(relations, opt);
  e->compact();

  std::vector<index_t> kept;
  IntVector factors;
  for (const auto& p : e->pivots()) {
    if (p.value == 1) continue;
    kept.push_back(p.row);
    factors.push_back(p.value);
  }
  auto zero = e->zero_rows();
  FgAbelianGroup g;
  g.free_rank = zero.size();
  g.torsion = factors;
  g.ambient_dim = ambient_rank;
  kept.insert(kept.end(), zero.begin(), zero.end());
  for (index_t r : kept) {
    IntVector v(ambient_rank);
    for (const auto& en : e->u_inverse_column(r)) v[en.col] = en.val;
    g.generators.push_back(std::move(v));
  }
  g.reducer = [e, kept, factors, ambient_rank](std::span<const Integer> y) {
    if (y.size() != ambient_rank) throw std::invalid_argument("reduce: length mismatch");
    IntVector x(y.begin(), y.end());
    e->apply_row_ops(x);
    IntVector out(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      out[k] = x[kept[k]];
      if (k < factors.size()) out[k] = mod_floor(out[k], factors[k]);
    }
    return out;
  };
  return g;
}

}  // namespace invhom
