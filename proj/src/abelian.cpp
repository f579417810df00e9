#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "invhom/linalg.hpp"

namespace invhom {

namespace {

// Relation columns of g in its own coordinates: t_i * e_i for each torsion summand.
std::vector<IntVector> relation_columns(const FgAbelianGroup& g) {
  std::vector<IntVector> cols;
  std::size_t n = g.num_generators();
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    IntVector c(n);
    c[i] = g.torsion[i];
    cols.push_back(std::move(c));
  }
  return cols;
}

SparseIntMatrix columns_to_matrix(std::size_t rows, const std::vector<IntVector>& cols) {
  return SparseIntMatrix::from_columns(rows, cols);
}

void require_same_group(const FgAbelianGroup& a, const FgAbelianGroup& b, const char* what) {
  if (a.free_rank != b.free_rank || a.torsion != b.torsion)
    throw std::invalid_argument(std::string(what) + ": group mismatch");
}

}  // namespace

FgAbelianGroup FgAbelianGroup::from_invariants(std::size_t free_rank, IntVector torsion) {
  FgAbelianGroup g;
  g.free_rank = free_rank;
  g.torsion = std::move(torsion);
  std::size_t n = g.num_generators();
  g.ambient_dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    g.generators.push_back(std::move(e));
  }
  IntVector t = g.torsion;
  g.reducer = [t, n](std::span<const Integer> y) {
    if (y.size() != n) throw std::invalid_argument("reduce: length mismatch");
    IntVector out(y.begin(), y.end());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = mod_floor(out[i], t[i]);
    return out;
  };
  return g;
}

Integer FgAbelianGroup::order() const {
  if (free_rank > 0) return 0;
  Integer o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

Integer FgAbelianGroup::exponent() const {
  Integer e = 1;
  for (const auto& t : torsion) e = lcm(e, t);
  return e;
}

IntVector FgAbelianGroup::normalize(IntVector coords) const {
  if (coords.size() != num_generators())
    throw std::invalid_argument("normalize: coordinate length mismatch");
  for (std::size_t i = 0; i < torsion.size(); ++i) coords[i] = mod_floor(coords[i], torsion[i]);
  return coords;
}

IntVector FgAbelianGroup::reduce(std::span<const Integer> ambient) const {
  if (!reducer) throw std::logic_error("group carries no generator data");
  return reducer(ambient);
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::vector<std::pair<Integer, std::size_t>> runs;
  for (const auto& t : torsion) {
    if (!runs.empty() && runs.back().first == t)
      ++runs.back().second;
    else
      runs.push_back({t, 1});
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, k] : runs) {
    if (!first) os << " + ";
    first = false;
    if (k == 1)
      os << "Z/" << t.get_str();
    else
      os << "(Z/" << t.get_str() << ")^" << k;
  }
  if (free_rank > 0) {
    if (!first) os << " + ";
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
  }
  return os.str();
}

bool isomorphic(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

FgAbelianGroup abelian_group(std::size_t free_rank, const IntVector& elementary) {
  std::size_t n = elementary.size();
  SparseIntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (elementary[i] == 0)
      ++free_rank;
    else
      d.set(i, i, abs(elementary[i]));
  }
  IntVector t;
  for (const auto& f : invariant_factors(d))
    if (f != 1) t.push_back(f);
  return FgAbelianGroup::from_invariants(free_rank, t);
}

IntVector AbelianHom::apply(std::span<const Integer> x) const {
  if (x.size() != source.num_generators()) throw std::invalid_argument("apply: length mismatch");
  IntVector y(target.num_generators());
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (matrix[i][j] != 0 && x[j] != 0) y[i] += matrix[i][j] * x[j];
  return target.normalize(std::move(y));
}

IntVector AbelianHom::column(std::size_t j) const {
  IntVector c(target.num_generators());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = matrix[i][j];
  return c;
}

AbelianHom make_hom(const FgAbelianGroup& source, const FgAbelianGroup& target,
                    std::vector<IntVector> matrix) {
  std::size_t m = target.num_generators(), n = source.num_generators();
  if (matrix.size() != m) throw std::invalid_argument("make_hom: row count mismatch");
  for (const auto& row : matrix)
    if (row.size() != n) throw std::invalid_argument("make_hom: column count mismatch");
  AbelianHom f{source, target, std::move(matrix)};
  for (std::size_t j = 0; j < n; ++j) {
    IntVector c = target.normalize(f.column(j));
    for (std::size_t i = 0; i < m; ++i) f.matrix[i][j] = c[i];
  }
  for (std::size_t j = 0; j < source.torsion.size(); ++j) {
    IntVector c = f.column(j);
    for (auto& x : c) x *= source.torsion[j];
    c = target.normalize(std::move(c));
    for (const auto& x : c)
      if (x != 0) throw std::invalid_argument("make_hom: matrix does not respect relations");
  }
  return f;
}

AbelianHom make_hom_from_columns(const FgAbelianGroup& source, const FgAbelianGroup& target,
                                 const std::vector<IntVector>& columns) {
  std::size_t m = target.num_generators(), n = source.num_generators();
  if (columns.size() != n) throw std::invalid_argument("make_hom: column count mismatch");
  std::vector<IntVector> mat(m, IntVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != m) throw std::invalid_argument("make_hom: column length mismatch");
    for (std::size_t i = 0; i < m; ++i) mat[i][j] = columns[j][i];
  }
  return make_hom(source, target, std::move(mat));
}

AbelianHom compose(const AbelianHom& second, const AbelianHom& first) {
  require_same_group(second.source, first.target, "compose");
  std::size_t m = second.target.num_generators(), k = first.target.num_generators(),
              n = first.source.num_generators();
  std::vector<IntVector> mat(m, IntVector(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (second.matrix[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) mat[i][j] += second.matrix[i][l] * first.matrix[l][j];
    }
  return make_hom(first.source, second.target, std::move(mat));
}

AbelianHom identity_hom(const FgAbelianGroup& g) { return scalar_hom(g, 1); }

AbelianHom scalar_hom(const FgAbelianGroup& g, const Integer& k) {
  std::size_t n = g.num_generators();
  std::vector<IntVector> mat(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) mat[i][i] = k;
  return make_hom(g, g, std::move(mat));
}

bool is_zero_hom(const AbelianHom& f) {
  for (const auto& row : f.matrix)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

bool homs_equal(const AbelianHom& f, const AbelianHom& g) {
  if (!isomorphic(f.source, g.source) || !isomorphic(f.target, g.target)) return false;
  for (std::size_t j = 0; j < f.source.num_generators(); ++j) {
    IntVector a = f.column(j), b = g.column(j);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    for (const auto& x : f.target.normalize(std::move(a)))
      if (x != 0) return false;
  }
  return true;
}

FgAbelianGroup subgroup_generated(const FgAbelianGroup& g, const std::vector<IntVector>& gens) {
  std::size_t b = g.num_generators();
  std::size_t w = gens.size();
  auto rel = relation_columns(g);
  // Lattice of coefficient vectors c with sum c_i gens_i = 0 in g.
  std::vector<IntVector> cols = gens;
  for (const auto& r : rel) {
    IntVector neg = r;
    for (auto& x : neg) x = -x;
    cols.push_back(std::move(neg));
  }
  SparseIntMatrix a = columns_to_matrix(b, cols);
  SparseIntMatrix k = kernel_basis(a);
  SparseIntMatrix relations(w, k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j) {
    SparseVector col;
    for (const auto& e : k.column(j))
      if (e.index < w) col.push_back(e);
    relations.set_column(j, std::move(col));
  }
  FgAbelianGroup s = present_fg_abelian(w, relations);

  FgAbelianGroup out;
  out.free_rank = s.free_rank;
  out.torsion = s.torsion;
  out.ambient_dim = b;
  for (const auto& coeffs : s.generators) {
    IntVector v(b);
    for (std::size_t i = 0; i < w; ++i)
      if (coeffs[i] != 0)
        for (std::size_t r = 0; r < b; ++r) v[r] += coeffs[i] * gens[i][r];
    out.generators.push_back(g.normalize(std::move(v)));
  }
  std::vector<IntVector> span_cols = gens;
  span_cols.insert(span_cols.end(), rel.begin(), rel.end());
  SparseIntMatrix spanning = columns_to_matrix(b, span_cols);
  auto sub_reducer = s.reducer;
  out.reducer = [spanning, sub_reducer, w, b](std::span<const Integer> x) {
    if (x.size() != b) throw std::invalid_argument("reduce: length mismatch");
    auto sol = solve_in_lattice(spanning, x);
    if (!sol) throw std::domain_error("element is not in the subgroup");
    IntVector c(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(w));
    return sub_reducer(c);
  };
  return out;
}

bool in_subgroup(const FgAbelianGroup& g, const std::vector<IntVector>& gens,
                 std::span<const Integer> x) {
  std::vector<IntVector> cols = gens;
  auto rel = relation_columns(g);
  cols.insert(cols.end(), rel.begin(), rel.end());
  return solve_in_lattice(columns_to_matrix(g.num_generators(), cols), x).has_value();
}

FgAbelianGroup kernel_of_hom(const AbelianHom& f) {
  std::size_t a = f.source.num_generators(), b = f.target.num_generators();
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < a; ++j) cols.push_back(f.column(j));
  for (auto r : relation_columns(f.target)) {
    for (auto& x : r) x = -x;
    cols.push_back(std::move(r));
  }
  SparseIntMatrix k = kernel_basis(columns_to_matrix(b, cols));
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    IntVector v(a);
    for (const auto& e : k.column(j))
      if (e.index < a) v[e.index] = e.value;
    gens.push_back(std::move(v));
  }
  return subgroup_generated(f.source, gens);
}

FgAbelianGroup image_of_hom(const AbelianHom& f) {
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < f.source.num_generators(); ++j) gens.push_back(f.column(j));
  return subgroup_generated(f.target, gens);
}

bool is_injective(const AbelianHom& f) { return kernel_of_hom(f).is_trivial(); }

bool is_surjective(const AbelianHom& f) {
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < f.source.num_generators(); ++j) gens.push_back(f.column(j));
  std::size_t n = f.target.num_generators();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    if (!in_subgroup(f.target, gens, e)) return false;
  }
  return true;
}

bool is_isomorphism(const AbelianHom& f) { return is_injective(f) && is_surjective(f); }

FgAbelianGroup fixed_points_of_hom_family(const FgAbelianGroup& g,
                                          const std::vector<AbelianHom>& actions) {
  std::size_t n = g.num_generators();
  if (actions.empty()) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n);
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return subgroup_generated(g, gens);
  }
  std::size_t k = actions.size();
  std::size_t t = g.torsion.size();
  // Columns: x (n of them) then one block of relation multipliers per action.
  std::vector<IntVector> cols(n + k * t, IntVector(k * n));
  for (std::size_t a = 0; a < k; ++a) {
    const auto& rho = actions[a];
    require_same_group(rho.source, g, "fixed_points");
    require_same_group(rho.target, g, "fixed_points");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cols[j][a * n + i] = rho.matrix[i][j] - (i == j ? 1 : 0);
    for (std::size_t i = 0; i < t; ++i) cols[n + a * t + i][a * n + i] = -g.torsion[i];
  }
  SparseIntMatrix kb = kernel_basis(columns_to_matrix(k * n, cols));
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < kb.cols(); ++j) {
    IntVector v(n);
    for (const auto& e : kb.column(j))
      if (e.index < n) v[e.index] = e.value;
    gens.push_back(std::move(v));
  }
  return subgroup_generated(g, gens);
}

}  // namespace invhom
