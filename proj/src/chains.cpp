#include "invhom/chains.hpp"

#include <algorithm>
#include <unordered_map>

#include "invhom/linalg.hpp"
#include "invhom/parallel.hpp"

namespace invhom {

namespace {

using Terms = std::vector<std::pair<tuple_t, int>>;

void merge_terms(Terms& t) {
  std::sort(t.begin(), t.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    tuple_t code = t[i].first;
    int sum = 0;
    for (; i < t.size() && t[i].first == code; ++i) sum += t[i].second;
    if (sum != 0) t[out++] = {code, sum};
  }
  t.resize(out);
}

// Unmerged faces of [e_0|...|e_{n-1}].
void append_faces(const FiniteGroup& g, const elem_t* e, std::size_t n, int scale, Terms& out) {
  if (n <= 1) return;
  const tuple_t ord = g.order;
  auto code_skipping = [&](std::size_t skip) {
    tuple_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != skip) c = c * ord + e[i];
    return c;
  };
  out.push_back({code_skipping(0), scale});
  for (std::size_t k = 0; k + 1 < n; ++k) {
    tuple_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k + 1) continue;
      elem_t v = (i == k) ? g.mul(e[k], e[k + 1]) : e[i];
      c = c * ord + v;
    }
    out.push_back({c, (k % 2 == 0) ? -scale : scale});
  }
  out.push_back({code_skipping(n - 1), (n % 2 == 0) ? scale : -scale});
}

SparseVector to_column(const Terms& t) {
  SparseVector col;
  col.reserve(t.size());
  for (const auto& [idx, c] : t) col.push_back({static_cast<index_t>(idx), c});
  return col;
}

SparseIntMatrix assemble(std::size_t rows, std::vector<SparseVector> cols) {
  SparseIntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
  return m;
}

std::vector<tuple_t> orbit_of_tuple(const GroupAction& a, std::size_t degree, tuple_t code) {
  std::vector<tuple_t> m;
  for (elem_t q = 0; q < a.q.order; ++q) m.push_back(act_on_tuple(a, q, degree, code));
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

std::size_t lookup(const std::vector<tuple_t>& sorted, tuple_t code) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), code);
  if (it == sorted.end() || *it != code) throw std::logic_error("tuple missing from basis");
  return static_cast<std::size_t>(it - sorted.begin());
}

void check_budget(const std::vector<double>& dims, std::size_t max_degree,
                  const BuildOptions& opt) {
  double bytes = estimate_bytes(dims, static_cast<double>(max_degree + 1));
  if (bytes > static_cast<double>(opt.memory_budget))
    throw BudgetExceeded("estimated " + std::to_string(static_cast<long long>(bytes / 1048576.0)) +
                         " MiB exceeds the memory budget of " +
                         std::to_string(opt.memory_budget / 1048576) + " MiB");
}

std::vector<double> tuple_dims(std::size_t order, std::size_t max_degree) {
  std::vector<double> d;
  double x = 1;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    d.push_back(x);
    x *= static_cast<double>(order);
  }
  return d;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ComplexSlice empty_like(const std::string& label, std::size_t max_degree) {
  ComplexSlice c;
  c.label = label;
  c.max_degree = max_degree;
  c.dims.assign(max_degree + 1, 0);
  c.boundary.resize(max_degree + 1);
  c.basis.resize(max_degree + 1);
  return c;
}

}  // namespace

double estimate_bytes(const std::vector<double>& dims, double entries_per_column) {
  double total = 0;
  for (double d : dims) total += d * (entries_per_column * 64.0 + 48.0);
  return total;
}

bool fits_budget(std::size_t order, std::size_t max_degree, const BuildOptions& opt) {
  try {
    check_budget(tuple_dims(order, max_degree), max_degree, opt);
  } catch (const BudgetExceeded&) {
    return false;
  }
  return true;
}

tuple_t encode_tuple(std::size_t order, const std::vector<elem_t>& entries) {
  tuple_t c = 0;
  for (elem_t e : entries) {
    if (e >= order) throw std::out_of_range("tuple entry out of range");
    c = c * order + e;
  }
  return c;
}

std::vector<elem_t> decode_tuple(std::size_t order, std::size_t degree, tuple_t code) {
  std::vector<elem_t> e(degree);
  for (std::size_t i = degree; i-- > 0;) {
    e[i] = static_cast<elem_t>(code % order);
    code /= order;
  }
  return e;
}

tuple_t tuple_count(std::size_t order, std::size_t degree) {
  tuple_t t = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    if (t > (tuple_t{1} << 40) / std::max<std::size_t>(order, 1))
      throw BudgetExceeded("tuple count overflows the supported range");
    t *= order;
  }
  return t;
}

std::vector<std::pair<tuple_t, int>> bar_boundary(const FiniteGroup& g,
                                                   const std::vector<elem_t>& entries) {
  if (entries.empty()) throw std::invalid_argument("bar_boundary: degree 0 has no boundary");
  for (elem_t e : entries)
    if (e >= g.order) throw std::out_of_range("tuple entry out of range");
  Terms t;
  append_faces(g, entries.data(), entries.size(), 1, t);
  merge_terms(t);
  return t;
}

tuple_t act_on_tuple(const GroupAction& a, elem_t q, std::size_t degree, tuple_t code) {
  const tuple_t ord = a.g.order;
  const Permutation& p = a.perm[q];
  tuple_t out = 0, scale = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    out += static_cast<tuple_t>(p[code % ord]) * scale;
    code /= ord;
    scale *= ord;
  }
  return out;
}

TupleOrbits tuple_orbits(const GroupAction& a, std::size_t degree) {
  tuple_t total = tuple_count(a.g.order, degree);
  TupleOrbits o;
  o.degree = degree;
  const std::uint32_t unset = ~std::uint32_t{0};
  o.orbit_of.assign(total, unset);
  std::vector<tuple_t> img;
  for (tuple_t t = 0; t < total; ++t) {
    if (o.orbit_of[t] != unset) continue;
    auto idx = static_cast<std::uint32_t>(o.reps.size());
    img.clear();
    for (elem_t q = 0; q < a.q.order; ++q) img.push_back(act_on_tuple(a, q, degree, t));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    for (tuple_t u : img) o.orbit_of[u] = idx;
    o.reps.push_back(t);
    o.sizes.push_back(static_cast<std::uint32_t>(img.size()));
    o.stabilizer.push_back(static_cast<std::uint32_t>(a.q.order / img.size()));
  }
  return o;
}

std::vector<std::vector<tuple_t>> TupleOrbits::members() const {
  std::vector<std::vector<tuple_t>> m(reps.size());
  for (tuple_t t = 0; t < orbit_of.size(); ++t) m[orbit_of[t]].push_back(t);
  return m;
}

Integer orbit_count(const GroupAction& a, std::size_t degree) {
  Integer sum = 0;
  for (const auto& p : a.perm) {
    unsigned long fixed = 0;
    for (elem_t x = 0; x < a.g.order; ++x)
      if (p[x] == x) ++fixed;
    Integer f;
    mpz_ui_pow_ui(f.get_mpz_t(), fixed, degree);
    sum += f;
  }
  return sum / static_cast<unsigned long>(a.q.order);
}

void verify_complex(const ComplexSlice& c) {
  if (c.dims.size() != c.max_degree + 1 || c.boundary.size() != c.max_degree + 1)
    throw std::logic_error("complex has inconsistent degree data");
  for (std::size_t n = 0; n <= c.max_degree; ++n) {
    const auto& d = c.boundary[n];
    std::size_t rows = n == 0 ? 0 : c.dims[n - 1];
    if (d.cols() != c.dims[n] || d.rows() != rows)
      throw std::logic_error("boundary matrix has wrong shape in degree " + std::to_string(n));
  }
  for (std::size_t n = 2; n <= c.max_degree; ++n) {
    auto dd = c.boundary[n - 1].multiply(c.boundary[n]);
    if (c.modulus != 0) dd = dd.reduced_mod(c.modulus);
    if (!dd.is_zero()) throw std::logic_error("d o d != 0 in degree " + std::to_string(n));
  }
}

void verify_chain_map(const ChainMap& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  std::size_t top = std::min({f.max_degree(), s.max_degree, t.max_degree});
  for (std::size_t n = 0; n <= top; ++n)
    if (f.maps[n].rows() != t.dims[n] || f.maps[n].cols() != s.dims[n])
      throw std::logic_error("chain map has wrong shape in degree " + std::to_string(n));
  for (std::size_t n = 1; n <= top; ++n) {
    auto lhs = t.d(n).multiply(f.maps[n]);
    auto rhs = f.maps[n - 1].multiply(s.d(n));
    auto diff = lhs.minus(rhs);
    if (t.modulus != 0) diff = diff.reduced_mod(t.modulus);
    if (!diff.is_zero())
      throw std::logic_error("chain map does not commute with d in degree " + std::to_string(n));
  }
}

ComplexPtr reduced_complex(const ComplexSlice& c) {
  auto r = std::make_shared<ComplexSlice>(c);
  r->reduced = true;
  r->label = c.label + " (reduced)";
  r->dims[0] = 0;
  r->basis[0].clear();
  r->boundary[0] = SparseIntMatrix(0, 0);
  if (r->max_degree >= 1) r->boundary[1] = SparseIntMatrix(0, r->dims[1]);
  return r;
}

ComplexPtr bar_complex(const FiniteGroup& g, std::size_t max_degree, const BuildOptions& opt) {
  check_budget(tuple_dims(g.order, max_degree), max_degree, opt);
  auto c = std::make_shared<ComplexSlice>(empty_like("bar(" + g.name + ")", max_degree));
  for (std::size_t n = 0; n <= max_degree; ++n) {
    tuple_t count = tuple_count(g.order, n);
    c->dims[n] = count;
    c->basis[n].resize(count);
    for (tuple_t t = 0; t < count; ++t) c->basis[n][t] = t;
    std::size_t rows = n == 0 ? 0 : c->dims[n - 1];
    std::vector<SparseVector> cols(count);
    parallel_for(count, [&](std::size_t t) {
      auto e = decode_tuple(g.order, n, t);
      Terms terms;
      append_faces(g, e.data(), n, 1, terms);
      merge_terms(terms);
      cols[t] = to_column(terms);
    });
    c->boundary[n] = assemble(rows, std::move(cols));
  }
  if (opt.verify) verify_complex(*c);
  return c;
}

namespace {

ComplexPtr orbit_complex(const GroupAction& a, std::size_t max_degree, const BuildOptions& opt,
                         bool invariant) {
  check_budget(tuple_dims(a.g.order, max_degree), max_degree, opt);
  std::string label = std::string(invariant ? "invariant" : "coinvariant") + "(" + a.g.name + ")";
  auto c = std::make_shared<ComplexSlice>(empty_like(label, max_degree));
  std::vector<TupleOrbits> orbits;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    orbits.push_back(tuple_orbits(a, n));
    c->dims[n] = orbits[n].count();
    c->basis[n] = orbits[n].reps;
  }
  c->boundary[0] = SparseIntMatrix(0, c->dims[0]);
  for (std::size_t n = 1; n <= max_degree; ++n) {
    const auto& on = orbits[n];
    const auto& below = orbits[n - 1];
    std::vector<SparseVector> cols(on.count());
    parallel_for(on.count(), [&](std::size_t k) {
      Terms terms;
      if (invariant) {
        for (tuple_t t : orbit_of_tuple(a, n, on.reps[k])) {
          auto e = decode_tuple(a.g.order, n, t);
          append_faces(a.g, e.data(), n, 1, terms);
        }
      } else {
        auto e = decode_tuple(a.g.order, n, on.reps[k]);
        append_faces(a.g, e.data(), n, 1, terms);
      }
      merge_terms(terms);
      Terms by_orbit;
      if (invariant) {
        // Coefficient of an orbit sum is that of its representative; every
        // member must carry the same coefficient.
        std::unordered_map<std::uint32_t, std::pair<int, std::uint32_t>> seen;
        for (const auto& [u, coef] : terms) {
          auto o = below.orbit_of[u];
          auto [it, fresh] = seen.try_emplace(o, coef, 0);
          if (!fresh && it->second.first != coef)
            throw std::logic_error("invariant boundary is not constant on an orbit");
          ++it->second.second;
        }
        for (const auto& [o, info] : seen) {
          if (opt.verify && info.second != below.sizes[o])
            throw std::logic_error("invariant boundary is not constant on an orbit");
          by_orbit.push_back({o, info.first});
        }
      } else {
        for (const auto& [u, coef] : terms) by_orbit.push_back({below.orbit_of[u], coef});
      }
      merge_terms(by_orbit);
      cols[k] = to_column(by_orbit);
    });
    c->boundary[n] = assemble(c->dims[n - 1], std::move(cols));
  }
  if (opt.verify) verify_complex(*c);
  return c;
}

std::uint32_t stabilizer_order(const GroupAction& a, std::size_t degree, tuple_t code) {
  std::uint32_t s = 0;
  for (elem_t q = 0; q < a.q.order; ++q)
    if (act_on_tuple(a, q, degree, code) == code) ++s;
  return s;
}

}  // namespace

ComplexPtr invariant_complex(const GroupAction& a, std::size_t max_degree,
                             const BuildOptions& opt) {
  return orbit_complex(a, max_degree, opt, true);
}

ComplexPtr coinvariant_complex(const GroupAction& a, std::size_t max_degree,
                               const BuildOptions& opt) {
  return orbit_complex(a, max_degree, opt, false);
}

ChainMap norm_chain_map(const GroupAction& a, ComplexPtr coinv, ComplexPtr inv) {
  ChainMap f{coinv, inv, {}};
  std::size_t top = std::min(coinv->max_degree, inv->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    if (coinv->basis[n] != inv->basis[n]) throw std::invalid_argument("norm map: bases differ");
    std::size_t dim = inv->dims[n];
    SparseIntMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      // Degree 0 is the identity on the single generator.
      std::uint32_t s = n == 0 ? 1 : stabilizer_order(a, n, inv->basis[n][k]);
      m.set(k, k, s);
    }
    f.maps.push_back(std::move(m));
  }
  return f;
}

ComplexPtr quotient_complex_D(const GroupAction& a, const ComplexSlice& inv) {
  if (!is_prime(a.q.order))
    throw std::invalid_argument("quotient complex D requires Q of prime order");
  const Integer p(static_cast<unsigned long>(a.q.order));
  auto c = std::make_shared<ComplexSlice>(empty_like("D(" + a.g.name + ")", inv.max_degree));
  c->modulus = p;
  c->reduced = inv.reduced;
  std::vector<std::vector<index_t>> fixed(inv.max_degree + 1);
  for (std::size_t n = 1; n <= inv.max_degree; ++n) {
    for (std::size_t k = 0; k < inv.dims[n]; ++k)
      if (stabilizer_order(a, n, inv.basis[n][k]) == a.q.order) {
        fixed[n].push_back(static_cast<index_t>(k));
        c->basis[n].push_back(inv.basis[n][k]);
      }
    c->dims[n] = fixed[n].size();
  }
  c->boundary[0] = SparseIntMatrix(0, 0);
  for (std::size_t n = 1; n <= inv.max_degree; ++n) {
    if (n == 1) {
      c->boundary[1] = SparseIntMatrix(0, c->dims[1]);
      continue;
    }
    auto m = inv.d(n).select_columns(fixed[n]).select_rows(fixed[n - 1]);
    c->boundary[n] = m.reduced_mod(p);
  }
  verify_complex(*c);
  return c;
}

ChainMap projection_to_D_chain_map(ComplexPtr inv, ComplexPtr d) {
  ChainMap f{inv, d, {}};
  std::size_t top = std::min(inv->max_degree, d->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    SparseIntMatrix m(d->dims[n], inv->dims[n]);
    for (std::size_t k = 0; k < d->dims[n]; ++k) m.set(k, lookup(inv->basis[n], d->basis[n][k]), 1);
    f.maps.push_back(std::move(m));
  }
  return f;
}

ChainMap fixed_inclusion_chain_map(const GroupAction& a, ComplexPtr bar_fixed, ComplexPtr inv) {
  Subgroup h = fixed_subgroup(a);
  ChainMap f{bar_fixed, inv, {}};
  std::size_t top = std::min(bar_fixed->max_degree, inv->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    SparseIntMatrix m(inv->dims[n], bar_fixed->dims[n]);
    for (std::size_t t = 0; t < bar_fixed->dims[n]; ++t) {
      auto e = decode_tuple(h.order(), n, t);
      for (auto& x : e) x = h.members[x];
      tuple_t code = encode_tuple(a.g.order, e);
      if (n == 0 && inv->dims[0] == 0) continue;
      m.set(lookup(inv->basis[n], code), t, 1);
    }
    f.maps.push_back(std::move(m));
  }
  return f;
}

ChainMap invariant_inclusion_chain_map(const GroupAction& a, ComplexPtr inv, ComplexPtr bar) {
  ChainMap f{inv, bar, {}};
  std::size_t top = std::min(inv->max_degree, bar->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    SparseIntMatrix m(bar->dims[n], inv->dims[n]);
    for (std::size_t k = 0; k < inv->dims[n]; ++k) {
      SparseVector col;
      for (tuple_t t : orbit_of_tuple(a, n, inv->basis[n][k]))
        col.push_back({static_cast<index_t>(t), 1});
      m.set_column(k, std::move(col));
    }
    f.maps.push_back(std::move(m));
  }
  return f;
}

ChainMap action_chain_map(const GroupAction& a, elem_t q, ComplexPtr bar) {
  ChainMap f{bar, bar, {}};
  for (std::size_t n = 0; n <= bar->max_degree; ++n) {
    SparseIntMatrix m(bar->dims[n], bar->dims[n]);
    for (tuple_t t = 0; t < bar->dims[n]; ++t)
      m.set_column(t, {{static_cast<index_t>(act_on_tuple(a, q, n, t)), 1}});
    f.maps.push_back(std::move(m));
  }
  return f;
}

ChainMap subgroup_inclusion_chain_map(const Subgroup& k, ComplexPtr bar_k, ComplexPtr bar_g) {
  ChainMap f{bar_k, bar_g, {}};
  std::size_t top = std::min(bar_k->max_degree, bar_g->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    SparseIntMatrix m(bar_g->dims[n], bar_k->dims[n]);
    for (tuple_t t = 0; t < bar_k->dims[n]; ++t) {
      if (n == 0 && bar_g->dims[0] == 0) continue;
      auto e = decode_tuple(k.order(), n, t);
      for (auto& x : e) x = k.members[x];
      m.set_column(t, {{static_cast<index_t>(encode_tuple(k.parent.order, e)), 1}});
    }
    f.maps.push_back(std::move(m));
  }
  return f;
}

ChainMap invariant_subgroup_inclusion_chain_map(const GroupAction& a, const Subgroup& k,
                                                ComplexPtr inv_k, ComplexPtr inv_g) {
  ChainMap f{inv_k, inv_g, {}};
  std::size_t top = std::min(inv_k->max_degree, inv_g->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    SparseIntMatrix m(inv_g->dims[n], inv_k->dims[n]);
    for (std::size_t j = 0; j < inv_k->dims[n]; ++j) {
      auto e = decode_tuple(k.order(), n, inv_k->basis[n][j]);
      for (auto& x : e) x = k.members[x];
      tuple_t code = encode_tuple(a.g.order, e);
      tuple_t rep = orbit_of_tuple(a, n, code).front();
      m.set_column(j, {{static_cast<index_t>(lookup(inv_g->basis[n], rep)), 1}});
    }
    f.maps.push_back(std::move(m));
  }
  return f;
}

namespace {

// tau of one G-tuple as unmerged K-tuple codes (local indices).
void transfer_terms(const Subgroup& k, const CosetSystem& cs, const std::vector<elem_t>& e,
                    Terms& out) {
  const FiniteGroup& g = k.parent;
  const tuple_t kord = k.order();
  for (elem_t x : cs.reps) {
    elem_t y = x;
    tuple_t code = 0;
    for (elem_t gi : e) {
      elem_t z = g.mul(y, gi);
      elem_t r = cs.rep_of[z];
      code = code * kord + k.local(g.mul(z, g.inv(r)));
      y = r;
    }
    out.push_back({code, 1});
  }
}

}  // namespace

ChainMap transfer_chain_map(const Subgroup& k, const CosetSystem& cs, ComplexPtr bar_g,
                            ComplexPtr bar_k) {
  ChainMap f{bar_g, bar_k, {}};
  std::size_t top = std::min(bar_g->max_degree, bar_k->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    std::vector<SparseVector> cols(bar_g->dims[n]);
    parallel_for(bar_g->dims[n], [&](std::size_t t) {
      if (n == 0 && bar_k->dims[0] == 0) return;
      Terms terms;
      transfer_terms(k, cs, decode_tuple(k.parent.order, n, t), terms);
      merge_terms(terms);
      cols[t] = to_column(terms);
    });
    f.maps.push_back(assemble(bar_k->dims[n], std::move(cols)));
  }
  return f;
}

ChainMap invariant_transfer_chain_map(const GroupAction& a, const Subgroup& k,
                                      const CosetSystem& cs, ComplexPtr inv_g, ComplexPtr inv_k) {
  GroupAction ak = restrict_action(a, k);
  if (!is_equivariant(a, cs) && !ak.is_trivial())
    throw std::invalid_argument(
        "invariant transfer needs equivariant coset representatives or a trivial action on K");
  ChainMap f{inv_g, inv_k, {}};
  std::size_t top = std::min(inv_g->max_degree, inv_k->max_degree);
  for (std::size_t n = 0; n <= top; ++n) {
    TupleOrbits ok = tuple_orbits(ak, n);
    std::vector<SparseVector> cols(inv_g->dims[n]);
    parallel_for(inv_g->dims[n], [&](std::size_t j) {
      if (n == 0 && inv_k->dims[0] == 0) return;
      Terms terms;
      for (tuple_t t : orbit_of_tuple(a, n, inv_g->basis[n][j]))
        transfer_terms(k, cs, decode_tuple(a.g.order, n, t), terms);
      merge_terms(terms);
      std::unordered_map<std::uint32_t, std::pair<int, std::uint32_t>> seen;
      for (const auto& [u, coef] : terms) {
        auto o = ok.orbit_of[u];
        auto [it, fresh] = seen.try_emplace(o, coef, 0);
        if (!fresh && it->second.first != coef)
          throw std::logic_error("transfer image is not invariant");
        ++it->second.second;
      }
      Terms by_orbit;
      for (const auto& [o, info] : seen) {
        if (info.second != ok.sizes[o]) throw std::logic_error("transfer image is not invariant");
        by_orbit.push_back({lookup(inv_k->basis[n], ok.reps[o]), info.first});
      }
      merge_terms(by_orbit);
      cols[j] = to_column(by_orbit);
    });
    f.maps.push_back(assemble(inv_k->dims[n], std::move(cols)));
  }
  return f;
}

ComplexPtr invariant_subcomplex(const ComplexSlice& c,
                                const std::vector<std::vector<SparseIntMatrix>>& automorphisms) {
  auto out = std::make_shared<ComplexSlice>(empty_like("invariants(" + c.label + ")", c.max_degree));
  std::vector<SparseIntMatrix> kernels;
  for (std::size_t n = 0; n <= c.max_degree; ++n) {
    std::size_t dim = c.dims[n];
    SparseIntMatrix stacked(dim * automorphisms.size(), dim);
    for (std::size_t a = 0; a < automorphisms.size(); ++a) {
      auto diff = automorphisms[a].at(n).minus(SparseIntMatrix::identity(dim));
      for (std::size_t j = 0; j < dim; ++j)
        for (const auto& e : diff.column(j)) stacked.set(a * dim + e.index, j, e.value);
    }
    kernels.push_back(kernel_basis(stacked));
    out->dims[n] = kernels.back().cols();
  }
  out->boundary[0] = SparseIntMatrix(0, out->dims[0]);
  for (std::size_t n = 1; n <= c.max_degree; ++n) {
    auto image = c.d(n).multiply(kernels[n]);
    SparseIntMatrix m(out->dims[n - 1], out->dims[n]);
    for (std::size_t j = 0; j < image.cols(); ++j) {
      auto target = to_dense(image.column(j), image.rows());
      auto sol = solve_in_lattice(kernels[n - 1], target);
      if (!sol) throw std::logic_error("boundary of an invariant chain is not invariant");
      m.set_column(j, to_sparse(*sol));
    }
    out->boundary[n] = std::move(m);
  }
  verify_complex(*out);
  return out;
}

ComplexPtr s1_counterexample_complex() {
  ComplexSlice f = empty_like("cellular(R) (x) Z", 2);
  f.dims = {1, 1, 0};
  f.boundary[0] = SparseIntMatrix(0, 1);
  f.boundary[1] = SparseIntMatrix(1, 1);
  f.boundary[2] = SparseIntMatrix(1, 0);
  std::vector<SparseIntMatrix> reflection{SparseIntMatrix::identity(1),
                                          SparseIntMatrix::identity(1).scaled(-1),
                                          SparseIntMatrix(0, 0)};
  auto c = invariant_subcomplex(f, {reflection});
  auto out = std::make_shared<ComplexSlice>(*c);
  out->label = "S1 model invariants";
  return out;
}

ChainMap compose(const ChainMap& second, const ChainMap& first) {
  ChainMap f{first.source, second.target, {}};
  std::size_t top = std::min(second.max_degree(), first.max_degree());
  for (std::size_t n = 0; n <= top; ++n) f.maps.push_back(second.maps[n].multiply(first.maps[n]));
  return f;
}

}  // namespace invhom
