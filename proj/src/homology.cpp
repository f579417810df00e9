#include "invhom/homology.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>

#include "invhom/detail/elimination.hpp"
#include "invhom/detail/rings.hpp"
#include "invhom/field_rank.hpp"

namespace invhom {

namespace {

using detail::Eliminator;
using detail::IntegerRing;
using detail::PrimeField;

bool is_prime(const Integer& m) {
  return m > 1 && mpz_probab_prime_p(m.get_mpz_t(), 30) > 0;
}

std::uint32_t small_prime(const Integer& m) {
  if (!is_prime(m) || m >= Integer(1UL << 31))
    throw std::invalid_argument("field coefficients need a prime below 2^31");
  return static_cast<std::uint32_t>(m.get_ui());
}

void require_degree(const ComplexSlice& c, std::size_t n) {
  if (n + 1 > c.max_degree)
    throw std::invalid_argument("homology in degree " + std::to_string(n) +
                                " needs the complex through degree " + std::to_string(n + 1));
}

bool is_cycle(const SparseIntMatrix& dn, std::span<const Integer> z, const Integer& modulus) {
  auto b = dn.multiply(z);
  for (auto& v : b) {
    if (modulus != 0) v = mod_floor(v, modulus);
    if (v != 0) return false;
  }
  return true;
}

// Kernel of d_n modulo the image of d_{n+1}. The first elimination gives
// ker d_n as V_B on the free columns, lifted through the unit-phase pivots.
// Boundaries are rewritten in those coordinates and eliminated again; kept
// rows are non-unit pivots (torsion) and zero rows (free summands).
template <class Ring>
FgAbelianGroup homology_with(const Ring& ring, const ComplexSlice& c, std::size_t n,
                             const Integer& field_p) {
  using E = Eliminator<Ring>;
  using T = typename Ring::value_type;
  require_degree(c, n);
  const auto& dn = c.d(n);
  const auto& dn1 = c.d(n + 1);
  const std::size_t dim = c.dims[n];

  typename E::Options o1;
  o1.col_log = true;
  o1.col_log_unit_phase = false;
  o1.lift_rows = true;
  o1.normalize = false;
  auto e1 = std::make_shared<E>(ring, dn.rows(), dn.cols(), E::rows_from(ring, dn), o1);
  e1->run();
  e1->compact();
  std::vector<index_t> survivors = e1->unit_phase_survivor_columns();
  std::vector<index_t> free_cols = e1->free_columns();

  std::vector<char> alive(dim, 0);
  for (auto s : survivors) alive[s] = 1;
  std::vector<typename E::Row> rows(dim);
  for (std::size_t j = 0; j < dn1.cols(); ++j)
    for (const auto& e : dn1.column(j)) {
      if (!alive[e.index]) continue;
      T v = ring.from_integer(e.value);
      if (!ring.is_zero(v)) rows[e.index].push_back({static_cast<index_t>(j), std::move(v)});
    }
  e1->apply_col_ops_inverse_to_rows(rows);
  std::vector<typename E::Row> xrows;
  xrows.reserve(free_cols.size());
  for (auto f : free_cols) xrows.push_back(std::move(rows[f]));
  rows.clear();

  typename E::Options o2;
  o2.row_log = true;
  o2.row_inverse = true;
  auto e2 = std::make_shared<E>(ring, free_cols.size(), dn1.cols(), std::move(xrows), o2);
  e2->run();
  e2->compact();

  std::vector<index_t> kept;
  IntVector torsion;
  if constexpr (!Ring::is_field) {
    std::vector<std::pair<Integer, index_t>> tors;
    for (const auto& p : e2->pivots())
      if (!ring.is_unit(p.value)) tors.push_back({ring.to_integer(p.value), p.row});
    std::stable_sort(tors.begin(), tors.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [t, r] : tors) {
      torsion.push_back(t);
      kept.push_back(r);
    }
  }
  std::vector<index_t> zero = e2->zero_rows();
  std::size_t free_rank = 0;
  if constexpr (Ring::is_field) {
    torsion.assign(zero.size(), field_p);
  } else {
    free_rank = zero.size();
  }
  kept.insert(kept.end(), zero.begin(), zero.end());

  FgAbelianGroup g;
  g.free_rank = free_rank;
  g.torsion = torsion;
  g.ambient_dim = dim;
  for (auto r : kept) {
    std::vector<T> w(dim, T{});
    for (const auto& e : e2->u_inverse_column(r)) w[free_cols[e.col]] = e.val;
    e1->apply_col_ops(w, true);
    e1->lift(w);
    IntVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = ring.to_integer(w[i]);
    g.generators.push_back(std::move(v));
  }

  auto boundary = std::make_shared<const SparseIntMatrix>(dn);
  Integer modulus = Ring::is_field ? field_p : Integer(0);
  g.reducer = [ring, e1, e2, boundary, dim, survivors = std::move(survivors),
               free_cols = std::move(free_cols), kept = std::move(kept), torsion, modulus](
                  std::span<const Integer> z) {
    if (z.size() != dim) throw std::invalid_argument("reduce: length mismatch");
    if (!is_cycle(*boundary, z, modulus))
      throw std::invalid_argument("reduce: vector is not a cycle");
    std::vector<T> w(z.size(), T{});
    for (auto s : survivors) w[s] = ring.from_integer(z[s]);
    e1->apply_col_ops_inverse(w, true);
    std::vector<T> x(free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) x[k] = w[free_cols[k]];
    e2->apply_row_ops(x);
    IntVector out(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      out[k] = ring.to_integer(x[kept[k]]);
      if (k < torsion.size()) out[k] = mod_floor(out[k], torsion[k]);
    }
    return out;
  };
  return g;
}

}  // namespace

std::string HomologyProfile::coefficients_name() const {
  return coefficients == 0 ? "Z" : "Z/" + coefficients.get_str();
}

FgAbelianGroup integral_homology_degree(const ComplexSlice& c, std::size_t n) {
  if (c.modulus != 0) throw std::invalid_argument("integral homology of a mod-p complex");
  return homology_with(IntegerRing{}, c, n, 0);
}

FgAbelianGroup field_homology_degree(const ComplexSlice& c, std::size_t n, std::uint32_t p) {
  if (c.modulus != 0 && c.modulus != p)
    throw std::invalid_argument("coefficients do not match the complex modulus");
  return homology_with(PrimeField(p), c, n, Integer(static_cast<unsigned long>(p)));
}

FgAbelianGroup uct_group(const FgAbelianGroup& hn, const FgAbelianGroup* hn_minus_1,
                         const Integer& m) {
  if (m <= 1) throw std::invalid_argument("uct_group: modulus must exceed 1");
  IntVector parts(hn.free_rank, m);
  for (const auto& t : hn.torsion) parts.push_back(gcd(t, m));
  if (hn_minus_1)
    for (const auto& t : hn_minus_1->torsion) parts.push_back(gcd(t, m));
  return abelian_group(0, parts);
}

HomologyProfile homology(ComplexPtr c, const Integer& m, std::size_t top) {
  if (!c) throw std::invalid_argument("homology: null complex");
  if (m < 0 || m == 1) throw std::invalid_argument("homology: coefficients must be Z or Z/m, m > 1");
  if (top >= c->max_degree)
    throw std::invalid_argument("homology: top degree must be below the complex's max degree");
  HomologyProfile h;
  h.complex = c;
  h.coefficients = m;
  if (c->modulus != 0) {
    if (m != 0 && m != c->modulus)
      throw std::invalid_argument("homology: coefficients do not match the complex modulus");
    h.coefficients = c->modulus;
    auto p = small_prime(c->modulus);
    for (std::size_t n = 0; n <= top; ++n) h.groups.push_back(field_homology_degree(*c, n, p));
    return h;
  }
  std::vector<FgAbelianGroup> integral;
  for (std::size_t n = 0; n <= top; ++n) integral.push_back(integral_homology_degree(*c, n));
  if (m == 0) {
    h.groups = std::move(integral);
    return h;
  }
  for (std::size_t n = 0; n <= top; ++n)
    h.uct_groups.push_back(uct_group(integral[n], n ? &integral[n - 1] : nullptr, m));
  if (is_prime(m) && m < Integer(1UL << 31)) {
    auto p = static_cast<std::uint32_t>(m.get_ui());
    for (std::size_t n = 0; n <= top; ++n) {
      auto g = field_homology_degree(*c, n, p);
      if (!isomorphic(g, h.uct_groups[n]))
        throw std::logic_error("field homology disagrees with universal coefficients in degree " +
                               std::to_string(n));
      h.groups.push_back(std::move(g));
    }
  } else {
    h.groups = h.uct_groups;
  }
  return h;
}

HomologyProfile homology(ComplexPtr c, const Integer& m) {
  if (!c || c->max_degree == 0) throw std::invalid_argument("homology: complex too short");
  return homology(c, m, c->max_degree - 1);
}

std::vector<std::size_t> field_betti_numbers(const ComplexSlice& c, std::uint32_t p,
                                             std::size_t top) {
  require_degree(c, top);
  std::vector<std::size_t> rank(top + 2);
  for (std::size_t n = 0; n <= top + 1; ++n) rank[n] = field_rank(c.d(n), p);
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= top; ++n) out.push_back(c.dims[n] - rank[n] - rank[n + 1]);
  return out;
}

std::vector<CheckResult> engine_cross_checks(const HomologyProfile& integral,
                                             const std::vector<std::uint32_t>& primes) {
  std::vector<CheckResult> out;
  const auto& c = *integral.complex;
  {
    CheckResult r{c.label + ": d o d = 0", true, ""};
    try {
      verify_complex(c);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(r);
  }
  if (integral.coefficients != 0 || c.modulus != 0) return out;
  std::size_t top = integral.top_degree();
  for (auto p : primes) {
    auto betti = field_betti_numbers(c, p, top);
    Integer pz(static_cast<unsigned long>(p));
    CheckResult r{c.label + ": field ranks mod " + std::to_string(p) + " match UCT", true, ""};
    for (std::size_t n = 0; n <= top; ++n) {
      std::size_t predicted = integral[n].free_rank;
      for (const auto& t : integral[n].torsion)
        if (divides(pz, t)) ++predicted;
      if (n > 0)
        for (const auto& t : integral[n - 1].torsion)
          if (divides(pz, t)) ++predicted;
      if (predicted != betti[n]) {
        r.pass = false;
        r.detail += "degree " + std::to_string(n) + ": field " + std::to_string(betti[n]) +
                    ", UCT " + std::to_string(predicted) + "; ";
      }
    }
    out.push_back(r);
  }
  return out;
}

AbelianHom induced_map(const ChainMap& f, const HomologyProfile& source,
                       const HomologyProfile& target, std::size_t n) {
  const auto& hs = source.groups.at(n);
  const auto& ht = target.groups.at(n);
  if (!hs.has_generator_data() || !ht.has_generator_data())
    throw std::invalid_argument("induced_map: homology lacks generator data");
  if (n >= f.maps.size()) throw std::invalid_argument("induced_map: chain map too short");
  const auto& m = f.maps[n];
  std::vector<IntVector> cols;
  for (const auto& g : hs.generators) cols.push_back(ht.reduce(m.multiply(g)));
  // Boundaries must go to zero: spot-check a spread of columns of d_{n+1}.
  const auto& bd = source.complex->d(n + 1);
  std::size_t step = std::max<std::size_t>(1, bd.cols() / 8);
  for (std::size_t j = 0; j < bd.cols(); j += step) {
    auto r = ht.reduce(m.multiply(to_dense(bd.column(j), bd.rows())));
    if (std::any_of(r.begin(), r.end(), [](const Integer& v) { return v != 0; }))
      throw std::logic_error("induced_map: a boundary maps to a nonzero class");
  }
  return make_hom_from_columns(hs, ht, cols);
}

std::vector<AbelianHom> action_on_homology(const GroupAction& a, const HomologyProfile& bar,
                                           std::size_t n) {
  std::vector<AbelianHom> out;
  for (elem_t q = 0; q < a.q.order; ++q)
    out.push_back(induced_map(action_chain_map(a, q, bar.complex), bar, bar, n));
  return out;
}

FgAbelianGroup fixed_homology(const GroupAction& a, const HomologyProfile& bar, std::size_t n) {
  return fixed_points_of_hom_family(bar.groups.at(n), action_on_homology(a, bar, n));
}

LesData build_les(const GroupAction& a, std::size_t top, const BuildOptions& opt) {
  if (top == 0) throw std::invalid_argument("build_les: top degree must be positive");
  auto coinv = reduced_complex(*coinvariant_complex(a, top + 1, opt));
  auto inv = reduced_complex(*invariant_complex(a, top + 2, opt));
  auto d = quotient_complex_D(a, *inv);
  LesData les{a, coinv, inv, d, norm_chain_map(a, coinv, inv), projection_to_D_chain_map(inv, d),
              {}, {}, {}, top};
  verify_chain_map(les.norm);
  verify_chain_map(les.projection);
  les.h_coinv = homology(coinv, 0, top);
  les.h_inv = homology(inv, 0, top);
  les.h_d = homology(d, 0, top + 1);
  return les;
}

AbelianHom connecting_homomorphism(const LesData& les, std::size_t n) {
  if (n == 0 || n > les.top + 1) throw std::invalid_argument("connecting_homomorphism: bad degree");
  const auto& hd = les.h_d.groups.at(n);
  const auto& target = les.h_coinv.groups.at(n - 1);
  const auto& inv = *les.inv;
  const auto& d = *les.d;
  const auto& norm = les.norm.maps.at(n - 1);
  const auto& norm_n = les.norm.maps.at(n);
  auto class_of = [&](const IntVector& y) {
    IntVector x(inv.dims[n]);
    for (std::size_t k = 0; k < d.dims[n]; ++k) {
      auto pos = std::lower_bound(inv.basis[n].begin(), inv.basis[n].end(), d.basis[n][k]) -
                 inv.basis[n].begin();
      x[pos] = mod_floor(y[k], d.modulus);
    }
    return x;
  };
  auto delta = [&](const IntVector& x) {
    auto b = inv.d(n).multiply(x);
    auto c = solve_in_lattice(norm, b);
    if (!c) throw std::logic_error("connecting_homomorphism: boundary is not a norm");
    return target.reduce(*c);
  };
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < hd.generators.size(); ++j) {
    auto x = class_of(hd.generators[j]);
    auto col = delta(x);
    // A different lift x + N(w) must give the same class.
    IntVector w(les.coinv->dims[n]);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<long>((i * 7 + j * 3) % 5) - 2;
    auto shift = norm_n.multiply(w);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += shift[i];
    if (target.normalize(delta(x)) != target.normalize(col))
      throw std::logic_error("connecting_homomorphism: result depends on the lift");
    cols.push_back(std::move(col));
  }
  return make_hom_from_columns(hd, target, cols);
}

ExactSequence les_sequence(const LesData& les) {
  ExactSequence s;
  const std::string top = std::to_string(les.top + 1);
  s.nodes.push_back({"h_" + top + "(D)", les.h_d.groups.at(les.top + 1)});
  for (std::size_t n = les.top; n >= 1; --n) {
    const std::string k = std::to_string(n);
    s.maps.push_back(connecting_homomorphism(les, n + 1));
    s.nodes.push_back({"H_" + k + "(BG/Q)", les.h_coinv[n]});
    s.maps.push_back(induced_map(les.norm, les.h_coinv, les.h_inv, n));
    s.nodes.push_back({"H^Q_" + k, les.h_inv[n]});
    s.maps.push_back(induced_map(les.projection, les.h_inv, les.h_d, n));
    s.nodes.push_back({"h_" + k + "(D)", les.h_d[n]});
  }
  s.maps.push_back(connecting_homomorphism(les, 1));
  s.nodes.push_back({"H_0(BG/Q)", les.h_coinv[0]});
  return s;
}

std::vector<ExactnessEntry> exactness_check(const ExactSequence& seq) {
  if (seq.maps.size() + 1 != seq.nodes.size())
    throw std::invalid_argument("exactness_check: node and map counts disagree");
  std::vector<ExactnessEntry> out;
  for (std::size_t i = 1; i + 1 < seq.nodes.size(); ++i) {
    const auto& in = seq.maps[i - 1];
    const auto& outgoing = seq.maps[i];
    ExactnessEntry e;
    e.label = seq.nodes[i].label;
    e.composite_zero = is_zero_hom(compose(outgoing, in));
    e.kernel_order = kernel_of_hom(outgoing).order();
    e.image_order = image_of_hom(in).order();
    if (!seq.nodes[i].group.is_finite())
      throw std::invalid_argument("exactness_check: infinite group at " + e.label);
    e.exact = e.composite_zero && e.kernel_order == e.image_order;
    out.push_back(e);
  }
  return out;
}

}  // namespace invhom
