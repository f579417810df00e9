#include <random>

#include "doctest.h"
#include "invhom/homology.hpp"

using namespace invhom;

namespace {

FgAbelianGroup grp(std::size_t free, IntVector tors) { return abelian_group(free, tors); }

// H_n from ranks and invariant factors alone.
FgAbelianGroup oracle(const ComplexSlice& c, std::size_t n) {
  auto inc = invariant_factors(c.d(n + 1));
  std::size_t rank_n = invariant_factors(c.d(n)).size();
  IntVector tors;
  for (const auto& t : inc)
    if (t != 1) tors.push_back(t);
  return abelian_group(c.dims[n] - rank_n - inc.size(), tors);
}

bool is_zero_vec(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Generators reduce to unit vectors; boundaries reduce to zero.
void check_generator_data(const HomologyProfile& h, std::size_t n) {
  const auto& g = h[n];
  REQUIRE(g.has_generator_data());
  REQUIRE(g.generators.size() == g.num_generators());
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    IntVector e(g.num_generators());
    e[i] = 1;
    CHECK(g.normalize(g.reduce(g.generators[i])) == g.normalize(e));
  }
  const auto& bd = h.complex->d(n + 1);
  for (std::size_t j = 0; j < bd.cols(); j += 1 + bd.cols() / 20)
    CHECK(is_zero_vec(g.reduce(to_dense(bd.column(j), bd.rows()))));
}

}  // namespace

TEST_CASE("bar homology of cyclic groups") {
  auto h = homology(bar_complex(make_cyclic(3), 5), 0);
  REQUIRE(h.top_degree() == 4);
  CHECK(isomorphic(h[0], grp(1, {})));
  CHECK(isomorphic(h[1], grp(0, {3})));
  CHECK(isomorphic(h[2], grp(0, {})));
  CHECK(isomorphic(h[3], grp(0, {3})));
  CHECK(isomorphic(h[4], grp(0, {})));
  for (std::size_t n = 0; n <= 4; ++n) check_generator_data(h, n);

  auto h6 = homology(bar_complex(make_cyclic(6), 4), 0);
  CHECK(isomorphic(h6[3], grp(0, {6})));
}

TEST_CASE("homology agrees with the invariant-factor oracle") {
  for (std::size_t n : {2u, 4u, 5u, 6u}) {
    auto a = negation_action(n);
    for (auto c : {bar_complex(a.g, 4), invariant_complex(a, 4), coinvariant_complex(a, 4)}) {
      auto h = homology(c, 0);
      for (std::size_t k = 0; k < 4; ++k) {
        CAPTURE(c->label);
        CAPTURE(k);
        CHECK(isomorphic(h[k], oracle(*c, k)));
      }
      check_generator_data(h, 1);
      check_generator_data(h, 3);
    }
  }
}

TEST_CASE("invariant homology of Z/4 under negation") {
  auto h = homology(invariant_complex(negation_action(4), 5), 0);
  CHECK(isomorphic(h[0], grp(1, {})));
  CHECK(isomorphic(h[1], grp(0, {2, 2})));
  CHECK(isomorphic(h[2], grp(0, {2})));
  // Also confirmed by an independent Smith-form computation.
  CHECK(isomorphic(h[3], grp(0, {2, 2, 2})));
}

TEST_CASE("coefficients: field and universal coefficients") {
  auto c = bar_complex(make_cyclic(4), 5);
  auto h2 = homology(c, 2);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(isomorphic(h2[n], grp(0, {2})));
  check_generator_data(h2, 2);
  auto h8 = homology(c, 8);
  CHECK(isomorphic(h8[1], grp(0, {4})));
  CHECK(isomorphic(h8[2], grp(0, {4})));
  CHECK(isomorphic(h8[3], h8.uct_groups[3]));
  auto h3 = homology(c, 3);
  CHECK(h3[2].is_trivial());
  CHECK_THROWS(homology(c, 1));
  CHECK_THROWS(homology(c, 0, 5));
}

TEST_CASE("reduced complexes drop degree zero") {
  auto h = homology(reduced_complex(*bar_complex(make_cyclic(5), 3)), 0);
  CHECK(h[0].is_trivial());
  CHECK(isomorphic(h[1], grp(0, {5})));
}

TEST_CASE("cross-checks pass on genuine complexes") {
  auto a = negation_action(6);
  auto h = homology(invariant_complex(a, 5), 0);
  for (const auto& r : engine_cross_checks(h, {2, 3, 5})) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
  auto betti = field_betti_numbers(*bar_complex(make_cyclic(6), 4), 3, 3);
  CHECK(betti == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("induced maps") {
  auto a = negation_action(3);
  auto bar = bar_complex(a.g, 4);
  auto inv = invariant_complex(a, 4);
  auto hb = homology(bar, 0);
  auto hi = homology(inv, 0);
  auto i = invariant_inclusion_chain_map(a, inv, bar);
  verify_chain_map(i);
  // Odd order: the orbit-sum inclusion is an isomorphism onto the fixed part.
  auto f1 = induced_map(i, hi, hb, 1);
  CHECK(hi[1].is_trivial());
  auto f3 = induced_map(i, hi, hb, 3);
  CHECK(is_injective(f3));
  CHECK(isomorphic(image_of_hom(f3), fixed_homology(a, hb, 3)));
  CHECK(is_zero_hom(f1));

  auto id = induced_map(action_chain_map(a, 0, bar), hb, hb, 3);
  CHECK(homs_equal(id, identity_hom(hb[3])));
}

TEST_CASE("negation acts by -1 on H_1 of Z/5") {
  auto a = negation_action(5);
  auto hb = homology(bar_complex(a.g, 4), 0);
  auto acts = action_on_homology(a, hb, 1);
  REQUIRE(acts.size() == 2);
  CHECK(homs_equal(acts[1], scalar_hom(hb[1], -1)));
  CHECK(fixed_homology(a, hb, 1).is_trivial());
  // Degree 3 is fixed: -1 acts by (-1)^2 on H_3 = Z/5.
  CHECK(homs_equal(action_on_homology(a, hb, 3)[1], identity_hom(hb[3])));
}

TEST_CASE("long exact sequence for Z/4 is exact") {
  auto les = build_les(negation_action(4), 4);
  auto seq = les_sequence(les);
  CHECK(seq.nodes.size() == 14);
  for (const auto& e : exactness_check(seq)) {
    CAPTURE(e.label);
    CHECK(e.exact);
  }
  CHECK(isomorphic(les.h_coinv[1], grp(0, {2})));
  CHECK(isomorphic(les.h_coinv[3], grp(0, {2, 2})));
  CHECK(isomorphic(les.h_coinv[4], grp(0, {2})));

  // Replacing one map by zero breaks exactness somewhere.
  auto broken = seq;
  for (std::size_t i = 0; i < broken.maps.size(); ++i) {
    if (is_zero_hom(broken.maps[i])) continue;
    auto& m = broken.maps[i];
    m = make_hom_from_columns(m.source, m.target,
                              std::vector<IntVector>(m.source.num_generators(),
                                                     IntVector(m.target.num_generators())));
    break;
  }
  bool all_exact = true;
  for (const auto& e : exactness_check(broken)) all_exact = all_exact && e.exact;
  CHECK(!all_exact);
}

TEST_CASE("connecting map is independent of the lift for Z/6") {
  auto les = build_les(negation_action(6), 3);
  for (std::size_t n = 1; n <= 4; ++n) CHECK_NOTHROW(connecting_homomorphism(les, n));
  for (const auto& e : exactness_check(les_sequence(les))) {
    CAPTURE(e.label);
    CHECK(e.exact);
  }
}

TEST_CASE("random chain complexes: reducer respects classes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    // C_2 -> C_1 -> C_0 with d_1 = 0 and a random d_2.
    std::size_t n1 = 2 + rng() % 4, n2 = 1 + rng() % 4;
    auto c = std::make_shared<ComplexSlice>();
    c->max_degree = 2;
    c->dims = {1, n1, n2};
    c->boundary = {SparseIntMatrix(0, 1), SparseIntMatrix(1, n1), SparseIntMatrix(n1, n2)};
    c->basis.resize(3);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        c->boundary[2].set(i, j, static_cast<long>(rng() % 9) - 4);
    auto h = homology(c, 0, 1);
    CHECK(isomorphic(h[1], oracle(*c, 1)));
    check_generator_data(h, 1);
    IntVector z(n1);
    for (auto& x : z) x = static_cast<long>(rng() % 11) - 5;
    auto rz = h[1].reduce(z);
    auto b = c->d(2).multiply(IntVector(n2, 1));
    IntVector zb(n1);
    for (std::size_t i = 0; i < n1; ++i) zb[i] = z[i] + b[i];
    CHECK(h[1].normalize(h[1].reduce(zb)) == h[1].normalize(rz));
  }
}
