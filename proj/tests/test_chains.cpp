#include <map>
#include <set>

#include "doctest.h"
#include "invhom/chains.hpp"
#include "invhom/linalg.hpp"

using namespace invhom;

namespace {

tuple_t code(std::size_t order, std::vector<elem_t> e) { return encode_tuple(order, e); }

// Orbit count by explicit set enumeration.
std::size_t brute_orbits(const GroupAction& a, std::size_t n) {
  std::set<std::vector<tuple_t>> orbits;
  for (tuple_t t = 0; t < tuple_count(a.g.order, n); ++t) {
    std::vector<tuple_t> o;
    for (elem_t q = 0; q < a.q.order; ++q) {
      auto e = decode_tuple(a.g.order, n, t);
      for (auto& x : e) x = a.perm[q][x];
      o.push_back(encode_tuple(a.g.order, e));
    }
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    orbits.insert(o);
  }
  return orbits.size();
}

}  // namespace

TEST_CASE("bar boundary") {
  auto z4 = make_cyclic(4);
  auto d = bar_boundary(z4, {1, 2});
  std::map<tuple_t, int> m(d.begin(), d.end());
  CHECK(m == std::map<tuple_t, int>{{2, 1}, {3, -1}, {1, 1}});
  CHECK(bar_boundary(z4, {3}).empty());
  auto d2 = bar_boundary(z4, {1, 3});
  std::map<tuple_t, int> m2(d2.begin(), d2.end());
  CHECK(m2 == std::map<tuple_t, int>{{3, 1}, {0, -1}, {1, 1}});
  CHECK_THROWS(bar_boundary(z4, {}));
}

TEST_CASE("bar complex shape") {
  auto c = bar_complex(make_cyclic(2), 2);
  CHECK(c->dims == std::vector<std::size_t>{1, 2, 4});
  auto c4 = bar_complex(make_cyclic(4), 3);
  for (std::size_t j = 0; j < c4->d(2).cols(); ++j) CHECK(c4->d(2).column(j).size() <= 3);
  auto triv = bar_complex(make_cyclic(1), 3);
  CHECK(triv->dims == std::vector<std::size_t>{1, 1, 1, 1});
  // Alternating zero and isomorphism: d_2 = 1, d_3 = 0.
  CHECK(triv->d(2).at(0, 0) == 1);
  CHECK(triv->d(3).is_zero());
  CHECK(triv->d(1).is_zero());
}

TEST_CASE("budget is enforced") {
  BuildOptions opt;
  opt.memory_budget = 1 << 20;
  CHECK_THROWS_AS(bar_complex(make_cyclic(8), 6, opt), BudgetExceeded);
}

TEST_CASE("tuple orbits") {
  auto a = negation_action(4);
  auto o1 = tuple_orbits(a, 1);
  CHECK(o1.count() == 3);
  auto m = o1.members();
  CHECK(m[0] == std::vector<tuple_t>{0});
  CHECK(m[1] == std::vector<tuple_t>{1, 3});
  CHECK(m[2] == std::vector<tuple_t>{2});
  CHECK(tuple_orbits(a, 2).count() == brute_orbits(a, 2));
  CHECK(tuple_orbits(a, 2).count() == 10);
  auto t = trivial_action(make_cyclic(2), make_cyclic(3));
  CHECK(tuple_orbits(t, 3).count() == 27);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 0; k <= 4; ++k) {
      auto act = negation_action(n);
      CHECK(tuple_orbits(act, k).count() == brute_orbits(act, k));
      CHECK(orbit_count(act, k) == brute_orbits(act, k));
    }
  }
  CHECK(orbit_count(negation_action(8), 5) == brute_orbits(negation_action(8), 5));
}

TEST_CASE("invariant complex") {
  auto a = negation_action(4);
  auto inv = invariant_complex(a, 3);
  CHECK(inv->dims[1] == 3);
  // d(orbit of [1|3]) = 2 ([1]+[3]) - 2 [0]
  std::size_t col = std::lower_bound(inv->basis[2].begin(), inv->basis[2].end(), code(4, {1, 3})) -
                    inv->basis[2].begin();
  CHECK(inv->d(2).at(1, col) == 2);  // orbit {1,3} in degree 1
  CHECK(inv->d(2).at(0, col) == -2);
  CHECK(inv->d(2).at(2, col) == 0);
  auto t = trivial_action(make_cyclic(2), make_cyclic(3));
  auto inv_t = invariant_complex(t, 3);
  auto bar = bar_complex(make_cyclic(3), 3);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(inv_t->d(n) == bar->d(n));
}

TEST_CASE("invariant boundary matches literal expansion") {
  for (std::size_t n : {4u, 5u, 6u}) {
    auto a = negation_action(n);
    auto inv = invariant_complex(a, 3);
    auto bar = bar_complex(a.g, 3);
    auto i = invariant_inclusion_chain_map(a, inv, bar);
    verify_chain_map(i);
    // The expanded boundary lies in the image of the inclusion.
    for (std::size_t deg = 1; deg <= 3; ++deg) {
      auto lhs = bar->d(deg).multiply(i.maps[deg]);
      auto rhs = i.maps[deg - 1].multiply(inv->d(deg));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("coinvariant complex") {
  auto a = negation_action(4);
  auto co = coinvariant_complex(a, 3);
  CHECK(co->dims[1] == 3);
  CHECK(co->dims[0] == 1);
  // class[1|2] == class[3|2]
  auto o2 = tuple_orbits(a, 2);
  CHECK(o2.orbit_of[code(4, {1, 2})] == o2.orbit_of[code(4, {3, 2})]);
}

TEST_CASE("norm map") {
  auto a = negation_action(4);
  auto inv = invariant_complex(a, 3);
  auto co = coinvariant_complex(a, 3);
  auto n = norm_chain_map(a, co, inv);
  verify_chain_map(n);
  CHECK(n.maps[0].at(0, 0) == 1);
  auto idx = [&](std::size_t deg, tuple_t c) {
    return static_cast<std::size_t>(
        std::lower_bound(inv->basis[deg].begin(), inv->basis[deg].end(), c) -
        inv->basis[deg].begin());
  };
  std::size_t f = idx(2, code(4, {0, 2}));
  CHECK(n.maps[2].at(f, f) == 2);
  std::size_t g = idx(2, code(4, {1, 2}));
  CHECK(n.maps[2].at(g, g) == 1);
  for (std::size_t deg = 0; deg <= 3; ++deg) CHECK(kernel_basis(n.maps[deg]).cols() == 0);

  // Inclusion composed with N equals the literal sum over Q of translated tuples.
  auto bar = bar_complex(a.g, 3);
  auto incl = invariant_inclusion_chain_map(a, inv, bar);
  for (std::size_t deg = 1; deg <= 3; ++deg) {
    auto composite = incl.maps[deg].multiply(n.maps[deg]);
    for (std::size_t k = 0; k < co->dims[deg]; ++k) {
      SparseVector literal;
      for (elem_t q = 0; q < 2; ++q)
        literal.push_back({static_cast<index_t>(act_on_tuple(a, q, deg, co->basis[deg][k])), 1});
      canonicalize(literal);
      const auto& col = composite.column(k);
      REQUIRE(col.size() == literal.size());
      for (std::size_t i = 0; i < col.size(); ++i) {
        CHECK(col[i].index == literal[i].index);
        CHECK(col[i].value == literal[i].value);
      }
    }
  }
  auto t = trivial_action(make_cyclic(1), make_cyclic(3));
  auto nt = norm_chain_map(t, coinvariant_complex(t, 2), invariant_complex(t, 2));
  for (auto& m : nt.maps) CHECK(m == SparseIntMatrix::identity(m.rows()));
}

TEST_CASE("quotient complex D") {
  auto a = negation_action(4);
  auto d = quotient_complex_D(a, *invariant_complex(a, 4));
  CHECK(d->dims[0] == 0);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(d->dims[n] == (std::size_t{1} << n));
  CHECK(d->modulus == 2);
  auto a5 = negation_action(5);
  auto d5 = quotient_complex_D(a5, *invariant_complex(a5, 3));
  for (std::size_t n = 1; n <= 3; ++n) CHECK(d5->dims[n] == 1);
  auto t = trivial_action(make_cyclic(2), make_cyclic(3));
  auto dt = quotient_complex_D(t, *invariant_complex(t, 3));
  auto bar = bar_complex(make_cyclic(3), 3);
  for (std::size_t n = 2; n <= 3; ++n) CHECK(dt->d(n) == bar->d(n).reduced_mod(2));
  CHECK_THROWS(quotient_complex_D(trivial_action(make_cyclic(4), make_cyclic(3)),
                                  *invariant_complex(trivial_action(make_cyclic(4), make_cyclic(3)), 2)));
}

TEST_CASE("coker N computed two ways") {
  for (std::size_t n : {4u, 5u, 6u}) {
    auto a = negation_action(n);
    auto inv = invariant_complex(a, 3);
    auto nm = norm_chain_map(a, coinvariant_complex(a, 3), inv);
    auto d = quotient_complex_D(a, *inv);
    for (std::size_t deg = 1; deg <= 3; ++deg) {
      auto coker = present_fg_abelian(inv->dims[deg], nm.maps[deg]);
      CHECK(coker.free_rank == 0);
      CHECK(coker.torsion == IntVector(d->dims[deg], 2));
    }
  }
}

TEST_CASE("inclusion chain maps") {
  auto a = negation_action(4);
  auto inv = invariant_complex(a, 3);
  auto h = fixed_subgroup(a);
  auto barh = bar_complex(h.group, 3);
  auto f = fixed_inclusion_chain_map(a, barh, inv);
  verify_chain_map(f);
  std::size_t target = std::lower_bound(inv->basis[2].begin(), inv->basis[2].end(), code(4, {2, 2})) -
                       inv->basis[2].begin();
  CHECK(f.maps[2].at(target, code(2, {1, 1})) == 1);
  auto bar = bar_complex(a.g, 3);
  auto i = invariant_inclusion_chain_map(a, inv, bar);
  verify_chain_map(i);
  CHECK(i.maps[1].at(1, 1) == 1);
  CHECK(i.maps[1].at(3, 1) == 1);
  verify_chain_map(action_chain_map(a, 1, bar));
}

TEST_CASE("transfer chain maps") {
  auto a = negation_action(6);
  auto k = generated_subgroup(a.g, {3});
  auto e = find_equivariant_coset_reps(a, k);
  REQUIRE(e);
  auto cs = make_coset_system(a.g, k, *e);
  auto barg = bar_complex(a.g, 3);
  auto bark = bar_complex(k.group, 3);
  auto tr = transfer_chain_map(k, cs, barg, bark);
  verify_chain_map(tr);
  CHECK(tr.maps[0].at(0, 0) == 3);
  auto j = subgroup_inclusion_chain_map(k, bark, barg);
  verify_chain_map(j);
  auto tj = compose(tr, j);
  for (std::size_t n = 0; n <= 3; ++n)
    CHECK(tj.maps[n] == SparseIntMatrix::identity(bark->dims[n]).scaled(3));

  auto ak = restrict_action(a, k);
  auto invg = invariant_complex(a, 3);
  auto invk = invariant_complex(ak, 3);
  auto itr = invariant_transfer_chain_map(a, k, cs, invg, invk);
  verify_chain_map(itr);
  verify_chain_map(invariant_subgroup_inclusion_chain_map(a, k, invk, invg));

  auto z3 = make_cyclic(3);
  auto triv = generated_subgroup(z3, {});
  auto cs3 = make_coset_system(z3, triv, coset_representatives(z3, triv));
  auto t3 = transfer_chain_map(triv, cs3, bar_complex(z3, 2), bar_complex(triv.group, 2));
  CHECK(t3.maps[1].at(0, 1) == 3);

  // Z/4 with <2>: no equivariant transversal, but Q acts trivially on K.
  auto a4 = negation_action(4);
  auto k2 = generated_subgroup(a4.g, {2});
  auto cs4 = make_coset_system(a4.g, k2, coset_representatives(a4.g, k2));
  auto inv4 = invariant_complex(a4, 3);
  auto invk2 = invariant_complex(restrict_action(a4, k2), 3);
  verify_chain_map(invariant_transfer_chain_map(a4, k2, cs4, inv4, invk2));

  // A non-equivariant transversal with a nontrivial action on K is refused.
  auto a12 = negation_action(12);
  auto k4 = generated_subgroup(a12.g, {3});
  auto bad = make_coset_system(a12.g, k4, {0, 1, 2});
  CHECK(!is_equivariant(a12, bad));
  CHECK_THROWS(invariant_transfer_chain_map(a12, k4, bad, invariant_complex(a12, 2),
                                            invariant_complex(restrict_action(a12, k4), 2)));
}

TEST_CASE("reduced complex") {
  auto r = reduced_complex(*bar_complex(make_cyclic(3), 2));
  CHECK(r->dims[0] == 0);
  CHECK(r->d(1).rows() == 0);
  verify_complex(*r);
}

TEST_CASE("S1 counterexample complex") {
  auto c = s1_counterexample_complex();
  CHECK(c->dims == std::vector<std::size_t>{1, 0, 0});
}
