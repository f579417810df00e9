#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include "doctest.h"
#include "invhom/groups.hpp"

using namespace invhom;

TEST_CASE("cyclic groups") {
  CHECK(make_cyclic(1).order == 1);
  auto z4 = make_cyclic(4);
  CHECK(z4.mul(1, 3) == 0);
  CHECK(z4.inv(1) == 3);
  CHECK(make_cyclic(6).mul(4, 5) == 3);
  CHECK_THROWS(make_cyclic(0));
}

TEST_CASE("products") {
  auto p = make_product(make_cyclic(2), make_cyclic(3));
  std::multiset<std::size_t> orders_p, orders_z6;
  auto z6 = make_cyclic(6);
  for (elem_t x = 0; x < 6; ++x) {
    orders_p.insert(p.element_order(x));
    orders_z6.insert(z6.element_order(x));
  }
  CHECK(orders_p == orders_z6);
  CHECK(make_product(make_cyclic(1), make_cyclic(5)).order == 5);
  auto v4 = make_product(make_cyclic(2), make_cyclic(2));
  for (elem_t x = 1; x < 4; ++x) CHECK(v4.element_order(x) == 2);
}

TEST_CASE("group validation rejects broken tables") {
  auto z3 = make_cyclic(3);
  auto t = z3.mul_table;
  std::swap(t[4], t[5]);
  CHECK_THROWS(make_group("bad", 3, t));
  // Sampled associativity path: order above 64 still validates.
  CHECK(make_cyclic(100).order == 100);
}

TEST_CASE("actions") {
  auto z2 = make_cyclic(2);
  auto z5 = make_cyclic(5);
  Permutation neg{0, 4, 3, 2, 1};
  CHECK_NOTHROW(make_action(z2, z5, {{1, neg}}));
  Permutation swap12{0, 2, 1, 3};
  CHECK_THROWS(make_action(z2, make_cyclic(4), {{1, swap12}}));
  Permutation dbl{0, 2, 4, 1, 3};
  CHECK_THROWS(make_action(z2, z5, {{1, dbl}}));
  // x -> 2x does define an action of Z/4 on Z/5.
  CHECK_NOTHROW(make_action(make_cyclic(4), z5, {{1, dbl}}));
}

TEST_CASE("negation action") {
  auto a = negation_action(4);
  CHECK(a.perm[1] == Permutation{0, 3, 2, 1});
  CHECK(negation_action(1).is_trivial());
  CHECK(negation_action(2).is_trivial());
  auto b = negation_action(5);
  CHECK(b.perm[1] == Permutation{0, 4, 3, 2, 1});
}

TEST_CASE("automorphism law holds exhaustively") {
  for (std::size_t n = 1; n <= 12; ++n) {
    auto a = negation_action(n);
    for (elem_t q = 0; q < a.q.order; ++q)
      for (elem_t x = 0; x < n; ++x)
        for (elem_t y = 0; y < n; ++y)
          CHECK(a.apply(q, a.g.mul(x, y)) == a.g.mul(a.apply(q, x), a.apply(q, y)));
  }
}

TEST_CASE("fixed subgroups") {
  CHECK(fixed_subgroup(negation_action(4)).members == std::vector<elem_t>{0, 2});
  CHECK(fixed_subgroup(negation_action(5)).members == std::vector<elem_t>{0});
  auto g = make_cyclic(6);
  CHECK(fixed_subgroup(trivial_action(make_cyclic(3), g)).order() == 6);
  for (std::size_t n = 1; n <= 20; ++n)
    CHECK(fixed_subgroup(negation_action(n)).order() == (n % 2 == 0 ? 2u : 1u));
}

TEST_CASE("coset representatives partition the group") {
  auto z6 = make_cyclic(6);
  auto k = generated_subgroup(z6, {3});
  CHECK(coset_representatives(z6, k) == std::vector<elem_t>{0, 1, 2});
  CHECK(coset_representatives(z6, generated_subgroup(z6, {1})) == std::vector<elem_t>{0});
  auto z4 = make_cyclic(4);
  CHECK(coset_representatives(z4, generated_subgroup(z4, {})).size() == 4);
  for (std::size_t n = 2; n <= 12; ++n) {
    auto g = make_cyclic(n);
    for (elem_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      auto h = generated_subgroup(g, {static_cast<elem_t>(d % n)});
      auto reps = coset_representatives(g, h);
      std::set<elem_t> all;
      for (elem_t x : h.members)
        for (elem_t e : reps) all.insert(g.mul(x, e));
      CHECK(all.size() == n);
      CHECK(reps.size() * h.order() == n);
    }
  }
}

TEST_CASE("equivariant coset representatives") {
  auto a6 = negation_action(6);
  auto k3 = generated_subgroup(a6.g, {3});
  auto e = find_equivariant_coset_reps(a6, k3);
  REQUIRE(e);
  CHECK(*e == std::vector<elem_t>{0, 1, 5});

  auto a5 = negation_action(5);
  auto e5 = find_equivariant_coset_reps(a5, generated_subgroup(a5.g, {}));
  REQUIRE(e5);
  CHECK(e5->size() == 5);

  // Coset {1,3} of <2> in Z/4 is stable under negation but contains no fixed element.
  auto a4 = negation_action(4);
  auto k2 = generated_subgroup(a4.g, {2});
  CHECK(!find_equivariant_coset_reps(a4, k2));
  CHECK(!is_equivariant(a4, make_coset_system(a4.g, k2, {0, 1})));
}

TEST_CASE("coset lists of the form {0} u {i, 2k-i}") {
  for (std::size_t k : {3u, 5u, 7u}) {
    auto a = negation_action(2 * k);
    auto h = generated_subgroup(a.g, {static_cast<elem_t>(k)});
    std::vector<elem_t> e{0};
    for (elem_t i = 1; i <= (k - 1) / 2; ++i) {
      e.push_back(i);
      e.push_back(static_cast<elem_t>(2 * k - i));
    }
    CHECK(is_equivariant(a, make_coset_system(a.g, h, e)));
    // Replacing the last representative by (k+1)/2 keeps a transversal but breaks equivariance.
    auto bad = e;
    bad.back() = static_cast<elem_t>((k + 1) / 2);
    CHECK(!is_equivariant(a, make_coset_system(a.g, h, bad)));
  }
  for (std::size_t k : {3u, 5u}) {
    auto a = negation_action(4 * k);
    auto h = generated_subgroup(a.g, {static_cast<elem_t>(k)});
    std::vector<elem_t> e{0}, f{0};
    for (elem_t i = 1; i <= (k - 1) / 2; ++i) {
      e.push_back(i);
      e.push_back(static_cast<elem_t>(2 * k - i));
      f.push_back(i);
      f.push_back(static_cast<elem_t>(4 * k - i));
    }
    CHECK(!is_equivariant(a, make_coset_system(a.g, h, e)));
    CHECK(is_equivariant(a, make_coset_system(a.g, h, f)));
  }
}

TEST_CASE("restriction to a stable subgroup") {
  auto a = negation_action(8);
  auto k = generated_subgroup(a.g, {2});
  auto r = restrict_action(a, k);
  CHECK(r.g.order == 4);
  CHECK(r.perm[1] == Permutation{0, 3, 2, 1});
}

TEST_CASE("spec parsing") {
  CHECK(parse_group_spec("cyclic:4").order == 4);
  auto p = parse_group_spec("product:cyclic:2,product:cyclic:3,cyclic:2");
  CHECK(p.order == 12);
  CHECK_THROWS(parse_group_spec("cyclic:"));
  CHECK_THROWS(parse_group_spec("cyclic:4x"));
  CHECK_THROWS(parse_group_spec("dihedral:4"));
  auto g = parse_group_spec("cyclic:5");
  CHECK(parse_action_spec("negation", g).perm[1][1] == 4);
  CHECK(parse_action_spec("trivial", g).is_trivial());
  CHECK_THROWS(parse_action_spec("rotate", g));

  const char* path = "perm_action_test.json";
  {
    std::ofstream out(path);
    out << "[[0, 2, 4, 1, 3]]";
  }
  auto a = parse_action_spec(std::string("perm:") + path, g);
  CHECK(a.q.order == 4);
  {
    std::ofstream out(path);
    out << "[[0, 1, 3, 2, 4]]";
  }
  CHECK_THROWS(parse_action_spec(std::string("perm:") + path, g));
  std::remove(path);
}
