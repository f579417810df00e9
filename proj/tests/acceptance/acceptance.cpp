#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "invhom/chains.hpp"
#include "invhom/homology.hpp"
#include "invhom/theorems.hpp"

using namespace invhom;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& what) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

// Cross-checks gathered from every complex computed by the other criteria.
std::vector<CheckResult> g_engine;

const std::vector<std::uint32_t> kPrimes{2, 3, 5};

FgAbelianGroup grp(std::size_t free, IntVector tors) { return abelian_group(free, tors); }
FgAbelianGroup z(long n) { return grp(0, {Integer(n)}); }
FgAbelianGroup zero() { return grp(0, {}); }

HomologyProfile integral(ComplexPtr c, std::size_t top) {
  auto h = homology(c, 0, top);
  for (auto& r : engine_cross_checks(h, kPrimes)) {
    r.name = c->label + ": " + r.name;
    g_engine.push_back(r);
  }
  return h;
}

void record_norm(const ChainMap& n) {
  bool ok = true;
  for (const auto& m : n.maps) ok = ok && rank_over_q(m) == m.cols();
  g_engine.push_back({n.target->label + ": N injective", ok, ok ? "" : "rank deficit"});
}

void expect_groups(Outcome& o, const std::string& what, const HomologyProfile& h, std::size_t first,
                   const std::vector<FgAbelianGroup>& expected) {
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& got = h[first + i];
    if (!isomorphic(got, expected[i]))
      o.fail(what + " degree " + std::to_string(first + i) + ": expected " + expected[i].to_string() +
             ", got " + got.to_string());
  }
}

HomologyProfile invariant_homology(std::size_t n, std::size_t top) {
  return integral(invariant_complex(negation_action(n), top + 1), top);
}

Outcome criterion1() {
  Outcome o;
  expect_groups(o, "H^Q(Z/3)", invariant_homology(3, 5), 1, {zero(), zero(), z(3), zero(), zero()});
  expect_groups(o, "H^Q(Z/5)", invariant_homology(5, 4), 1, {zero(), zero(), z(5), zero()});
  return o;
}

Outcome criterion2() {
  Outcome o;
  expect_groups(o, "H^Q(Z/6)", invariant_homology(6, 4), 1, {z(2), zero(), z(6), zero()});
  return o;
}

Outcome criterion3() {
  Outcome o;
  expect_groups(o, "H^Q(Z/4)", invariant_homology(4, 5), 1,
                {grp(0, {2, 2}), z(2), grp(0, {4, 2, 2}), grp(0, {2, 2}), grp(0, {2, 2, 2, 2})});
  expect_groups(o, "H^Q(Z/8)", invariant_homology(8, 3), 1, {grp(0, {2, 2}), z(2), grp(0, {8, 2, 2})});
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto coinv = coinvariant_complex(negation_action(4), 5);
  expect_groups(o, "H(B(Z/4)/Gamma; Z/2)", homology(coinv, 2, 4), 1,
                {z(2), z(2), grp(0, {2, 2}), grp(0, {2, 2, 2})});
  expect_groups(o, "H(B(Z/4)/Gamma; Z)", integral(coinv, 4), 1, {z(2), zero(), grp(0, {4, 2}), z(2)});
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (std::size_t n : {4u, 6u}) {
    auto a = negation_action(n);
    auto les = build_les(a, 4);
    record_norm(les.norm);
    integral(les.inv, 4);
    integral(les.coinv, 4);
    auto fixed = fixed_subgroup(a).group;
    auto reduced = homology(reduced_complex(*bar_complex(fixed, 5)), 2, 4);
    std::string tag = "Z/" + std::to_string(n);
    for (std::size_t k = 1; k <= 4; ++k)
      if (!isomorphic(les.h_d[k], reduced[k]))
        o.fail(tag + " h_" + std::to_string(k) + "(D) = " + les.h_d[k].to_string() + ", reduced H(G^Q; Z/2) = " +
               reduced[k].to_string());
    for (const auto& e : exactness_check(les_sequence(les)))
      if (!e.exact) o.fail(tag + " not exact at " + e.label);
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  struct Case {
    std::size_t n;
    long p;
  };
  for (Case c : {Case{5, 5}, Case{4, 3}}) {
    auto a = negation_action(c.n);
    auto inv = invariant_complex(a, 5);
    auto bar = bar_complex(a.g, 5);
    auto hi = homology(inv, c.p, 4);
    auto hb = homology(bar, c.p, 4);
    auto i = invariant_inclusion_chain_map(a, inv, bar);
    std::string tag = "Z/" + std::to_string(c.n) + " with Z/" + std::to_string(c.p);
    for (std::size_t k = 1; k <= 4; ++k) {
      auto fixed = fixed_homology(a, hb, k);
      auto ik = induced_map(i, hi, hb, k);
      if (!isomorphic(hi[k], fixed) || !is_injective(ik) || !isomorphic(image_of_hom(ik), fixed))
        o.fail(tag + " degree " + std::to_string(k) + ": H^Q = " + hi[k].to_string() + ", fixed = " +
               fixed.to_string());
    }
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  struct Case {
    std::size_t n;
    std::size_t top;
  };
  for (Case c : {Case{3, 5}, Case{5, 4}, Case{6, 4}, Case{4, 5}, Case{8, 3}}) {
    auto a = negation_action(c.n);
    auto inv = invariant_complex(a, c.top + 1);
    auto bar = bar_complex(a.g, c.top + 1);
    auto hi = integral(inv, c.top);
    auto hb = integral(bar, c.top);
    auto i = invariant_inclusion_chain_map(a, inv, bar);
    const Integer order(static_cast<unsigned long>(c.n));
    std::string tag = "Z/" + std::to_string(c.n);
    for (std::size_t k = 1; k <= c.top; ++k) {
      if (order % hi[k].exponent() != 0 || !hi[k].is_finite())
        o.fail(tag + " exponent of H^Q_" + std::to_string(k) + " does not divide |G|");
      auto ker = kernel_of_hom(induced_map(i, hi, hb, k));
      if (2 % ker.exponent() != 0 || !ker.is_finite())
        o.fail(tag + " ker i_* in degree " + std::to_string(k) + " is " + ker.to_string());
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  SuiteOptions opt;
  opt.max_degree = 3;
  struct Case {
    std::size_t n;
    std::vector<elem_t> gens;
  };
  for (const auto& c : {Case{6, {3}}, Case{5, {}}, Case{4, {2}}}) {
    auto a = negation_action(c.n);
    auto r = suite_transfer(a, generated_subgroup(a.g, c.gens), opt);
    for (const auto& cl : r.claims)
      if (!cl.pass) o.fail("Z/" + std::to_string(c.n) + ": " + cl.statement + " (" + cl.computed + ")");
    if (!r.not_computed.empty()) o.fail("Z/" + std::to_string(c.n) + ": degrees skipped");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<VerificationReport> reports;
  for (std::size_t m : {10u, 20u, 40u}) reports.push_back(truncated_integer_h1(TruncationWindow{m}));
  reports.push_back(suite_hiz());
  for (const auto& r : reports)
    for (const auto& cl : r.claims)
      if (!cl.pass) o.fail(cl.statement + " (" + cl.computed + ")");
  auto s1 = homology(s1_counterexample_complex(), 0, 1);
  if (!s1[1].is_trivial()) o.fail("circle model h_1 = " + s1[1].to_string());
  return o;
}

Outcome criterion10() {
  Outcome o;
  // Builders verify d o d = 0 and orbit constancy of invariant boundaries as they run.
  BuildOptions strict;
  strict.verify = true;
  for (std::size_t n : {3u, 4u, 5u, 6u, 8u}) {
    auto a = negation_action(n);
    auto inv = invariant_complex(a, 4, strict);
    auto coinv = coinvariant_complex(a, 4, strict);
    verify_complex(*inv);
    verify_complex(*coinv);
    auto nm = norm_chain_map(a, coinv, inv);
    verify_chain_map(nm);
    record_norm(nm);
  }
  for (const auto& c : g_engine)
    if (!c.pass) o.fail(c.name + ": " + c.detail);
  o.detail = std::to_string(g_engine.size()) + " inline checks" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

struct Criterion {
  int id;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 120, criterion1}, {2, 300, criterion2}, {3, 1500, criterion3}, {4, 600, criterion4},
      {5, 600, criterion5}, {6, 300, criterion6}, {7, 60, criterion7},   {8, 300, criterion8},
      {9, 60, criterion9},  {10, 60, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("over the time limit");
    failures += !o.pass;
    std::printf("criterion %2d: %s (%.2fs, limit %.0fs)%s%s\n", c.id, o.pass ? "PASS" : "FAIL", secs,
                c.limit_seconds, o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
