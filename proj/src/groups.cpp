#include "invhom/groups.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace invhom {

bool FiniteGroup::is_abelian() const {
  for (elem_t a = 0; a < order; ++a)
    for (elem_t b = a + 1; b < order; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::size_t FiniteGroup::element_order(elem_t g) const {
  std::size_t k = 1;
  for (elem_t x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

void validate_group(const FiniteGroup& g) {
  const std::size_t n = g.order;
  if (n == 0) throw std::invalid_argument("group order must be positive");
  if (g.mul_table.size() != n * n || g.inv_table.size() != n)
    throw std::invalid_argument("group table has wrong size");
  for (elem_t a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a)
      throw std::invalid_argument("element 0 is not the identity");
    if (g.inv(a) >= n || g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0)
      throw std::invalid_argument("inverse table is wrong");
  }
  for (auto x : g.mul_table)
    if (x >= n) throw std::invalid_argument("group table entry out of range");
  auto assoc = [&](elem_t a, elem_t b, elem_t c) {
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
      throw std::invalid_argument("multiplication is not associative");
  };
  if (n <= 64) {
    for (elem_t a = 0; a < n; ++a)
      for (elem_t b = 0; b < n; ++b)
        for (elem_t c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eedULL ^ n);
    std::uniform_int_distribution<elem_t> pick(0, static_cast<elem_t>(n - 1));
    for (int i = 0; i < 100000; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
}

FiniteGroup make_group(std::string name, std::size_t order, std::vector<elem_t> table) {
  if (order == 0) throw std::invalid_argument("group order must be positive");
  if (table.size() != order * order) throw std::invalid_argument("group table has wrong size");
  FiniteGroup g;
  g.order = order;
  g.mul_table = std::move(table);
  g.inv_table.assign(order, 0);
  g.name = std::move(name);
  for (elem_t a = 0; a < order; ++a) {
    bool found = false;
    for (elem_t b = 0; b < order && !found; ++b)
      if (g.mul_table[a * order + b] == 0) {
        g.inv_table[a] = b;
        found = true;
      }
    if (!found) throw std::invalid_argument("element has no inverse");
  }
  validate_group(g);
  return g;
}

FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<elem_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<elem_t>((a + b) % n);
  return make_group("cyclic:" + std::to_string(n), n, std::move(t));
}

FiniteGroup make_product(const FiniteGroup& a, const FiniteGroup& b) {
  std::size_t n = a.order * b.order;
  std::vector<elem_t> t(n * n);
  for (elem_t x = 0; x < n; ++x)
    for (elem_t y = 0; y < n; ++y) {
      elem_t xa = static_cast<elem_t>(x / b.order), xb = static_cast<elem_t>(x % b.order);
      elem_t ya = static_cast<elem_t>(y / b.order), yb = static_cast<elem_t>(y % b.order);
      t[static_cast<std::size_t>(x) * n + y] =
          static_cast<elem_t>(a.mul(xa, ya) * b.order + b.mul(xb, yb));
    }
  return make_group("product:" + a.name + "," + b.name, n, std::move(t));
}

bool Subgroup::contains(elem_t x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

elem_t Subgroup::local(elem_t x) const {
  auto it = std::lower_bound(members.begin(), members.end(), x);
  if (it == members.end() || *it != x) throw std::out_of_range("element not in subgroup");
  return static_cast<elem_t>(it - members.begin());
}

Subgroup make_subgroup(const FiniteGroup& parent, std::vector<elem_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members[0] != 0) throw std::invalid_argument("subgroup lacks identity");
  Subgroup s;
  s.parent = parent;
  s.members = std::move(members);
  std::size_t m = s.members.size();
  std::vector<elem_t> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      elem_t p = parent.mul(s.members[i], s.members[j]);
      if (!s.contains(p)) throw std::invalid_argument("subset not closed under multiplication");
      t[i * m + j] = s.local(p);
    }
  for (elem_t x : s.members)
    if (!s.contains(parent.inv(x))) throw std::invalid_argument("subset not closed under inverses");
  std::string name = "subgroup(" + parent.name + ";";
  for (std::size_t i = 0; i < m; ++i) name += (i ? " " : "") + std::to_string(s.members[i]);
  s.group = make_group(name + ")", m, std::move(t));
  return s;
}

Subgroup generated_subgroup(const FiniteGroup& parent, const std::vector<elem_t>& gens) {
  std::vector<char> in(parent.order, 0);
  std::vector<elem_t> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (elem_t s : gens) {
      elem_t y = parent.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  return make_subgroup(parent, std::move(members));
}

bool GroupAction::is_trivial() const {
  for (const auto& p : perm)
    for (elem_t x = 0; x < p.size(); ++x)
      if (p[x] != x) return false;
  return true;
}

namespace {

Permutation compose_perm(const Permutation& f, const Permutation& g) {
  Permutation h(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) h[x] = f[g[x]];
  return h;
}

void check_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<char> seen(n, 0);
  for (elem_t x : p) {
    if (x >= n || seen[x]) throw std::invalid_argument("image is not a bijection");
    seen[x] = 1;
  }
}

Permutation identity_perm(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), elem_t{0});
  return p;
}

}  // namespace

void validate_action(const GroupAction& a) {
  if (a.perm.size() != a.q.order) throw std::invalid_argument("action table has wrong size");
  for (const auto& p : a.perm) {
    check_permutation(p, a.g.order);
    for (elem_t x = 0; x < a.g.order; ++x)
      for (elem_t y = 0; y < a.g.order; ++y)
        if (p[a.g.mul(x, y)] != a.g.mul(p[x], p[y]))
          throw std::invalid_argument("image is not an automorphism");
  }
  if (a.perm[0] != identity_perm(a.g.order))
    throw std::invalid_argument("identity of Q does not act trivially");
  for (elem_t s = 0; s < a.q.order; ++s)
    for (elem_t t = 0; t < a.q.order; ++t)
      if (a.perm[a.q.mul(s, t)] != compose_perm(a.perm[s], a.perm[t]))
        throw std::invalid_argument("action is not a homomorphism");
}

GroupAction make_action(const FiniteGroup& q, const FiniteGroup& g,
                        const std::vector<std::pair<elem_t, Permutation>>& generator_images) {
  for (const auto& [s, p] : generator_images) {
    if (s >= q.order) throw std::invalid_argument("generator index out of range");
    check_permutation(p, g.order);
    for (elem_t x = 0; x < g.order; ++x)
      for (elem_t y = 0; y < g.order; ++y)
        if (p[g.mul(x, y)] != g.mul(p[x], p[y]))
          throw std::invalid_argument("generator image is not an automorphism");
  }
  GroupAction a;
  a.q = q;
  a.g = g;
  a.perm.assign(q.order, Permutation{});
  a.perm[0] = identity_perm(g.order);
  std::vector<elem_t> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    elem_t x = frontier[i];
    for (const auto& [s, p] : generator_images) {
      elem_t y = q.mul(x, s);
      Permutation img = compose_perm(a.perm[x], p);
      if (a.perm[y].empty()) {
        a.perm[y] = std::move(img);
        frontier.push_back(y);
      } else if (a.perm[y] != img) {
        throw std::invalid_argument("generator images do not satisfy the relations of Q");
      }
    }
  }
  if (frontier.size() != q.order) throw std::invalid_argument("images do not generate Q");
  validate_action(a);
  return a;
}

GroupAction inversion_action(const FiniteGroup& g) {
  if (!g.is_abelian()) throw std::invalid_argument("inversion is an automorphism only for abelian G");
  Permutation p(g.order);
  for (elem_t x = 0; x < g.order; ++x) p[x] = g.inv(x);
  return make_action(make_cyclic(2), g, {{1, p}});
}

GroupAction negation_action(std::size_t n) { return inversion_action(make_cyclic(n)); }

GroupAction trivial_action(const FiniteGroup& q, const FiniteGroup& g) {
  GroupAction a;
  a.q = q;
  a.g = g;
  a.perm.assign(q.order, identity_perm(g.order));
  validate_action(a);
  return a;
}

Subgroup fixed_subgroup(const GroupAction& a) {
  std::vector<elem_t> members;
  for (elem_t x = 0; x < a.g.order; ++x) {
    bool fixed = true;
    for (const auto& p : a.perm) fixed = fixed && p[x] == x;
    if (fixed) members.push_back(x);
  }
  return make_subgroup(a.g, std::move(members));
}

bool is_stable(const GroupAction& a, const Subgroup& k) {
  for (const auto& p : a.perm)
    for (elem_t x : k.members)
      if (!k.contains(p[x])) return false;
  return true;
}

GroupAction restrict_action(const GroupAction& a, const Subgroup& k) {
  if (!is_stable(a, k)) throw std::invalid_argument("subgroup is not Q-stable");
  GroupAction r;
  r.q = a.q;
  r.g = k.group;
  for (const auto& p : a.perm) {
    Permutation loc(k.order());
    for (std::size_t i = 0; i < k.order(); ++i) loc[i] = k.local(p[k.members[i]]);
    r.perm.push_back(std::move(loc));
  }
  validate_action(r);
  return r;
}

std::vector<elem_t> coset_representatives(const FiniteGroup& g, const Subgroup& k) {
  std::vector<char> covered(g.order, 0);
  std::vector<elem_t> reps;
  for (elem_t x = 0; x < g.order; ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (elem_t h : k.members) covered[g.mul(h, x)] = 1;
  }
  return reps;
}

CosetSystem make_coset_system(const FiniteGroup& g, const Subgroup& k,
                              const std::vector<elem_t>& reps) {
  CosetSystem cs;
  cs.reps = reps;
  std::sort(cs.reps.begin(), cs.reps.end());
  if (cs.reps.empty() || cs.reps[0] != 0)
    throw std::invalid_argument("transversal must contain the identity");
  const std::uint32_t unset = ~std::uint32_t{0};
  cs.coset_of.assign(g.order, unset);
  cs.rep_of.assign(g.order, 0);
  for (std::uint32_t c = 0; c < cs.reps.size(); ++c)
    for (elem_t h : k.members) {
      elem_t y = g.mul(h, cs.reps[c]);
      if (cs.coset_of[y] != unset) throw std::invalid_argument("two representatives share a coset");
      cs.coset_of[y] = c;
      cs.rep_of[y] = cs.reps[c];
    }
  for (auto c : cs.coset_of)
    if (c == unset) throw std::invalid_argument("representatives miss a coset");
  return cs;
}

bool is_equivariant(const GroupAction& a, const CosetSystem& cs) {
  for (const auto& p : a.perm)
    for (elem_t x = 0; x < a.g.order; ++x)
      if (p[cs.rep_of[x]] != cs.rep_of[p[x]]) return false;
  return true;
}

std::optional<std::vector<elem_t>> find_equivariant_coset_reps(const GroupAction& a,
                                                               const Subgroup& k) {
  if (!is_stable(a, k)) throw std::invalid_argument("subgroup is not Q-stable");
  const FiniteGroup& g = a.g;
  CosetSystem base = make_coset_system(g, k, coset_representatives(g, k));
  std::size_t nc = base.index();
  std::vector<std::optional<elem_t>> chosen(nc);
  // Q permutes right cosets; each orbit is decided independently from its
  // smallest coset c0: the representative x of c0 must be fixed by Stab(c0),
  // and then q(x) represents q(c0).
  for (std::uint32_t c0 = 0; c0 < nc; ++c0) {
    if (chosen[c0]) continue;
    elem_t r0 = base.reps[c0];
    std::vector<elem_t> stab;
    for (elem_t qi = 0; qi < a.q.order; ++qi)
      if (base.coset_of[a.apply(qi, r0)] == c0) stab.push_back(qi);
    std::optional<elem_t> pick;
    for (elem_t h : k.members) {
      elem_t x = g.mul(h, r0);
      bool fixed = true;
      for (elem_t qi : stab) fixed = fixed && a.apply(qi, x) == x;
      if (fixed && (!pick || x < *pick)) pick = x;
    }
    if (!pick) return std::nullopt;
    for (elem_t qi = 0; qi < a.q.order; ++qi)
      chosen[base.coset_of[a.apply(qi, *pick)]] = a.apply(qi, *pick);
  }
  std::vector<elem_t> reps;
  for (auto& c : chosen) reps.push_back(*c);
  std::sort(reps.begin(), reps.end());
  CosetSystem cs = make_coset_system(g, k, reps);
  if (!is_equivariant(a, cs)) throw std::logic_error("equivariant search produced a bad transversal");
  return reps;
}

namespace {

struct SpecParser {
  std::string_view s;
  std::size_t pos = 0;

  bool consume(std::string_view prefix) {
    if (s.substr(pos, prefix.size()) != prefix) return false;
    pos += prefix.size();
    return true;
  }

  std::size_t number() {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + pos)
      throw std::invalid_argument("expected a number at position " + std::to_string(pos));
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
  }

  FiniteGroup group() {
    if (consume("cyclic:")) {
      std::size_t n = number();
      if (n == 0 || n > 4096) throw std::invalid_argument("cyclic order must be in 1..4096");
      return make_cyclic(n);
    }
    if (consume("product:")) {
      FiniteGroup a = group();
      if (!consume(",")) throw std::invalid_argument("product expects two comma-separated factors");
      FiniteGroup b = group();
      if (a.order * b.order > 4096) throw std::invalid_argument("group order too large");
      return make_product(a, b);
    }
    throw std::invalid_argument("unknown group spec at position " + std::to_string(pos));
  }
};

}  // namespace

FiniteGroup parse_group_spec(std::string_view spec) {
  SpecParser p{spec};
  FiniteGroup g = p.group();
  if (p.pos != spec.size()) throw std::invalid_argument("trailing characters in group spec");
  return g;
}

GroupAction parse_action_spec(std::string_view spec, const FiniteGroup& g) {
  if (spec == "negation") return inversion_action(g);
  if (spec == "trivial") return trivial_action(make_cyclic(2), g);
  if (spec.substr(0, 5) == "perm:") {
    std::string path(spec.substr(5));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open permutation file " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad permutation file: ") + e.what());
    }
    if (!j.is_array() || j.empty())
      throw std::invalid_argument("permutation file must hold a non-empty list");
    std::vector<Permutation> perms;
    for (const auto& item : j) {
      auto p = item.get<std::vector<elem_t>>();
      check_permutation(p, g.order);
      perms.push_back(std::move(p));
    }
    // Q = product of cyclic groups of the permutation orders, one factor each.
    std::vector<std::size_t> orders;
    for (const auto& p : perms) {
      std::size_t k = 1;
      for (Permutation x = p; x != identity_perm(g.order); x = compose_perm(p, x)) ++k;
      orders.push_back(k);
    }
    FiniteGroup q = make_cyclic(orders[0]);
    for (std::size_t i = 1; i < orders.size(); ++i) q = make_product(q, make_cyclic(orders[i]));
    std::vector<std::pair<elem_t, Permutation>> images;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      std::size_t stride = 1;
      for (std::size_t j = i + 1; j < orders.size(); ++j) stride *= orders[j];
      images.push_back({static_cast<elem_t>(stride), perms[i]});
    }
    return make_action(q, g, images);
  }
  throw std::invalid_argument("unknown action spec: " + std::string(spec));
}

}  // namespace invhom
