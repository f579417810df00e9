#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace invhom {

using elem_t = std::uint32_t;
using Permutation = std::vector<elem_t>;

/// Finite group on elements 0..order-1 with 0 the identity and a full table.
struct FiniteGroup {
  std::size_t order = 1;
  std::vector<elem_t> mul_table{0};
  std::vector<elem_t> inv_table{0};
  std::string name = "trivial";

  elem_t mul(elem_t a, elem_t b) const { return mul_table[a * order + b]; }
  elem_t inv(elem_t a) const { return inv_table[a]; }
  bool is_abelian() const;
  std::size_t element_order(elem_t g) const;
};

/// Checks identity, inverse and associativity laws (exhaustive up to order 64,
/// 10^5 sampled triples above). Throws std::invalid_argument on failure.
void validate_group(const FiniteGroup& g);

/// Group from a multiplication table; inverses are derived and laws validated.
FiniteGroup make_group(std::string name, std::size_t order, std::vector<elem_t> table);
FiniteGroup make_cyclic(std::size_t n);
/// Direct product; element (i, j) has index i * |b| + j.
FiniteGroup make_product(const FiniteGroup& a, const FiniteGroup& b);

struct Subgroup {
  FiniteGroup parent;
  std::vector<elem_t> members;  // sorted, members[0] == 0
  FiniteGroup group;            // element i of group is members[i] of parent

  std::size_t order() const { return members.size(); }
  bool contains(elem_t x) const;
  /// Index inside the subgroup of a parent element (must be a member).
  elem_t local(elem_t x) const;
};

/// Subgroup from a set of parent elements; closure and inverses are validated.
Subgroup make_subgroup(const FiniteGroup& parent, std::vector<elem_t> members);
/// Subgroup generated by the given elements.
Subgroup generated_subgroup(const FiniteGroup& parent, const std::vector<elem_t>& gens);

/// Q acting on G by automorphisms: perm[q][x] is the image of x under q.
struct GroupAction {
  FiniteGroup q;
  FiniteGroup g;
  std::vector<Permutation> perm;

  elem_t apply(elem_t qi, elem_t x) const { return perm[qi][x]; }
  bool is_trivial() const;
};

/// Extends generator images to all of Q and validates the action laws.
GroupAction make_action(const FiniteGroup& q, const FiniteGroup& g,
                        const std::vector<std::pair<elem_t, Permutation>>& generator_images);
/// Z/2 acting on Z/n by x -> -x.
GroupAction negation_action(std::size_t n);
/// Z/2 acting on an abelian group by inversion.
GroupAction inversion_action(const FiniteGroup& g);
GroupAction trivial_action(const FiniteGroup& q, const FiniteGroup& g);
/// Checks automorphism and homomorphism laws (exhaustive).
void validate_action(const GroupAction& a);

Subgroup fixed_subgroup(const GroupAction& a);
bool is_stable(const GroupAction& a, const Subgroup& k);
/// Action of Q on a Q-stable subgroup.
GroupAction restrict_action(const GroupAction& a, const Subgroup& k);

/// Right cosets K x with a chosen representative per coset.
struct CosetSystem {
  std::vector<elem_t> reps;      // one per coset, ascending
  std::vector<std::uint32_t> coset_of;  // element -> coset index
  std::vector<elem_t> rep_of;    // element -> representative of its coset
  std::size_t index() const { return reps.size(); }
};

/// Smallest element of each right coset; the identity represents K itself.
std::vector<elem_t> coset_representatives(const FiniteGroup& g, const Subgroup& k);
/// Validates that reps is a right transversal of K in G containing the identity.
CosetSystem make_coset_system(const FiniteGroup& g, const Subgroup& k,
                              const std::vector<elem_t>& reps);
/// q(rep(x)) == rep(q(x)) for all q, x.
bool is_equivariant(const GroupAction& a, const CosetSystem& cs);
/// Equivariant transversal, or nullopt when none exists. K must be Q-stable.
std::optional<std::vector<elem_t>> find_equivariant_coset_reps(const GroupAction& a,
                                                               const Subgroup& k);

/// Grammar: cyclic:N | product:<spec>,<spec>.
FiniteGroup parse_group_spec(std::string_view spec);
/// Grammar: negation | trivial | perm:<file>. The perm file is a JSON list of
/// permutations of G; Q is the product of the cyclic groups they generate.
GroupAction parse_action_spec(std::string_view spec, const FiniteGroup& g);

}  // namespace invhom
