#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invhom/groups.hpp"
#include "invhom/integer.hpp"
#include "invhom/sparse_matrix.hpp"

namespace invhom {

/// Raised when a builder's estimated footprint exceeds the memory budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  std::size_t memory_budget = std::size_t{2} << 30;
  unsigned threads = 0;  // 0: hardware concurrency
  bool verify = true;    // check d o d = 0 and orbit constancy
};

using tuple_t = std::uint64_t;

/// Mixed-radix tuple codes: [g_1|...|g_n] -> sum g_k |G|^(n-k).
tuple_t encode_tuple(std::size_t order, const std::vector<elem_t>& entries);
std::vector<elem_t> decode_tuple(std::size_t order, std::size_t degree, tuple_t code);
/// |G|^n, throwing BudgetExceeded on overflow.
tuple_t tuple_count(std::size_t order, std::size_t degree);

/// Formal integer combination of degree n-1 tuples, sorted by code, no zeros.
std::vector<std::pair<tuple_t, int>> bar_boundary(const FiniteGroup& g,
                                                   const std::vector<elem_t>& entries);

struct ComplexSlice {
  std::string label;
  std::size_t max_degree = 0;
  std::vector<std::size_t> dims;             // rank of C_n, n = 0..N
  std::vector<SparseIntMatrix> boundary;     // boundary[n] = d_n, boundary[0] is 0 x dims[0]
  std::vector<std::vector<tuple_t>> basis;   // representative tuple per generator (may be empty)
  Integer modulus = 0;                       // 0: over Z; p: a complex of Z/p-vector spaces
  bool reduced = false;

  const SparseIntMatrix& d(std::size_t n) const { return boundary.at(n); }
};
using ComplexPtr = std::shared_ptr<const ComplexSlice>;

struct ChainMap {
  ComplexPtr source;
  ComplexPtr target;
  std::vector<SparseIntMatrix> maps;  // maps[n] : C_n(source) -> C_n(target), n = 0..N
  std::size_t max_degree() const { return maps.empty() ? 0 : maps.size() - 1; }
};

/// Orbits of Q on degree-n tuples; representative = smallest code.
struct TupleOrbits {
  std::size_t degree = 0;
  std::vector<std::uint32_t> orbit_of;  // tuple code -> orbit index
  std::vector<tuple_t> reps;            // ascending
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint32_t> stabilizer;  // |Q| / size
  std::size_t count() const { return reps.size(); }
  std::vector<std::vector<tuple_t>> members() const;
};

TupleOrbits tuple_orbits(const GroupAction& a, std::size_t degree);
/// Burnside orbit count via fixed-point enumeration (no orbit tables).
Integer orbit_count(const GroupAction& a, std::size_t degree);
/// Q-image of a tuple code.
tuple_t act_on_tuple(const GroupAction& a, elem_t q, std::size_t degree, tuple_t code);

/// Verifies d_{n-1} d_n = 0 (mod the modulus when set); throws std::logic_error otherwise.
void verify_complex(const ComplexSlice& c);
/// Verifies d f = f d in every degree; throws std::logic_error otherwise.
void verify_chain_map(const ChainMap& f);

/// Degree 0 replaced by 0 (d_1 becomes a 0-row matrix).
ComplexPtr reduced_complex(const ComplexSlice& c);

ComplexPtr bar_complex(const FiniteGroup& g, std::size_t max_degree, const BuildOptions& opt = {});
ComplexPtr invariant_complex(const GroupAction& a, std::size_t max_degree,
                             const BuildOptions& opt = {});
ComplexPtr coinvariant_complex(const GroupAction& a, std::size_t max_degree,
                               const BuildOptions& opt = {});

/// N : coinvariants -> invariants, class of O |-> |Stab(O)| * (orbit sum of O); identity in degree 0.
ChainMap norm_chain_map(const GroupAction& a, ComplexPtr coinv, ComplexPtr inv);
/// coker N for Q of prime order p: D_0 = 0 and D_n is the mod-p span of the fixed tuples.
ComplexPtr quotient_complex_D(const GroupAction& a, const ComplexSlice& inv);
/// Invariant complex -> D, keeping the coefficients of fixed orbits.
ChainMap projection_to_D_chain_map(ComplexPtr inv, ComplexPtr d);

/// bar(G^Q) -> invariant complex, tuples to their singleton orbits.
ChainMap fixed_inclusion_chain_map(const GroupAction& a, ComplexPtr bar_fixed, ComplexPtr inv);
/// invariant complex -> bar(G), orbit sums expanded.
ChainMap invariant_inclusion_chain_map(const GroupAction& a, ComplexPtr inv, ComplexPtr bar);
/// bar(G) -> bar(G), the tuple permutation induced by q.
ChainMap action_chain_map(const GroupAction& a, elem_t q, ComplexPtr bar);
/// bar(K) -> bar(G), or invariant(K) -> invariant(G) when actions are given.
ChainMap subgroup_inclusion_chain_map(const Subgroup& k, ComplexPtr bar_k, ComplexPtr bar_g);
ChainMap invariant_subgroup_inclusion_chain_map(const GroupAction& a, const Subgroup& k,
                                                ComplexPtr inv_k, ComplexPtr inv_g);

/// Transfer bar(G) -> bar(K) built from a right transversal.
ChainMap transfer_chain_map(const Subgroup& k, const CosetSystem& cs, ComplexPtr bar_g,
                            ComplexPtr bar_k);
/// Transfer on invariant complexes; needs an equivariant transversal or a trivial Q-action on K.
ChainMap invariant_transfer_chain_map(const GroupAction& a, const Subgroup& k,
                                      const CosetSystem& cs, ComplexPtr inv_g, ComplexPtr inv_k);

/// Subcomplex of chains fixed by an automorphism family of a complex over Z.
ComplexPtr invariant_subcomplex(const ComplexSlice& c,
                                const std::vector<std::vector<SparseIntMatrix>>& automorphisms);
/// Cellular chains of the real line over Z (Z in degrees 0 and 1, zero boundary,
/// through degree 2) with the reflection acting by +1 and -1, passed to invariant_subcomplex.
ComplexPtr s1_counterexample_complex();

ChainMap compose(const ChainMap& second, const ChainMap& first);

/// Bytes needed for a complex with these basis sizes and entries per column.
double estimate_bytes(const std::vector<double>& dims, double entries_per_column);
/// Whether tuple complexes of a group of this order through max_degree fit the budget.
bool fits_budget(std::size_t order, std::size_t max_degree, const BuildOptions& opt);

}  // namespace invhom
