#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invhom/integer.hpp"
#include "invhom/sparse_matrix.hpp"

namespace invhom {

struct SnfResult {
  IntVector s;  // d_1 | d_2 | ... | d_r, all positive (units included)
  SparseIntMatrix u;
  SparseIntMatrix v;
};

/// Smith normal form with explicit unimodular transforms: u * m * v = diag(s).
SnfResult smith_normal_form(const SparseIntMatrix& m);

/// Nonzero invariant factors only (no transforms).
IntVector invariant_factors(const SparseIntMatrix& m);

/// Rank over Z/p by sparse elimination (p prime, p < 2^31).
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p);

/// Rank over the rationals.
std::size_t rank_over_q(const SparseIntMatrix& m);

/// Saturated lattice basis of the integer kernel, one basis vector per column.
SparseIntMatrix kernel_basis(const SparseIntMatrix& m);

/// Some x with m * x = b, or nullopt if b is outside the column lattice.
std::optional<IntVector> solve_in_lattice(const SparseIntMatrix& m, std::span<const Integer> b);

/// A finitely generated abelian group Z^r + Z/t_1 + ... + Z/t_k with t_i | t_{i+1}.
/// Coordinates list the torsion summands first, then the free ones.
struct FgAbelianGroup {
  using Reducer = std::function<IntVector(std::span<const Integer>)>;

  std::size_t free_rank = 0;
  IntVector torsion;

  // Generator data: ambient vectors for each abstract generator and a map
  // from ambient vectors (elements of the represented subquotient) to coordinates.
  std::size_t ambient_dim = 0;
  std::vector<IntVector> generators;
  Reducer reducer;

  static FgAbelianGroup from_invariants(std::size_t free_rank, IntVector torsion);

  std::size_t num_generators() const { return torsion.size() + free_rank; }
  bool has_generator_data() const { return static_cast<bool>(reducer); }
  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Order of a finite group; 0 for infinite groups.
  Integer order() const;
  /// Exponent of the torsion part (1 for a torsion-free group).
  Integer exponent() const;
  /// Coordinates with torsion entries reduced into [0, t_i).
  IntVector normalize(IntVector coords) const;
  IntVector reduce(std::span<const Integer> ambient) const;
  std::string to_string() const;
};

/// Same invariant factors and free rank.
bool isomorphic(const FgAbelianGroup& a, const FgAbelianGroup& b);

/// Parse-free comparison helper: group with the given rank and factors (factors
/// are normalized into invariant-factor form, units dropped).
FgAbelianGroup abelian_group(std::size_t free_rank, const IntVector& elementary);

/// Z^ambient_rank modulo the column lattice of relations, with generator data.
FgAbelianGroup present_fg_abelian(std::size_t ambient_rank, const SparseIntMatrix& relations);

/// Homomorphism given on coordinates: matrix is (target generators) x (source generators).
struct AbelianHom {
  FgAbelianGroup source;
  FgAbelianGroup target;
  std::vector<IntVector> matrix;  // matrix[i][j]: image of source generator j, coordinate i

  IntVector apply(std::span<const Integer> x) const;
  IntVector column(std::size_t j) const;
};

/// Validates that every source relation maps into the target relation lattice.
AbelianHom make_hom(const FgAbelianGroup& source, const FgAbelianGroup& target,
                    std::vector<IntVector> matrix);
/// Hom whose matrix is given by columns (images of each source generator).
AbelianHom make_hom_from_columns(const FgAbelianGroup& source, const FgAbelianGroup& target,
                                 const std::vector<IntVector>& columns);
AbelianHom compose(const AbelianHom& second, const AbelianHom& first);
AbelianHom identity_hom(const FgAbelianGroup& g);
AbelianHom scalar_hom(const FgAbelianGroup& g, const Integer& k);
bool is_zero_hom(const AbelianHom& f);
bool homs_equal(const AbelianHom& f, const AbelianHom& g);

/// Subgroup of g generated by the given coordinate vectors. The result's
/// generator data is expressed in g's coordinates.
FgAbelianGroup subgroup_generated(const FgAbelianGroup& g, const std::vector<IntVector>& gens);
/// Membership of an element (in g's coordinates) in the subgroup generated by gens.
bool in_subgroup(const FgAbelianGroup& g, const std::vector<IntVector>& gens,
                 std::span<const Integer> x);

FgAbelianGroup kernel_of_hom(const AbelianHom& f);
FgAbelianGroup image_of_hom(const AbelianHom& f);
bool is_injective(const AbelianHom& f);
bool is_surjective(const AbelianHom& f);
bool is_isomorphism(const AbelianHom& f);

/// Elements fixed by every endomorphism in the family, with coordinates in g.
FgAbelianGroup fixed_points_of_hom_family(const FgAbelianGroup& g,
                                          const std::vector<AbelianHom>& actions);

}  // namespace invhom
