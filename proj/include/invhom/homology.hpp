#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "invhom/chains.hpp"
#include "invhom/groups.hpp"
#include "invhom/linalg.hpp"

namespace invhom {

/// Homology groups of a complex in degrees 0..top.
struct HomologyProfile {
  ComplexPtr complex;
  Integer coefficients = 0;               // 0: Z, m: Z/m
  std::vector<FgAbelianGroup> groups;     // generator data when computed directly
  std::vector<FgAbelianGroup> uct_groups; // Z/m: universal coefficient values

  std::size_t top_degree() const { return groups.empty() ? 0 : groups.size() - 1; }
  const FgAbelianGroup& operator[](std::size_t n) const { return groups.at(n); }
  std::string coefficients_name() const;
};

/// H_n over Z of an integral complex, with generators and a reducer on cycles.
FgAbelianGroup integral_homology_degree(const ComplexSlice& c, std::size_t n);
/// H_n with Z/p coefficients, as (Z/p)^b with generators and a reducer.
FgAbelianGroup field_homology_degree(const ComplexSlice& c, std::size_t n, std::uint32_t p);

/// H_n(C; Z/m) from integral H_n and H_{n-1} (pass nullptr when n = 0).
FgAbelianGroup uct_group(const FgAbelianGroup& hn, const FgAbelianGroup* hn_minus_1,
                         const Integer& m);

/// Homology in degrees 0..top (top < max_degree). For prime m the field
/// computation is cross-checked against the universal coefficient values
/// (std::logic_error on disagreement). Complexes with a modulus p accept m = 0 or p.
HomologyProfile homology(ComplexPtr c, const Integer& m, std::size_t top);
/// Degrees 0..max_degree-1.
HomologyProfile homology(ComplexPtr c, const Integer& m = 0);

/// dim_{Z/p} H_n(C; Z/p) = dim C_n - rank d_n - rank d_{n+1}, by the dense field kernels.
std::vector<std::size_t> field_betti_numbers(const ComplexSlice& c, std::uint32_t p,
                                             std::size_t top);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// d o d = 0 and, for each prime, field Betti numbers against the universal
/// coefficient prediction from the integral profile.
std::vector<CheckResult> engine_cross_checks(const HomologyProfile& integral,
                                             const std::vector<std::uint32_t>& primes);

/// f_* : H_n(source) -> H_n(target); both profiles need generator data.
AbelianHom induced_map(const ChainMap& f, const HomologyProfile& source,
                       const HomologyProfile& target, std::size_t n);

/// q_* on H_n of the bar complex, one entry per element of Q.
std::vector<AbelianHom> action_on_homology(const GroupAction& a, const HomologyProfile& bar,
                                           std::size_t n);
/// Classes of H_n fixed by every q_*, in coordinates of bar[n].
FgAbelianGroup fixed_homology(const GroupAction& a, const HomologyProfile& bar, std::size_t n);

/// Complexes and homology for the long exact sequence of 0 -> C_Q -> C^Q -> D -> 0
/// (reduced complexes, Q of prime order), degrees 1..top.
struct LesData {
  GroupAction action;
  ComplexPtr coinv;
  ComplexPtr inv;
  ComplexPtr d;
  ChainMap norm;
  ChainMap projection;
  HomologyProfile h_coinv;  // through top
  HomologyProfile h_inv;    // through top
  HomologyProfile h_d;      // through top + 1
  std::size_t top = 0;
};

LesData build_les(const GroupAction& a, std::size_t top, const BuildOptions& opt = {});

/// h_n(D) -> H_{n-1}(C_Q): lift to C^Q, apply d, divide by N.
AbelianHom connecting_homomorphism(const LesData& les, std::size_t n);

/// A sequence A_0 -> A_1 -> ... -> A_k of homomorphisms.
struct LesNode {
  std::string label;
  FgAbelianGroup group;
};
struct ExactSequence {
  std::vector<LesNode> nodes;
  std::vector<AbelianHom> maps;  // maps[i] : nodes[i] -> nodes[i+1]
};

struct ExactnessEntry {
  std::string label;
  bool composite_zero = false;
  Integer kernel_order;
  Integer image_order;
  bool exact = false;
};

/// The sequence h_{top+1}(D) -> H_top(C_Q) -> H_top(C^Q) -> h_top(D) -> ... -> h_1(D) -> 0.
ExactSequence les_sequence(const LesData& les);
/// Exactness at every interior node (finite groups only).
std::vector<ExactnessEntry> exactness_check(const ExactSequence& seq);

}  // namespace invhom
