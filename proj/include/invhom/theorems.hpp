#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "invhom/chains.hpp"
#include "invhom/groups.hpp"
#include "invhom/homology.hpp"
#include "invhom/linalg.hpp"

namespace invhom {

/// One checked statement. basis is "stated" (hard-coded expected value),
/// "derived" (assembled from stated values), "property" or "engine".
struct Claim {
  std::string statement;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string basis;
};

struct VerificationReport {
  std::string suite;
  std::vector<Claim> claims;
  std::vector<std::string> not_computed;
  double seconds = 0;

  bool passed() const;
  std::size_t failures() const;
  void check(std::string statement, bool ok, std::string computed, std::string basis,
             std::string expected = "true");
  void expect_group(std::string statement, const FgAbelianGroup& expected,
                    const FgAbelianGroup& computed, std::string basis);
  void append(const VerificationReport& other);
};

struct SuiteOptions {
  std::size_t max_degree = 4;  // highest homology degree reported
  BuildOptions build;
};

/// Q = Z/2 acting on Z/n (n odd) by negation.
VerificationReport suite_n_odd(std::size_t n, const SuiteOptions& opt);
/// Q = Z/2 acting on Z/2k (k odd) by negation.
VerificationReport suite_n_2k(std::size_t k, const SuiteOptions& opt);
/// Q = Z/2 acting on Z/2^s (s >= 2) by negation, with the quotient B(Z/2^s)/Gamma.
VerificationReport suite_n_0_mod_4(std::size_t s, const SuiteOptions& opt);
/// General properties of an action: H_0, annihilation, invertible-order isomorphisms,
/// the quotient complex and the long exact sequence (Q of prime order).
VerificationReport suite_structure(const GroupAction& a, const SuiteOptions& opt);
/// Transfer laws for a Q-stable subgroup K.
VerificationReport suite_transfer(const GroupAction& a, const Subgroup& k, const SuiteOptions& opt);
/// Chain-level relation [z_1^m] + ... + [z_m^m] = m[z_1...z_m] for sampled orbits of z.
VerificationReport suite_divisible_relation(const GroupAction& a, const std::vector<elem_t>& samples,
                                            const BuildOptions& build = {});

/// Window for the integer line: degree-1 entries |n| <= 2M, degree-2 entries |n| <= M.
struct TruncationWindow {
  std::size_t bound = 10;
  std::size_t degree1_bound() const { return 2 * bound; }
  std::size_t degree2_bound() const { return bound; }
};

/// H_1 of the invariant chains of Z under negation, truncated to a window.
VerificationReport truncated_integer_h1(const TruncationWindow& w);
/// Truncation at M = 10 against the cellular model of the circle.
VerificationReport suite_hiz();

/// Suite registry: n_odd, n_2k, n_0_mod_4, structure, transfer, divisible, integer_line.
/// Parameters: n, k, s, M, group, action, subgroup (comma-separated generators),
/// samples (comma-separated elements). Throws std::out_of_range for unknown names.
VerificationReport run_suite(const std::string& name,
                             const std::map<std::string, std::string>& params,
                             const SuiteOptions& opt);
std::vector<std::string> suite_names();

}  // namespace invhom
