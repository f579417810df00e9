#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace invhom {

/// Arbitrary-precision integer used by every exact computation.
using Integer = mpz_class;
using IntVector = std::vector<Integer>;

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline bool fits_int64(const Integer& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62;
}

inline std::int64_t to_int64(const Integer& x) {
  return static_cast<std::int64_t>(mpz_get_si(x.get_mpz_t()));
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Least non-negative residue of x modulo m (m > 0).
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& x) {
  if (d == 0) return x == 0;
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
inline void extended_gcd(const Integer& a, const Integer& b, Integer& g,
                         Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
}

}  // namespace invhom
