#pragma once

#include <cstdint>
#include <stdexcept>

#include "invhom/integer.hpp"

namespace invhom::detail {

/// Arithmetic policy for elimination over the integers.
struct IntegerRing {
  using value_type = Integer;
  static constexpr bool is_field = false;

  bool is_zero(const Integer& a) const { return sgn(a) == 0; }
  bool is_unit(const Integer& a) const { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }
  int compare_magnitude(const Integer& a, const Integer& b) const {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
  }
  Integer unit_inverse(const Integer& u) const { return u; }
  Integer from_integer(const Integer& x) const { return x; }
  Integer to_integer(const Integer& x) const { return x; }
  Integer mul(const Integer& a, const Integer& b) const { return a * b; }
  Integer add(const Integer& a, const Integer& b) const { return a + b; }
  Integer neg(const Integer& a) const { return -a; }
  /// target -= c * src
  void submul(Integer& target, const Integer& c, const Integer& src) const {
    mpz_submul(target.get_mpz_t(), c.get_mpz_t(), src.get_mpz_t());
  }
  /// a = q*b + r with |r| <= |b|/2.
  void div_round(const Integer& a, const Integer& b, Integer& q, Integer& r) const {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer twice = r * 2;
    if (mpz_cmpabs(twice.get_mpz_t(), b.get_mpz_t()) > 0) {
      r -= b;
      q += 1;
    }
  }
  bool is_negative(const Integer& a) const { return sgn(a) < 0; }
};

/// Arithmetic policy for elimination over Z/p, p prime and below 2^31.
struct PrimeField {
  using value_type = std::int64_t;
  static constexpr bool is_field = true;
  std::int64_t p;

  explicit PrimeField(std::int64_t prime) : p(prime) {
    if (prime < 2 || prime >= (std::int64_t{1} << 31))
      throw std::invalid_argument("PrimeField: modulus out of range");
  }

  std::int64_t norm(std::int64_t a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  bool is_zero(std::int64_t a) const { return a == 0; }
  bool is_unit(std::int64_t a) const { return a != 0; }
  int compare_magnitude(std::int64_t, std::int64_t) const { return 0; }
  std::int64_t unit_inverse(std::int64_t u) const {
    std::int64_t a = u, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return norm(x0);
  }
  std::int64_t from_integer(const Integer& x) const {
    Integer r = mod_floor(x, Integer(static_cast<long>(p)));
    return static_cast<std::int64_t>(mpz_get_si(r.get_mpz_t()));
  }
  Integer to_integer(std::int64_t x) const { return Integer(static_cast<long>(x)); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p; }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p; }
  std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p - a; }
  void submul(std::int64_t& target, std::int64_t c, std::int64_t src) const {
    target = norm(target - (c * src) % p);
  }
  void div_round(std::int64_t a, std::int64_t b, std::int64_t& q, std::int64_t& r) const {
    q = mul(a, unit_inverse(b));
    r = 0;
  }
  bool is_negative(std::int64_t) const { return false; }
};

}  // namespace invhom::detail
