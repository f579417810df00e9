#include <random>
#include <vector>

#include "doctest.h"
#include "invhom/field_rank.hpp"
#include "invhom/kernels.hpp"
#include "invhom/linalg.hpp"

using namespace invhom;
using namespace invhom::kernels;

namespace {

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa i : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (isa_available(i)) out.push_back(i);
  return out;
}

SparseIntMatrix random_sparse(std::mt19937& rng, std::size_t r, std::size_t c, double density) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> val(-4, 4);
  SparseIntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m.set(i, j, val(rng));
  return m;
}

}  // namespace

TEST_CASE("vector axpy_mod matches scalar reference") {
  std::mt19937 rng(42);
  const auto& ref = kernel_table(Isa::Scalar);
  for (Isa isa : available_isas()) {
    const auto& k = kernel_table(isa);
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 251u, 1021u, 2039u}) {
      for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 100u}) {
        std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
        std::vector<std::uint32_t> src(n), a(n);
        for (std::size_t i = 0; i < n; ++i) {
          src[i] = d(rng);
          a[i] = d(rng);
        }
        for (std::uint32_t c : {0u, 1u, p - 1, d(rng)}) {
          auto x = a, y = a;
          ref.axpy_mod(x.data(), src.data(), n, c, p);
          k.axpy_mod(y.data(), src.data(), n, c, p);
          CHECK(x == y);
        }
      }
    }
  }
}

TEST_CASE("vector xor matches scalar reference") {
  std::mt19937_64 rng(7);
  for (Isa isa : available_isas()) {
    const auto& k = kernel_table(isa);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u}) {
      std::vector<std::uint64_t> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng();
        b[i] = rng();
      }
      auto x = a, y = a;
      kernel_table(Isa::Scalar).xor_words(x.data(), b.data(), n);
      k.xor_words(y.data(), b.data(), n);
      CHECK(x == y);
    }
  }
}

TEST_CASE("dense ranks agree with sparse elimination for every kernel") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 40, c = 1 + rng() % 70;
    auto m = random_sparse(rng, r, c, 0.15);
    auto f = invariant_factors(m);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      std::size_t expect = 0;
      for (const auto& x : f)
        if (!divides(Integer(p), x)) ++expect;
      CHECK(rank_mod_p(m, p) == expect);
      for (Isa isa : available_isas()) {
        CHECK(dense_rank_mod_p(m, p, kernel_table(isa)) == expect);
        if (p == 2) CHECK(dense_rank_gf2(m, kernel_table(isa)) == expect);
      }
      CHECK(field_rank(m, p) == expect);
    }
  }
}

TEST_CASE("dispatch reports a usable table") {
  const auto& k = active_kernels();
  CHECK(isa_available(k.isa));
  CHECK(!isa_name(k.isa).empty());
  CHECK_THROWS(dense_rank_mod_p(SparseIntMatrix(1, 1), 4099, k));
}
