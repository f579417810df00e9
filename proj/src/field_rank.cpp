#include "invhom/field_rank.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "invhom/linalg.hpp"

namespace invhom {

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Work estimate min(r,c)^2 * max(r,c) for dense elimination.
double dense_work(const SparseIntMatrix& m) {
  double a = static_cast<double>(std::min(m.rows(), m.cols()));
  double b = static_cast<double>(std::max(m.rows(), m.cols()));
  return a * a * b;
}

}  // namespace

std::size_t dense_rank_mod_p(const SparseIntMatrix& m, std::uint32_t p,
                             const kernels::KernelTable& k) {
  if (p < 2 || p > kernels::kMaxVectorPrime) throw std::invalid_argument("dense_rank_mod_p: prime out of range");
  // Rows are the shorter dimension so vectors run along the longer one.
  bool transpose = m.rows() > m.cols();
  std::size_t nr = transpose ? m.cols() : m.rows();
  std::size_t nc = transpose ? m.rows() : m.cols();
  std::vector<std::vector<std::uint32_t>> a(nr, std::vector<std::uint32_t>(nc, 0));
  const Integer pz(p);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) {
      auto v = static_cast<std::uint32_t>(mod_floor(e.value, pz).get_ui());
      if (transpose)
        a[c][e.index] = v;
      else
        a[e.index][c] = v;
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t piv = rank;
    while (piv < nr && a[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(a[piv], a[rank]);
    std::uint32_t inv = inverse_mod(a[rank][col], p);
    for (std::size_t j = col; j < nc; ++j)
      a[rank][j] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[rank][j]) * inv) % p);
    for (std::size_t r = rank + 1; r < nr; ++r) {
      std::uint32_t v = a[r][col];
      if (v != 0) k.axpy_mod(a[r].data() + col, a[rank].data() + col, nc - col, p - v, p);
    }
    ++rank;
  }
  return rank;
}

std::size_t dense_rank_gf2(const SparseIntMatrix& m, const kernels::KernelTable& k) {
  bool transpose = m.rows() > m.cols();
  std::size_t nr = transpose ? m.cols() : m.rows();
  std::size_t nc = transpose ? m.rows() : m.cols();
  std::size_t words = (nc + 63) / 64;
  std::vector<std::vector<std::uint64_t>> a(nr, std::vector<std::uint64_t>(words, 0));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) {
      if (mpz_odd_p(e.value.get_mpz_t()) == 0) continue;
      std::size_t r = transpose ? c : e.index;
      std::size_t j = transpose ? e.index : c;
      a[r][j / 64] |= std::uint64_t{1} << (j % 64);
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t w = col / 64;
    std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t piv = rank;
    while (piv < nr && (a[piv][w] & bit) == 0) ++piv;
    if (piv == nr) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < nr; ++r)
      if (a[r][w] & bit) k.xor_words(a[r].data() + w, a[rank].data() + w, words - w);
    ++rank;
  }
  return rank;
}

std::size_t field_rank(const SparseIntMatrix& m, std::uint32_t p) {
  const double entries = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  const auto& k = kernels::active_kernels();
  if (p == 2 && entries <= 4.0e8 && dense_work(m) <= 1.0e11) return dense_rank_gf2(m, k);
  if (p <= kernels::kMaxVectorPrime && entries <= 1.6e7 && dense_work(m) <= 3.0e9)
    return dense_rank_mod_p(m, p, k);
  return rank_mod_p(m, p);
}

}  // namespace invhom
