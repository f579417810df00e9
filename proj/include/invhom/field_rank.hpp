#pragma once

#include <cstddef>
#include <cstdint>

#include "invhom/kernels.hpp"
#include "invhom/sparse_matrix.hpp"

namespace invhom {

/// Rank over Z/p by dense row reduction with the given kernels (p <= kMaxVectorPrime).
std::size_t dense_rank_mod_p(const SparseIntMatrix& m, std::uint32_t p,
                             const kernels::KernelTable& k);
/// Rank over Z/2 on bit-packed rows.
std::size_t dense_rank_gf2(const SparseIntMatrix& m, const kernels::KernelTable& k);
/// Rank over Z/p: dense vector path when the matrix is small enough, sparse
/// field elimination otherwise.
std::size_t field_rank(const SparseIntMatrix& m, std::uint32_t p);

}  // namespace invhom
