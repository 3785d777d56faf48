#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dualalpha/complex.hpp"
#include "dualalpha/sparse_fp.hpp"

namespace dualalpha {

using BettiVector = std::vector<std::size_t>;

/// Rank over F_p by sparse Gaussian elimination. Pivots are chosen
/// Markowitz-style: the sparsest remaining row, and within it the entry
/// whose column is sparsest.
std::size_t rank_fp(const SparseMatrixFp& matrix);

/// beta_k = |X_k| - rank d_k - rank d_{k+1} for k = 0..max_k, using only
/// the simplices stored in `complex` (d_{k+1} is empty above its top
/// dimension). Throws std::invalid_argument for a non-prime modulus.
BettiVector betti(const FilteredComplex& complex, std::uint32_t prime, int max_k);

/// Unsigned coefficients of (1 + t)(1 + 2t)...(1 + (n-1)t), the Betti
/// numbers of the configuration space of n points in the plane.
std::vector<std::uint64_t> stirling_reference(int n);

}  // namespace dualalpha
