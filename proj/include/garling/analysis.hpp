#pragma once

#include <cstdint>
#include <vector>

#include "garling/constructions.hpp"
#include "garling/norms.hpp"
#include "garling/sparse_vector.hpp"
#include "garling/weights.hpp"

namespace garling {

/// Certified lower bound on an equivalence or domination constant, together
/// with the probe coefficients that realize it. Never a claimed supremum.
struct ConstantEstimate {
  double lower_bound = 0.0;
  std::vector<double> witness_coefficients;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Lower bound on sup over permutations pi of |pi(x)|_g / |x|_g. The
/// nonincreasing rearrangement is evaluated first and is provably maximal
/// (it realizes the Lorentz norm), so the bound is in fact exact; the
/// nondecreasing rearrangement and `trials` random shuffles are probed too.
/// Support capped at 10^4.
ConstantEstimate symmetry_defect(const SparseVector& x, NormParams params, const Weights& w,
                                 std::int64_t trials, std::uint64_t seed);

/// Lower bound on the least C with |sum a A_n|_g <= C |sum a B_n|_g, probed
/// over unit coordinates, +-1 sign patterns (2^min(N,16) of them) and `trials`
/// Gaussian coefficient vectors. Block counts must match and be at most 64.
ConstantEstimate domination_lower_bound(const BlockBasis& basis_a, const BlockBasis& basis_b,
                                        NormParams params, const Weights& w,
                                        std::int64_t trials, std::uint64_t seed);

/// True iff every probed coefficient vector b satisfies
/// |sum b_n block_n|_g <= |b|_p + 1e-9. Same probe family as above.
bool lp_domination_check(const BlockBasis& basis, NormParams params, const Weights& w,
                         std::int64_t trials, std::uint64_t seed);

}  // namespace garling
