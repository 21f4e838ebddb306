#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "garling/sparse_vector.hpp"
#include "garling/weights.hpp"

namespace garling {

/// Exponent 1 <= p < infinity shared by the lp, Lorentz and Garling norms.
class NormParams {
 public:
  explicit NormParams(double p);
  double p() const { return p_; }

 private:
  double p_;
};

/// Strictly increasing index selection certifying a Garling norm value:
/// value = (sum_k |x_{selected[k]}|^p w_{k+1})^(1/p) with weights in rank order.
struct Witness {
  std::vector<std::int64_t> selected;
  double value = 0.0;
};

enum class GarlingMethod {
  automatic,         // monotone fast paths when they apply, otherwise the DP
  dynamic_program,   // always the full DP
  monotone_fast_path // requires monotone moduli along the support
};

/// (sum |x_i|^p)^(1/p); 0 for the empty vector.
double lp_norm(const SparseVector& x, NormParams params);

/// Lorentz norm: nonincreasing rearrangement of moduli paired with w_1, w_2, ...
/// Requires w.length() >= support size.
double lorentz_norm(const SparseVector& x, NormParams params, const Weights& w);

/// Garling norm: maximum over strictly increasing index selections of the
/// rank-weighted lp sum. Exact via dynamic programming over (position,
/// selection count); monotone inputs take O(m) / O(m^2) fast paths.
double garling_norm(const SparseVector& x, NormParams params, const Weights& w,
                    GarlingMethod method = GarlingMethod::automatic);

/// One maximizing selection; ties broken by preferring not to select, which
/// yields the lexicographically smallest witness.
Witness garling_witness(const SparseVector& x, NormParams params, const Weights& w,
                        GarlingMethod method = GarlingMethod::automatic);

/// Independent oracle: maximum over all 2^m - 1 nonempty subsets of the
/// support, evaluated in index order with rank weights. Support capped at 20.
double garling_norm_bruteforce(const SparseVector& x, NormParams params, const Weights& w);

/// The Garling norm depends only on the ordered value sequence, never on the
/// index placement; this overload skips the SparseVector wrapper.
double garling_norm_values(std::span<const double> values, NormParams params,
                           const Weights& w, GarlingMethod method = GarlingMethod::automatic);

namespace detail {

double modulus_power(double modulus, double p);
double power_root(double power_sum, double p);

// sum_r moduli[r]^p * weights[r], compensated, in the given order.
double weighted_power_sum(std::span<const double> moduli, double p,
                          std::span<const double> weights);

}  // namespace detail

}  // namespace garling
