#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "garling/norms.hpp"
#include "garling/sparse_vector.hpp"
#include "garling/weights.hpp"

namespace garling {

/// Block basic sequence: nonzero vectors supported on pairwise disjoint,
/// strictly ordered index windows.
class BlockBasis {
 public:
  explicit BlockBasis(std::vector<SparseVector> blocks);

  std::int64_t size() const { return static_cast<std::int64_t>(blocks_.size()); }
  const SparseVector& block(std::int64_t n) const;  // 1-based
  std::span<const SparseVector> blocks() const { return blocks_; }
  /// Window starts p_1 < ... < p_N plus an end sentinel, supp(block_n) in
  /// [p_n, p_{n+1}).
  std::span<const std::int64_t> boundaries() const { return boundaries_; }

  /// Every block scaled to Garling norm one.
  BlockBasis normalized(NormParams params, const Weights& w) const;

 private:
  std::vector<SparseVector> blocks_;
  std::vector<std::int64_t> boundaries_;
};

/// sum_n coefficients[n] * block_n.
SparseVector superposition(const BlockBasis& basis, std::span<const double> coefficients);

/// Blocks y_n = (sum of coordinates 2^(n-1)..2^n - 1) / W_{2^(n-1)}^(1/p);
/// already normalized and in normal form.
BlockBasis dyadic_block_basis(std::int64_t block_count, const Weights& w, NormParams params);

/// Per-block witness extraction and contiguous repacking from index 1: no zero
/// coefficients, coefficient lists are subsequences of the originals, and
/// per-block Garling norms are preserved.
BlockBasis block_normal_form(const BlockBasis& basis, NormParams params, const Weights& w);

/// (y, z) with z carrying (j+1-n)^(-(1-theta)/p) at index n (increasing
/// entries) and y its nonincreasing rearrangement. Requires power weights with
/// the same theta.
std::pair<SparseVector, SparseVector> asymmetry_pair(double theta, NormParams params,
                                                     std::int64_t j, const Weights& w);

struct ConvexityPair {
  SparseVector u;
  SparseVector v;
  double alpha = 0.0;
};

/// alpha_j = ((1 - w_{j+1}) / W_j)^(1/p); u carries alpha_j at 1..j and 1 at
/// j+1, v the same with the 1 moved to j+2.
ConvexityPair convexity_pair(const Weights& w, NormParams params, std::int64_t j);

/// The j <= j_max at which alpha_j is a running minimum; at those j the pair
/// vectors have Garling norm exactly one.
std::vector<std::int64_t> admissible_j_subsequence(const Weights& w, NormParams params,
                                                   std::int64_t j_max);

class selection_exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Consecutive windows [q_k, q_{k+1}) whose coefficients replicate chosen
/// blocks of a normal-form basis, with every window mass
/// sum_{l in window} |b_l|^p w_l at least phi.
class PhiSelection {
 public:
  PhiSelection(double phi, std::vector<std::int64_t> window_starts,
               std::vector<double> coefficients, std::vector<std::int64_t> chosen_blocks,
               std::vector<std::int64_t> source_starts, NormParams params, const Weights& w);

  double phi() const { return phi_; }
  std::int64_t window_count() const { return static_cast<std::int64_t>(chosen_.size()); }
  std::int64_t window_start(std::int64_t k) const;   // q_k, 1-based k
  std::int64_t window_end(std::int64_t k) const;     // q_{k+1}
  std::int64_t window_length(std::int64_t k) const;
  std::int64_t chosen_block(std::int64_t k) const;   // index n_k into the source basis
  std::int64_t source_start(std::int64_t k) const;   // first coordinate of block n_k
  double mass(std::int64_t k) const;
  std::span<const double> masses() const { return masses_; }
  /// Coefficient b_l at absolute position l in [1, q_{K+1}).
  double coefficient(std::int64_t l) const { return coeffs_[static_cast<std::size_t>(l - 1)]; }
  std::span<const double> coefficients() const { return coeffs_; }

  /// Window vector z_k (signed) or z~_k (moduli) as a concrete vector.
  SparseVector window_vector(std::int64_t k, bool absolute) const;

 private:
  double phi_ = 0.0;
  std::vector<std::int64_t> starts_;
  std::vector<double> coeffs_;
  std::vector<std::int64_t> chosen_;
  std::vector<std::int64_t> source_starts_;
  std::vector<double> masses_;
};

/// Inductive selection: q_1 = 1; given q_k, find the first j with
/// sum_{l=j+1}^{j+q_k} w_l < (1-phi)/2, then the first remaining block with
/// length > j + q_k and max |coefficient|^p < (1-phi)/(2j). Stops when the
/// materialized basis or weight prefix is used up; throws selection_exhausted
/// if not even one window can be formed.
PhiSelection phi_block_selection(const BlockBasis& basis, double phi, NormParams params,
                                 const Weights& w);

/// Rank-structured projection built on a PhiSelection: on window coordinates,
/// P g_i = (|b_i|^(p-1) w_i / mass_k) z~_k for i in window k and 0 elsewhere.
class ProjectionOperator {
 public:
  ProjectionOperator(PhiSelection selection, NormParams params, const Weights& w);

  const PhiSelection& selection() const { return selection_; }
  double p() const { return p_; }
  double phi() const { return selection_.phi(); }
  std::int64_t window_count() const { return selection_.window_count(); }
  /// Garling norm of the window vector z~_k under rank weights.
  double z_norm(std::int64_t k) const;
  double dual_coefficient(std::int64_t l) const {
    return dual_[static_cast<std::size_t>(l - 1)];
  }

 private:
  PhiSelection selection_;
  double p_;
  std::vector<double> dual_;    // |b_l|^(p-1) w_l / mass of the containing window
  std::vector<double> znorms_;  // per-window Garling norms of z~_k
};

ProjectionOperator build_projection(PhiSelection selection, NormParams params,
                                    const Weights& w);

/// Coordinate-formula application on window coordinates.
SparseVector apply_projection(const ProjectionOperator& proj, const SparseVector& x);

/// Composition with the sign and reindexing conjugations, so fixed points are
/// the chosen source blocks at their original coordinates.
SparseVector apply_projection_composed(const ProjectionOperator& proj, const SparseVector& x);

/// Per-window coefficients of Px in the z~_k (plain) or source-block
/// (composed) expansion.
std::vector<double> projection_window_coefficients(const ProjectionOperator& proj,
                                                   const SparseVector& x, bool composed);

struct ProjectionProbeReport {
  double empirical_norm = 0.0;
  double bound = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Randomized lower-bound search for the operator norm, reported against the
/// phi^-1 upper bound.
ProjectionProbeReport probe_projection_norm(const ProjectionOperator& proj, NormParams params,
                                            const Weights& w, std::int64_t trials,
                                            std::uint64_t seed, std::int64_t index_limit,
                                            std::int64_t max_probe_support);

struct LinfBlockFamily {
  std::vector<SparseVector> vectors;
  double upper_factor = 0.0;  // M = (W_{nk} / W_n)^(1/p)
};

/// v_m = indicator of the m-th width-n window, scaled by W_n^(-1/p); for any
/// coefficients, max|a_m| <= norm of the combination <= M * max|a_m|.
LinfBlockFamily linf_block_vectors(std::int64_t n, std::int64_t k, const Weights& w,
                                   NormParams params);

}  // namespace garling
