#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace garling {

struct Entry {
  std::int64_t index;
  double value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Finitely supported scalar sequence held as ordered (index, value) pairs.
/// Indices are 1-based and strictly increasing; zero values are dropped at
/// construction, so stored entries are always nonzero.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);
  static SparseVector from_pairs(std::initializer_list<std::pair<std::int64_t, double>> pairs);

  bool empty() const { return entries_.empty(); }
  std::int64_t support_size() const { return static_cast<std::int64_t>(entries_.size()); }
  std::span<const Entry> entries() const { return entries_; }

  std::int64_t first_index() const;  // throws on empty vector
  std::int64_t last_index() const;
  double max_modulus() const;  // 0 for the empty vector

  std::vector<double> values_in_order() const;
  std::vector<std::int64_t> support() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Moduli sorted nonincreasing, re-homed at indices 1..m.
SparseVector nonincreasing_rearrangement(const SparseVector& x);

/// Same values, order preserved, re-homed at the given strictly increasing
/// indices. |target_indices| must equal the support size.
SparseVector spread(const SparseVector& x, std::span<const std::int64_t> target_indices);

SparseVector scaled(const SparseVector& x, double factor);

/// sum_n coefficients[n] * vectors[n]; exact zeros produced by cancellation
/// are dropped.
SparseVector linear_combination(std::span<const SparseVector> vectors,
                                std::span<const double> coefficients);

SparseVector add(const SparseVector& a, const SparseVector& b);
SparseVector subtract(const SparseVector& a, const SparseVector& b);

}  // namespace garling
