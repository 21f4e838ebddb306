#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace garling {

enum class WeightKind { power, harmonic, explicit_values };

/// Validated finite prefix of a weight sequence: w_1 = 1, entries positive and
/// nonincreasing, with compensated prefix sums W_n = w_1 + ... + w_n cached.
class Weights {
 public:
  /// w_n = n^-theta, 0 < theta < 1.
  static Weights power(double theta, std::int64_t length);
  /// w_n = 1/n.
  static Weights harmonic(std::int64_t length);
  /// Caller-supplied values. `declared_null_nonsummable` records whether the
  /// generating rule promises membership in c0 \ l1; a prefix cannot prove it.
  static Weights from_values(std::vector<double> values,
                             bool declared_null_nonsummable = false);

  WeightKind kind() const { return kind_; }
  double theta() const;  // power kind only
  std::int64_t length() const { return static_cast<std::int64_t>(values_.size()); }

  double at(std::int64_t n) const;          // w_n, 1-based
  double prefix_sum(std::int64_t n) const;  // W_n, 1-based; prefix_sum(0) = 0
  std::span<const double> values() const { return values_; }

  bool declared_null_nonsummable() const { return declared_; }

  /// Shorthand form used in report metadata, e.g. "power:0.5:4096".
  std::string descriptor() const;

 private:
  Weights(WeightKind kind, double theta, std::vector<double> values, bool declared);
  void validate_and_accumulate();

  WeightKind kind_ = WeightKind::explicit_values;
  double theta_ = 0.0;
  bool declared_ = false;
  std::vector<double> values_;
  std::vector<double> prefix_;
};

struct RegularityConstants {
  double a_est = 0.0;
  double b_est = 0.0;
};

struct FlatnessResult {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double ratio = 0.0;
};

/// min over 1 <= n <= n_max of W_2n / W_n. A finite-prefix upper bound on the
/// true infimum; nonincreasing in n_max.
double doubling_ratio_inf(const Weights& w, std::int64_t n_max);

/// a_est = max, b_est = min over n <= n_max of (W_n / n) / w_n.
RegularityConstants regularity_constants(const Weights& w, std::int64_t n_max);

/// Checks ((N+1)^(1-theta) - 1)/(1-theta) <= sum_{n<=N} n^-theta
///        <= (N^(1-theta) - theta)/(1-theta) with 1e-9 absolute slack.
bool integral_bounds_check(double theta, std::int64_t n);

/// First (n, k), n doubling through {1,2,4,...,n_limit}, k in {2,...,k_limit},
/// with W_{nk} / W_n <= 1 + eps.
std::optional<FlatnessResult> epsilon_flatness_search(const Weights& w, double eps,
                                                      std::int64_t n_limit,
                                                      std::int64_t k_limit);

}  // namespace garling
