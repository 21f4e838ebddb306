#include "garling/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "garling/detail/compensated.hpp"

namespace garling {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Weights::Weights(WeightKind kind, double theta, std::vector<double> values, bool declared)
    : kind_(kind), theta_(theta), declared_(declared), values_(std::move(values)) {
  validate_and_accumulate();
}

Weights Weights::power(double theta, std::int64_t length) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::domain_error("power weights require theta in (0,1), got " + fmt_g(theta));
  }
  if (length < 2) throw std::invalid_argument("weight length must be at least 2");
  std::vector<double> v(static_cast<std::size_t>(length));
  for (std::int64_t n = 1; n <= length; ++n) {
    v[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), -theta);
  }
  return Weights(WeightKind::power, theta, std::move(v), true);
}

Weights Weights::harmonic(std::int64_t length) {
  if (length < 2) throw std::invalid_argument("weight length must be at least 2");
  std::vector<double> v(static_cast<std::size_t>(length));
  for (std::int64_t n = 1; n <= length; ++n) {
    v[static_cast<std::size_t>(n - 1)] = 1.0 / static_cast<double>(n);
  }
  return Weights(WeightKind::harmonic, 0.0, std::move(v), true);
}

Weights Weights::from_values(std::vector<double> values, bool declared_null_nonsummable) {
  if (std::ssize(values) < 2) throw std::invalid_argument("weight length must be at least 2");
  return Weights(WeightKind::explicit_values, 0.0, std::move(values),
                 declared_null_nonsummable);
}

void Weights::validate_and_accumulate() {
  if (values_.empty()) throw std::invalid_argument("weight length must be at least 2");
  if (values_[0] != 1.0) {
    throw std::invalid_argument("w_1 must equal 1 exactly, got " + fmt_g(values_[0]));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v)) {
      throw std::invalid_argument("nonfinite value at n=" + std::to_string(i + 1));
    }
    if (v <= 0.0) {
      throw std::invalid_argument("nonpositive value at n=" + std::to_string(i + 1));
    }
    if (i > 0 && v > values_[i - 1]) {
      throw std::invalid_argument("nonincreasing violated at n=" + std::to_string(i + 1));
    }
  }
  prefix_.resize(values_.size());
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc.add(values_[i]);
    prefix_[i] = acc.value();
  }
}

double Weights::theta() const {
  if (kind_ != WeightKind::power) {
    throw std::logic_error("theta is defined for power weights only");
  }
  return theta_;
}

double Weights::at(std::int64_t n) const {
  if (n < 1 || n > length()) {
    throw std::out_of_range("weight index " + std::to_string(n) + " outside prefix of length " +
                            std::to_string(length()));
  }
  return values_[static_cast<std::size_t>(n - 1)];
}

double Weights::prefix_sum(std::int64_t n) const {
  if (n == 0) return 0.0;
  if (n < 0 || n > length()) {
    throw std::out_of_range("prefix sum index " + std::to_string(n) +
                            " outside prefix of length " + std::to_string(length()));
  }
  return prefix_[static_cast<std::size_t>(n - 1)];
}

std::string Weights::descriptor() const {
  switch (kind_) {
    case WeightKind::power:
      return "power:" + fmt_g(theta_) + ":" + std::to_string(length());
    case WeightKind::harmonic:
      return "harmonic:" + std::to_string(length());
    case WeightKind::explicit_values:
      return "explicit:" + std::to_string(length());
  }
  return "unknown";
}

double doubling_ratio_inf(const Weights& w, std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  if (2 * n_max > w.length()) {
    throw std::out_of_range("doubling ratio needs weights up to 2*n_max=" +
                            std::to_string(2 * n_max) + ", prefix has " +
                            std::to_string(w.length()));
  }
  double best = w.prefix_sum(2) / w.prefix_sum(1);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const double r = w.prefix_sum(2 * n) / w.prefix_sum(n);
    if (r < best) best = r;
  }
  return best;
}

RegularityConstants regularity_constants(const Weights& w, std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  if (n_max > w.length()) {
    throw std::out_of_range("regularity constants need weights up to n_max=" +
                            std::to_string(n_max) + ", prefix has " + std::to_string(w.length()));
  }
  RegularityConstants out{1.0, 1.0};
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const double q = (w.prefix_sum(n) / static_cast<double>(n)) / w.at(n);
    if (q > out.a_est) out.a_est = q;
    if (q < out.b_est) out.b_est = q;
  }
  return out;
}

bool integral_bounds_check(double theta, std::int64_t n) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::domain_error("integral bounds require theta in (0,1), got " + fmt_g(theta));
  }
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  detail::CompensatedSum acc;
  for (std::int64_t i = 1; i <= n; ++i) {
    acc.add(std::pow(static_cast<double>(i), -theta));
  }
  const double s = acc.value();
  const double one_minus = 1.0 - theta;
  const double lower = (std::pow(static_cast<double>(n + 1), one_minus) - 1.0) / one_minus;
  const double upper = (std::pow(static_cast<double>(n), one_minus) - theta) / one_minus;
  const double slack = 1e-9;
  return lower <= s + slack && s <= upper + slack;
}

std::optional<FlatnessResult> epsilon_flatness_search(const Weights& w, double eps,
                                                      std::int64_t n_limit,
                                                      std::int64_t k_limit) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (k_limit < 2) throw std::invalid_argument("k_limit must be at least 2");
  if (n_limit < 1) throw std::invalid_argument("n_limit must be at least 1");
  if (n_limit * k_limit > w.length()) {
    throw std::out_of_range("flatness search needs weights up to n_limit*k_limit=" +
                            std::to_string(n_limit * k_limit) + ", prefix has " +
                            std::to_string(w.length()));
  }
  for (std::int64_t n = 1; n <= n_limit; n *= 2) {
    for (std::int64_t k = 2; k <= k_limit; ++k) {
      const double ratio = w.prefix_sum(n * k) / w.prefix_sum(n);
      if (ratio <= 1.0 + eps) return FlatnessResult{n, k, ratio};
    }
  }
  return std::nullopt;
}

}  // namespace garling
