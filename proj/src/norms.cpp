#include "garling/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "garling/detail/compensated.hpp"

namespace garling {

NormParams::NormParams(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("norm exponent must satisfy 1 <= p < infinity");
  }
}

namespace detail {

double modulus_power(double modulus, double p) {
  if (p == 1.0) return modulus;
  if (p == 2.0) return modulus * modulus;
  return std::pow(modulus, p);
}

double power_root(double power_sum, double p) {
  if (p == 1.0) return power_sum;
  if (p == 2.0) return std::sqrt(power_sum);
  return std::pow(power_sum, 1.0 / p);
}

double weighted_power_sum(std::span<const double> moduli, double p,
                          std::span<const double> weights) {
  CompensatedSum acc;
  for (std::size_t r = 0; r < moduli.size(); ++r) {
    acc.add(modulus_power(moduli[r], p) * weights[r]);
  }
  return acc.value();
}

}  // namespace detail

namespace {

void check_weight_prefix(std::int64_t support, const Weights& w) {
  if (support > w.length()) {
    throw std::out_of_range("weight prefix shorter than support (need " +
                            std::to_string(support) + ", have " + std::to_string(w.length()) +
                            ")");
  }
}

struct MonotoneFlags {
  bool nonincreasing = true;
  bool nondecreasing = true;
};

MonotoneFlags scan_moduli(std::span<const double> moduli) {
  MonotoneFlags f;
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    if (moduli[i] > moduli[i - 1]) f.nonincreasing = false;
    if (moduli[i] < moduli[i - 1]) f.nondecreasing = false;
  }
  return f;
}

struct EvalResult {
  double power_sum = 0.0;
  std::vector<std::int64_t> positions;  // 1-based positions into the value list
};

// Full selection; optimal when moduli are nonincreasing, where the identity
// pairing realizes the rearranged (Lorentz) value.
EvalResult eval_full(std::span<const double> moduli, double p, std::span<const double> wv,
                     bool want_witness) {
  EvalResult out;
  out.power_sum = detail::weighted_power_sum(moduli, p, wv);
  if (want_witness) {
    out.positions.resize(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      out.positions[i] = static_cast<std::int64_t>(i + 1);
    }
  }
  return out;
}

// Best suffix; optimal when moduli are nondecreasing, since replacing any
// selection by the equally long suffix only grows each selected modulus.
EvalResult eval_best_suffix(std::span<const double> moduli, double p,
                            std::span<const double> wv, bool want_witness) {
  const std::size_t m = moduli.size();
  std::vector<double> gpow(m);
  for (std::size_t i = 0; i < m; ++i) gpow[i] = detail::modulus_power(moduli[i], p);
  double best = 0.0;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    detail::CompensatedSum acc;
    for (std::size_t r = 0; r < k; ++r) {
      acc.add(gpow[m - k + r] * wv[r]);
    }
    const double t = acc.value();
    if (t > best) {
      best = t;
      best_k = k;
    }
  }
  EvalResult out;
  out.power_sum = best;
  if (want_witness) {
    out.positions.reserve(best_k);
    for (std::size_t r = 0; r < best_k; ++r) {
      out.positions.push_back(static_cast<std::int64_t>(m - best_k + r + 1));
    }
  }
  return out;
}

// f(i,k) = max(f(i-1,k), f(i-1,k-1) + |x_i|^p w_k), computed in place with k
// descending. Strict improvement is required to take, so ties prefer skipping.
EvalResult eval_dp(std::span<const double> moduli, double p, std::span<const double> wv,
                   bool want_witness) {
  const std::size_t m = moduli.size();
  std::vector<double> gpow(m);
  for (std::size_t i = 0; i < m; ++i) gpow[i] = detail::modulus_power(moduli[i], p);

  std::vector<double> f(m + 1, -1.0);
  f[0] = 0.0;
  std::vector<std::uint64_t> take;
  if (want_witness) take.assign((m * m + 63) / 64, 0);

  for (std::size_t i = 1; i <= m; ++i) {
    const double gi = gpow[i - 1];
    for (std::size_t k = i; k >= 1; --k) {
      const double prev = f[k - 1];
      if (prev < 0.0) continue;
      const double cand = prev + gi * wv[k - 1];
      if (cand > f[k]) {
        f[k] = cand;
        if (want_witness) {
          const std::size_t bit = (i - 1) * m + (k - 1);
          take[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
      }
    }
  }

  std::size_t best_k = 0;
  double best = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    if (f[k] > best) {
      best = f[k];
      best_k = k;
    }
  }

  EvalResult out;
  out.power_sum = best;
  if (want_witness) {
    std::vector<std::int64_t> rev;
    rev.reserve(best_k);
    std::size_t k = best_k;
    for (std::size_t i = m; i >= 1 && k >= 1; --i) {
      const std::size_t bit = (i - 1) * m + (k - 1);
      if (take[bit >> 6] >> (bit & 63) & 1u) {
        rev.push_back(static_cast<std::int64_t>(i));
        --k;
      }
    }
    out.positions.assign(rev.rbegin(), rev.rend());
  }
  return out;
}

EvalResult evaluate_values(std::span<const double> values, double p,
                           std::span<const double> wv, GarlingMethod method,
                           bool want_witness) {
  const std::size_t m = values.size();
  if (m == 0) return EvalResult{};
  std::vector<double> moduli(m);
  for (std::size_t i = 0; i < m; ++i) moduli[i] = std::abs(values[i]);

  if (method == GarlingMethod::dynamic_program) {
    return eval_dp(moduli, p, wv, want_witness);
  }
  const MonotoneFlags flags = scan_moduli(moduli);
  if (flags.nonincreasing) return eval_full(moduli, p, wv, want_witness);
  if (flags.nondecreasing) return eval_best_suffix(moduli, p, wv, want_witness);
  if (method == GarlingMethod::monotone_fast_path) {
    throw std::invalid_argument("monotone fast path requires monotone moduli along the support");
  }
  return eval_dp(moduli, p, wv, want_witness);
}

}  // namespace

double lp_norm(const SparseVector& x, NormParams params) {
  detail::CompensatedSum acc;
  for (const Entry& e : x.entries()) {
    acc.add(detail::modulus_power(std::abs(e.value), params.p()));
  }
  return detail::power_root(acc.value(), params.p());
}

double lorentz_norm(const SparseVector& x, NormParams params, const Weights& w) {
  check_weight_prefix(x.support_size(), w);
  std::vector<double> moduli;
  moduli.reserve(x.entries().size());
  for (const Entry& e : x.entries()) moduli.push_back(std::abs(e.value));
  std::stable_sort(moduli.begin(), moduli.end(), std::greater<double>());
  return detail::power_root(detail::weighted_power_sum(moduli, params.p(), w.values()),
                            params.p());
}

double garling_norm_values(std::span<const double> values, NormParams params,
                           const Weights& w, GarlingMethod method) {
  check_weight_prefix(static_cast<std::int64_t>(values.size()), w);
  const EvalResult r = evaluate_values(values, params.p(), w.values(), method, false);
  return detail::power_root(r.power_sum, params.p());
}

double garling_norm(const SparseVector& x, NormParams params, const Weights& w,
                    GarlingMethod method) {
  check_weight_prefix(x.support_size(), w);
  std::vector<double> values = x.values_in_order();
  const EvalResult r = evaluate_values(values, params.p(), w.values(), method, false);
  return detail::power_root(r.power_sum, params.p());
}

Witness garling_witness(const SparseVector& x, NormParams params, const Weights& w,
                        GarlingMethod method) {
  check_weight_prefix(x.support_size(), w);
  std::vector<double> values = x.values_in_order();
  const EvalResult r = evaluate_values(values, params.p(), w.values(), method, true);
  Witness out;
  out.value = detail::power_root(r.power_sum, params.p());
  out.selected.reserve(r.positions.size());
  for (const std::int64_t pos : r.positions) {
    out.selected.push_back(x.entries()[static_cast<std::size_t>(pos - 1)].index);
  }
  return out;
}

double garling_norm_bruteforce(const SparseVector& x, NormParams params, const Weights& w) {
  const std::int64_t m = x.support_size();
  if (m > 20) {
    throw std::invalid_argument("brute force oracle supports at most 20 nonzero entries, got " +
                                std::to_string(m));
  }
  check_weight_prefix(m, w);
  if (m == 0) return 0.0;

  std::vector<double> gpow(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    gpow[static_cast<std::size_t>(i)] =
        detail::modulus_power(std::abs(x.entries()[static_cast<std::size_t>(i)].value),
                              params.p());
  }
  const std::span<const double> wv = w.values();

  double best = 0.0;
  // Depth-first over subsets: at each position either skip or take with the
  // next rank weight. Sums accumulate in index order.
  auto walk = [&](auto&& self, std::size_t pos, std::size_t rank, double acc) -> void {
    if (acc > best) best = acc;
    if (pos == gpow.size()) return;
    self(self, pos + 1, rank, acc);
    self(self, pos + 1, rank + 1, acc + gpow[pos] * wv[rank]);
  };
  walk(walk, 0, 0, 0.0);
  return detail::power_root(best, params.p());
}

}  // namespace garling
