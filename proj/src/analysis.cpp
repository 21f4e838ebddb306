#include "garling/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "garling/detail/compensated.hpp"
#include "garling/detail/rng.hpp"

namespace garling {

namespace {

// Probe coefficient vectors shared by the domination estimators: unit
// coordinates, +-1 sign patterns over the first min(N,16) blocks (remaining
// coordinates +1), then Gaussian draws.
std::vector<std::vector<double>> domination_probes(std::int64_t count, std::int64_t trials,
                                                   detail::Rng& rng) {
  std::vector<std::vector<double>> probes;
  const std::size_t n = static_cast<std::size_t>(count);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    probes.push_back(std::move(e));
  }
  const std::int64_t sign_bits = std::min<std::int64_t>(count, 16);
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << sign_bits); ++pattern) {
    std::vector<double> s(n, 1.0);
    for (std::int64_t b = 0; b < sign_bits; ++b) {
      if (pattern >> b & 1u) s[static_cast<std::size_t>(b)] = -1.0;
    }
    probes.push_back(std::move(s));
  }
  for (std::int64_t t = 0; t < trials; ++t) {
    std::vector<double> g(n);
    for (auto& v : g) v = rng.gaussian();
    probes.push_back(std::move(g));
  }
  return probes;
}

}  // namespace

ConstantEstimate symmetry_defect(const SparseVector& x, NormParams params, const Weights& w,
                                 std::int64_t trials, std::uint64_t seed) {
  if (x.support_size() > 10000) {
    throw std::invalid_argument("symmetry defect supports at most 10^4 nonzero entries, got " +
                                std::to_string(x.support_size()));
  }
  ConstantEstimate out;
  out.trials = trials;
  out.seed = seed;
  if (x.empty()) {
    out.lower_bound = 1.0;
    return out;
  }
  const double base = garling_norm(x, params, w);

  std::vector<double> values = x.values_in_order();
  std::vector<double> best_perm;
  double best = 0.0;
  auto consider = [&](const std::vector<double>& candidate) {
    const double v = garling_norm_values(candidate, params, w);
    if (v > best) {
      best = v;
      best_perm = candidate;
    }
  };

  std::vector<double> sorted = values;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](double a, double b) { return std::abs(a) > std::abs(b); });
  consider(sorted);
  std::reverse(sorted.begin(), sorted.end());
  consider(sorted);

  detail::Rng rng(seed);
  std::vector<double> shuffled = values;
  for (std::int64_t t = 0; t < trials; ++t) {
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(shuffled[i - 1], shuffled[j]);
    }
    consider(shuffled);
  }

  out.lower_bound = best / base;
  out.witness_coefficients = std::move(best_perm);
  return out;
}

ConstantEstimate domination_lower_bound(const BlockBasis& basis_a, const BlockBasis& basis_b,
                                        NormParams params, const Weights& w,
                                        std::int64_t trials, std::uint64_t seed) {
  if (basis_a.size() != basis_b.size()) {
    throw std::invalid_argument("domination bound needs equal block counts, got " +
                                std::to_string(basis_a.size()) + " and " +
                                std::to_string(basis_b.size()));
  }
  if (basis_a.size() > 64) {
    throw std::invalid_argument("domination bound supports at most 64 blocks, got " +
                                std::to_string(basis_a.size()));
  }
  detail::Rng rng(seed);
  ConstantEstimate out;
  out.trials = trials;
  out.seed = seed;
  for (const auto& probe : domination_probes(basis_a.size(), trials, rng)) {
    const double num = garling_norm(superposition(basis_a, probe), params, w);
    const double den = garling_norm(superposition(basis_b, probe), params, w);
    if (den == 0.0) continue;
    const double ratio = num / den;
    if (ratio > out.lower_bound) {
      out.lower_bound = ratio;
      out.witness_coefficients = probe;
    }
  }
  return out;
}

bool lp_domination_check(const BlockBasis& basis, NormParams params, const Weights& w,
                         std::int64_t trials, std::uint64_t seed) {
  detail::Rng rng(seed);
  for (const auto& probe : domination_probes(basis.size(), trials, rng)) {
    const double lhs = garling_norm(superposition(basis, probe), params, w);
    detail::CompensatedSum acc;
    for (const double b : probe) acc.add(detail::modulus_power(std::abs(b), params.p()));
    const double rhs = detail::power_root(acc.value(), params.p());
    if (lhs > rhs + 1e-9) return false;
  }
  return true;
}

}  // namespace garling
