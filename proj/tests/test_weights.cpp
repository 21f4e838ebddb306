#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "garling/detail/compensated.hpp"
#include "garling/weights.hpp"
#include "test_util.hpp"

using namespace garling;

TEST_CASE("power weights materialize the requested prefix") {
  const Weights w = Weights::power(0.5, 4);
  CHECK(w.length() == 4);
  CHECK(w.at(1) == 1.0);
  CHECK(approx_rel(w.at(2), 0.707106781186548, 1e-12));
  CHECK(approx_rel(w.at(3), 0.577350269189626, 1e-12));
  CHECK(w.at(4) == 0.5);
  CHECK(w.kind() == WeightKind::power);
  CHECK(w.theta() == 0.5);
  CHECK(w.declared_null_nonsummable());
  CHECK(w.descriptor() == "power:0.5:4");
}

TEST_CASE("harmonic weights and prefix sums") {
  const Weights w = Weights::harmonic(3);
  CHECK(w.at(1) == 1.0);
  CHECK(w.at(2) == 0.5);
  CHECK(approx_rel(w.at(3), 1.0 / 3.0, 1e-15));
  CHECK(w.prefix_sum(0) == 0.0);
  CHECK(approx_rel(w.prefix_sum(2), 1.5, 1e-15));
  CHECK(approx_rel(w.prefix_sum(3), 1.83333333333333, 1e-12));
  CHECK(w.declared_null_nonsummable());
}

TEST_CASE("validation names the first violated invariant") {
  CHECK_THROWS_WITH_AS(static_cast<void>(Weights::from_values({1.0, 1.2})),
                       "nonincreasing violated at n=2", std::invalid_argument);
  CHECK_THROWS_WITH_AS(static_cast<void>(Weights::from_values({0.9, 0.5})),
                       "w_1 must equal 1 exactly, got 0.9", std::invalid_argument);
  CHECK_THROWS_WITH_AS(static_cast<void>(Weights::from_values({1.0, 0.5, -0.1})),
                       "nonpositive value at n=3", std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(Weights::from_values({1.0})), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(Weights::power(0.0, 8)), std::domain_error);
  CHECK_THROWS_AS(static_cast<void>(Weights::power(1.0, 8)), std::domain_error);
  CHECK_THROWS_AS(static_cast<void>(Weights::harmonic(1)), std::invalid_argument);
}

TEST_CASE("explicit weights keep the declared flag off by default") {
  const Weights w = Weights::from_values({1.0, 0.5, 0.5, 0.25});
  CHECK(w.kind() == WeightKind::explicit_values);
  CHECK_FALSE(w.declared_null_nonsummable());
  CHECK(w.prefix_sum(4) == 2.25);
}

TEST_CASE("monotonicity and prefix-sum accuracy over long prefixes") {
  const Weights candidates[] = {Weights::power(0.3, 100000), Weights::power(0.9, 100000),
                                Weights::harmonic(100000)};
  for (const Weights& w : candidates) {
    bool monotone = true;
    bool increasing_prefix = true;
    bool sums_track = true;
    for (std::int64_t n = 2; n <= w.length(); ++n) {
      monotone = monotone && w.at(n) <= w.at(n - 1);
      increasing_prefix = increasing_prefix && w.prefix_sum(n) > w.prefix_sum(n - 1);
      const double diff = w.prefix_sum(n) - w.prefix_sum(n - 1);
      sums_track = sums_track && std::abs(diff - w.at(n)) <= 1e-12 * w.prefix_sum(n);
    }
    CHECK(monotone);
    CHECK(increasing_prefix);
    CHECK(sums_track);
  }
}

TEST_CASE("doubling ratio: closed cases and frozen estimates") {
  const Weights tiny = Weights::power(0.5, 4);
  CHECK(approx_rel(doubling_ratio_inf(tiny, 1), 1.0 + tiny.at(2), 1e-15));

  const Weights wp = Weights::power(0.5, 100000);
  const Weights wh = Weights::harmonic(100000);
  CHECK(approx_rel(doubling_ratio_inf(wp, 50000), 1.41556703426429, 1e-12));
  CHECK(approx_rel(doubling_ratio_inf(wh, 50000), 1.06081792931455, 1e-12));

  SUBCASE("running minimum is nonincreasing in n_max") {
    double prev = doubling_ratio_inf(wp, 1);
    for (std::int64_t n = 2; n <= 128; ++n) {
      const double cur = doubling_ratio_inf(wp, n);
      CHECK(cur <= prev);
      prev = cur;
    }
  }

  CHECK_THROWS_AS(static_cast<void>(doubling_ratio_inf(tiny, 3)), std::out_of_range);
  CHECK_THROWS_AS(static_cast<void>(doubling_ratio_inf(tiny, 0)), std::invalid_argument);
}

TEST_CASE("regularity constants") {
  const Weights tiny = Weights::harmonic(8);
  const RegularityConstants unit = regularity_constants(tiny, 1);
  CHECK(unit.a_est == 1.0);
  CHECK(unit.b_est == 1.0);

  const Weights wh = Weights::harmonic(10000);
  const RegularityConstants rh = regularity_constants(wh, 10000);
  // (W_n/n)/w_n = H_n for harmonic weights, so the maximum is H_{10^4}.
  CHECK(approx_rel(rh.a_est, 9.78760603604435, 1e-12));
  CHECK(rh.b_est == 1.0);

  const Weights wp = Weights::power(0.5, 10000);
  const RegularityConstants rp = regularity_constants(wp, 10000);
  CHECK(approx_rel(rp.a_est, 1.98544645449524, 1e-12));
  CHECK(rp.a_est <= 2.0);
  CHECK(rp.b_est == 1.0);

  CHECK_THROWS_AS(static_cast<void>(regularity_constants(tiny, 9)), std::out_of_range);
}

TEST_CASE("integral bounds hold on the sum of n^-theta") {
  CHECK(integral_bounds_check(0.5, 1));
  CHECK(integral_bounds_check(0.5, 10000));
  CHECK(integral_bounds_check(0.9, 1000));
  CHECK_THROWS_AS(static_cast<void>(integral_bounds_check(0.0, 10)), std::domain_error);
  CHECK_THROWS_AS(static_cast<void>(integral_bounds_check(1.0, 10)), std::domain_error);
  CHECK_THROWS_AS(static_cast<void>(integral_bounds_check(0.5, 0)), std::invalid_argument);

  SUBCASE("full grid, checked against running sums") {
    std::int64_t violations = 0;
    for (int t = 1; t <= 9; ++t) {
      const double theta = t / 10.0;
      const double one_minus = 1.0 - theta;
      garling::detail::CompensatedSum acc;
      for (std::int64_t n = 1; n <= 10000; ++n) {
        acc.add(std::pow(static_cast<double>(n), -theta));
        const double s = acc.value();
        const double lo = (std::pow(static_cast<double>(n + 1), one_minus) - 1.0) / one_minus;
        const double hi = (std::pow(static_cast<double>(n), one_minus) - theta) / one_minus;
        if (!(lo <= s + 1e-9 && s <= hi + 1e-9)) ++violations;
      }
      CHECK(integral_bounds_check(theta, 100));
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("flatness search") {
  const Weights wh = Weights::harmonic(8192);
  const auto hit = epsilon_flatness_search(wh, 0.1, 2048, 4);
  REQUIRE(hit.has_value());
  CHECK(hit->n == 1024);
  CHECK(hit->k == 2);
  CHECK(approx_rel(hit->ratio, 1.09227418957551, 1e-12));
  CHECK(hit->ratio <= 1.1);

  SUBCASE("power(0.5) stays above 1.1 for dyadic n") {
    const Weights wp = Weights::power(0.5, 1 << 18);
    CHECK_FALSE(epsilon_flatness_search(wp, 0.1, 1 << 16, 4).has_value());
  }

  SUBCASE("loose eps accepts the first window") {
    const auto first = epsilon_flatness_search(wh, 0.5, 1, 2);
    REQUIRE(first.has_value());
    CHECK(first->n == 1);
    CHECK(first->k == 2);
    CHECK(first->ratio == 1.5);
  }

  CHECK_THROWS_AS(static_cast<void>(epsilon_flatness_search(wh, -0.1, 4, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(epsilon_flatness_search(wh, 0.1, 4, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(epsilon_flatness_search(wh, 0.1, 8192, 4)),
                  std::out_of_range);
}
