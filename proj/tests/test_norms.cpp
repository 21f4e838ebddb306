#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "garling/norms.hpp"
#include "garling/sparse_vector.hpp"
#include "garling/weights.hpp"
#include "test_util.hpp"

using namespace garling;

namespace {

const Weights& w_half() {
  static const Weights w = Weights::power(0.5, 64);
  return w;
}

// Re-evaluates a witness sum independently of the DP.
double witness_value(const SparseVector& x, const Witness& wit, NormParams params,
                     const Weights& w) {
  detail::CompensatedSum acc;
  std::size_t pos = 0;
  std::int64_t rank = 1;
  for (const std::int64_t idx : wit.selected) {
    while (x.entries()[pos].index != idx) ++pos;
    acc.add(detail::modulus_power(std::abs(x.entries()[pos].value), params.p()) * w.at(rank));
    ++rank;
  }
  return detail::power_root(acc.value(), params.p());
}

}  // namespace

TEST_CASE("sparse vector constructor invariants") {
  const SparseVector x = SparseVector::from_pairs({{1, 0.0}, {2, 1.0}, {5, -3.0}});
  CHECK(x.support_size() == 2);  // zero dropped
  CHECK(x.entries()[0].index == 2);
  CHECK(x.first_index() == 2);
  CHECK(x.last_index() == 5);
  CHECK(x.max_modulus() == 3.0);

  CHECK_THROWS_AS(SparseVector::from_pairs({{2, 1.0}, {2, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector::from_pairs({{3, 1.0}, {2, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector::from_pairs({{0, 1.0}}), std::invalid_argument);
  CHECK(SparseVector().empty());
}

TEST_CASE("rearrangement and spread") {
  const SparseVector x = SparseVector::from_pairs({{2, -3.0}, {9, 5.0}});
  const SparseVector r = nonincreasing_rearrangement(x);
  CHECK(r == SparseVector::from_pairs({{1, 5.0}, {2, 3.0}}));

  const SparseVector sorted = SparseVector::from_pairs({{1, 4.0}, {2, 2.0}, {3, 1.0}});
  CHECK(nonincreasing_rearrangement(sorted) == sorted);

  CHECK(spread(x, x.support()) == x);
  const std::vector<std::int64_t> doubling = {4, 18};
  const SparseVector s = spread(x, doubling);
  CHECK(s == SparseVector::from_pairs({{4, -3.0}, {18, 5.0}}));
  const std::vector<std::int64_t> short_map = {4};
  CHECK_THROWS_AS(static_cast<void>(spread(x, short_map)), std::invalid_argument);
}

TEST_CASE("lp norm") {
  CHECK(lp_norm(SparseVector(), NormParams(2.0)) == 0.0);
  CHECK(lp_norm(SparseVector::from_pairs({{3, -2.0}}), NormParams(2.0)) == 2.0);
  CHECK(lp_norm(SparseVector::from_pairs({{1, 3.0}, {2, 4.0}}), NormParams(2.0)) == 5.0);
  CHECK_THROWS_AS(NormParams(0.5), std::invalid_argument);
}

TEST_CASE("lorentz norm") {
  const SparseVector x = SparseVector::from_pairs({{1, 0.5}, {2, 1.0}, {4, 0.8}});
  CHECK(approx_rel(lorentz_norm(x, NormParams(1.0), w_half()), 1.85436055954405, 1e-12));
  CHECK(approx_rel(lorentz_norm(SparseVector::from_pairs({{7, -2.5}}), NormParams(3.0), w_half()),
                   2.5, 1e-12));
  CHECK(lorentz_norm(SparseVector(), NormParams(1.0), w_half()) == 0.0);

  SUBCASE("rearrangement invariance over random permutations and supports") {
    detail::Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      const SparseVector a = random_vector(rng, 1 + t % 10, 40, 2.0);
      std::vector<double> values = a.values_in_order();
      for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1],
                  values[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
      }
      std::vector<Entry> entries;
      for (std::size_t i = 0; i < values.size(); ++i) {
        entries.push_back(Entry{static_cast<std::int64_t>(3 * i + 2), values[i]});
      }
      const SparseVector b{std::move(entries)};
      CHECK(lorentz_norm(a, NormParams(1.5), w_half()) ==
            lorentz_norm(b, NormParams(1.5), w_half()));
    }
  }

  SUBCASE("weight prefix must cover the support") {
    const Weights small = Weights::power(0.5, 2);
    CHECK_THROWS_AS(static_cast<void>(lorentz_norm(x, NormParams(1.0), small)),
                    std::out_of_range);
  }
}

TEST_CASE("garling norm: worked examples") {
  const NormParams p1(1.0);
  const SparseVector x = SparseVector::from_pairs({{1, 0.5}, {2, 1.0}, {4, 0.8}});
  CHECK(approx_rel(garling_norm(x, p1, w_half()), 1.66898699653825, 1e-12));
  const Witness wit = garling_witness(x, p1, w_half());
  CHECK(wit.selected == std::vector<std::int64_t>{1, 2, 4});
  CHECK(approx_rel(wit.value, 1.66898699653825, 1e-12));

  // Small head coefficient: dropping it beats the full selection.
  const SparseVector u = SparseVector::from_pairs({{1, 0.2}, {2, 1.0}});
  CHECK(garling_norm(u, p1, w_half()) == 1.0);
  CHECK(garling_witness(u, p1, w_half()).selected == std::vector<std::int64_t>{2});
  CHECK(lorentz_norm(u, p1, w_half()) > 1.0);

  CHECK(garling_norm(SparseVector::from_pairs({{5, -2.5}}), p1, w_half()) == 2.5);
  CHECK(garling_witness(SparseVector::from_pairs({{5, -2.5}}), p1, w_half()).selected ==
        std::vector<std::int64_t>{5});

  SUBCASE("all-equal entries select the full support") {
    const SparseVector e =
        SparseVector::from_pairs({{3, 0.7}, {5, 0.7}, {6, 0.7}, {9, 0.7}, {12, 0.7}});
    CHECK(approx_rel(garling_norm(e, p1, w_half()), 0.7 * w_half().prefix_sum(5), 1e-12));
    CHECK(garling_witness(e, p1, w_half()).selected == e.support());
  }

  SUBCASE("empty vector") {
    CHECK(garling_norm(SparseVector(), p1, w_half()) == 0.0);
    CHECK(garling_witness(SparseVector(), p1, w_half()).selected.empty());
    CHECK(garling_norm_bruteforce(SparseVector(), p1, w_half()) == 0.0);
  }
}

TEST_CASE("brute force oracle agrees with the dynamic program") {
  detail::Rng rng(20250810);
  const Weights weights[] = {Weights::power(0.5, 64), Weights::harmonic(64)};
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  for (int t = 0; t < 300; ++t) {
    const Shape shape = t % 5 == 3 ? Shape::descending : (t % 5 == 4 ? Shape::ascending : Shape::plain);
    const SparseVector x = random_vector(rng, t % 15, 60, 2.0, shape);
    const Weights& w = weights[t % 2];
    const NormParams params(ps[t % 4]);
    const double dp = garling_norm(x, params, w);
    const double bf = garling_norm_bruteforce(x, params, w);
    CHECK(approx_rel(dp, bf, 1e-12));
    CHECK(approx_rel(garling_norm(x, params, w, GarlingMethod::dynamic_program), dp, 1e-12));

    const Witness wit = garling_witness(x, params, w);
    CHECK(approx_rel(witness_value(x, wit, params, w), wit.value, 1e-12));
    CHECK(approx_rel(wit.value, dp, 1e-12));
  }
  CHECK_THROWS_AS(static_cast<void>(garling_norm_bruteforce(
                      random_vector(rng, 21, 60, 1.0), NormParams(1.0), w_half())),
                  std::invalid_argument);
}

TEST_CASE("domination chain and rearrangement identity") {
  detail::Rng rng(7);
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  for (int t = 0; t < 200; ++t) {
    const Shape shape = t % 4 == 1 ? Shape::descending : Shape::plain;
    const SparseVector x = random_vector(rng, 1 + t % 14, 60, 2.0, shape);
    const NormParams params(ps[t % 4]);
    const double g = garling_norm(x, params, w_half());
    const double d = lorentz_norm(x, params, w_half());
    const double lp = lp_norm(x, params);
    CHECK(leq_slack(x.max_modulus(), g, 1e-12));
    CHECK(leq_slack(g, d, 1e-12));
    CHECK(leq_slack(d, lp, 1e-12));

    // The Lorentz value is the Garling value of the rearranged vector, and the
    // two code paths share the pairing loop, so equality is bitwise.
    CHECK(d == garling_norm(nonincreasing_rearrangement(x), params, w_half()));

    if (shape == Shape::descending) {
      const std::vector<std::int64_t> packed_support = [&] {
        std::vector<std::int64_t> s(static_cast<std::size_t>(x.support_size()));
        std::iota(s.begin(), s.end(), std::int64_t{1});
        return s;
      }();
      const SparseVector packed = spread(x, packed_support);
      CHECK(approx_rel(garling_norm(packed, params, w_half()), d, 1e-12));
    }
  }
}

TEST_CASE("spread and sign invariance, monotone damping") {
  detail::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const SparseVector x = random_vector(rng, 1 + t % 12, 50, 2.0);
    const NormParams params(1.0 + (t % 3));
    const double g = garling_norm(x, params, w_half());

    // spread by doubling and by shift; the value sequence is unchanged, so the
    // norm is bit-identical.
    std::vector<std::int64_t> doubled, shifted;
    for (const std::int64_t i : x.support()) {
      doubled.push_back(2 * i);
      shifted.push_back(i + 7);
    }
    CHECK(garling_norm(spread(x, doubled), params, w_half()) == g);
    CHECK(garling_norm(spread(x, shifted), params, w_half()) == g);

    // sign flips
    std::vector<Entry> flipped(x.entries().begin(), x.entries().end());
    for (auto& e : flipped) {
      if (rng.uniform() < 0.5) e.value = -e.value;
    }
    const SparseVector xf{std::move(flipped)};
    CHECK(garling_norm(xf, params, w_half()) == g);
    CHECK(lorentz_norm(xf, params, w_half()) == lorentz_norm(x, params, w_half()));

    // damping one modulus never increases either norm
    std::vector<Entry> damped(x.entries().begin(), x.entries().end());
    damped[static_cast<std::size_t>(rng.uniform_int(0, x.support_size() - 1))].value *= 0.5;
    const SparseVector xd{std::move(damped)};
    CHECK(leq_slack(garling_norm(xd, params, w_half()), g, 1e-12));
    CHECK(leq_slack(lorentz_norm(xd, params, w_half()), lorentz_norm(x, params, w_half()),
                    1e-12));
  }
}

TEST_CASE("norm axioms on random pairs") {
  detail::Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const NormParams params(1.0 + (t % 5) * 0.5);
    const SparseVector x = random_vector(rng, 1 + t % 10, 30, 2.0);
    const SparseVector y = random_vector(rng, 1 + (t + 3) % 10, 30, 2.0);
    const double c = rng.uniform(-3.0, 3.0);

    CHECK(approx_rel(garling_norm(scaled(x, c), params, w_half()),
                     std::abs(c) * garling_norm(x, params, w_half()), 1e-12));
    CHECK(approx_rel(lorentz_norm(scaled(x, c), params, w_half()),
                     std::abs(c) * lorentz_norm(x, params, w_half()), 1e-12));

    const double tri = garling_norm(add(x, y), params, w_half());
    CHECK(tri <= garling_norm(x, params, w_half()) + garling_norm(y, params, w_half()) + 1e-9);
    const double trid = lorentz_norm(add(x, y), params, w_half());
    CHECK(trid <= lorentz_norm(x, params, w_half()) + lorentz_norm(y, params, w_half()) + 1e-9);
  }
}

TEST_CASE("suffix fast path agrees with the dynamic program") {
  detail::Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const SparseVector x = random_vector(rng, 2 + t % 12, 50, 2.0, Shape::ascending);
    const NormParams params(1.0 + (t % 3));
    const double fast = garling_norm(x, params, w_half(), GarlingMethod::monotone_fast_path);
    const double dp = garling_norm(x, params, w_half(), GarlingMethod::dynamic_program);
    CHECK(approx_rel(fast, dp, 1e-12));
    CHECK(garling_norm(x, params, w_half()) == fast);

    // the witness is a suffix of the support
    const Witness wit = garling_witness(x, params, w_half());
    const std::vector<std::int64_t> sup = x.support();
    REQUIRE(!wit.selected.empty());
    const std::size_t k = wit.selected.size();
    const std::vector<std::int64_t> suffix(sup.end() - static_cast<std::ptrdiff_t>(k), sup.end());
    CHECK(wit.selected == suffix);
    const Witness dpw = garling_witness(x, params, w_half(), GarlingMethod::dynamic_program);
    CHECK(dpw.selected == wit.selected);
  }
  CHECK_THROWS_AS(static_cast<void>(garling_norm(
                      SparseVector::from_pairs({{1, 1.0}, {2, 0.5}, {3, 2.0}}), NormParams(1.0),
                      w_half(), GarlingMethod::monotone_fast_path)),
                  std::invalid_argument);
}
