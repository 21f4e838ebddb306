#pragma once

#include <cmath>

namespace garling::detail {

// Neumaier-style compensated accumulator. Keeps a running error term so that
// prefix sums over ~1e5..1e7 terms stay accurate to a few ulp of the total.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

  void reset() {
    sum_ = 0.0;
    comp_ = 0.0;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace garling::detail
