#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace lscd {

/// Exactly rounded floating-point summation (Shewchuk's non-overlapping
/// partials, the same scheme as Python's math.fsum). The result is the
/// correctly rounded value of the exact sum, so it does not depend on the
/// order in which terms are added or on how partial sums are merged across
/// threads.
class ExactSum {
 public:
  void add(double x) {
    std::size_t kept = 0;
    for (double y : partials_) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[kept++] = lo;
      x = hi;
    }
    partials_.resize(kept);
    partials_.push_back(x);
  }

  void merge(const ExactSum& other) {
    for (double p : other.partials_) add(p);
  }

  ExactSum& operator+=(double x) {
    add(x);
    return *this;
  }

  [[nodiscard]] double value() const {
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      const double yr = hi - x;
      lo = y - yr;
      if (lo != 0.0) break;
    }
    // Half-way case: round-half-even on hi would be wrong if the remaining
    // partials push the exact sum off the midpoint.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

template <typename Range>
double exact_sum(const Range& values) {
  ExactSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

template <typename Range>
double exact_mean(const Range& values) {
  std::size_t n = 0;
  ExactSum acc;
  for (double v : values) {
    acc.add(v);
    ++n;
  }
  return acc.value() / static_cast<double>(n);
}

}  // namespace lscd
