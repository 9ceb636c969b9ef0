#include "ivroot/interval.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ivroot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Corner product with the 0 * inf = 0 convention.
double corner_mul_up(double a, double b) { return rnd::mul_up(a, b); }
double corner_mul_down(double a, double b) { return rnd::mul_down(a, b); }

// Corner quotient for unbounded numerators: inf/inf keeps the sign product
// (the supremum along the edge is attained with a finite denominator).
double corner_div(double a, double b, bool up) {
  if (std::isinf(a) && std::isinf(b)) {
    const bool positive = (a > 0) == (b > 0);
    return positive ? kInf : -kInf;
  }
  return up ? rnd::div_up(a, b) : rnd::div_down(a, b);
}

}  // namespace

Interval Interval::make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw std::invalid_argument("Interval::make: invalid bounds");
  return Interval(lo, hi);
}

double Interval::width() const noexcept {
  if (is_empty()) return 0.0;
  return rnd::sub_up(hi_, lo_);
}

double Interval::midpoint() const noexcept {
  if (is_empty() || !is_bounded()) return std::numeric_limits<double>::quiet_NaN();
  if (lo_ == hi_) return lo_;
  double m = lo_ + (hi_ - lo_) / 2;
  if (!std::isfinite(m)) m = lo_ / 2 + hi_ / 2;
  return std::clamp(m, lo_, hi_);
}

Interval add(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval::make(rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi()));
}

Interval sub(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval::make(rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo()));
}

Interval neg(const Interval& a) {
  if (a.is_empty()) return Interval::empty();
  return Interval::make(-a.hi(), -a.lo());
}

Interval mul(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double corners[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()},
                                {a.hi(), b.lo()}, {a.hi(), b.hi()}};
  double lo = kInf, hi = -kInf;
  for (const auto& c : corners) {
    lo = std::min(lo, corner_mul_down(c[0], c[1]));
    hi = std::max(hi, corner_mul_up(c[0], c[1]));
  }
  return Interval::make(lo, hi);
}

Interval div(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  if (b.contains_zero()) return Interval::whole();
  const double corners[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()},
                                {a.hi(), b.lo()}, {a.hi(), b.hi()}};
  double lo = kInf, hi = -kInf;
  for (const auto& c : corners) {
    lo = std::min(lo, corner_div(c[0], c[1], false));
    hi = std::max(hi, corner_div(c[0], c[1], true));
  }
  return Interval::make(lo, hi);
}

namespace {

// v^n for v >= 0, rounded in the requested direction.
double pow_nonneg(double v, int n, bool up) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r = up ? rnd::mul_up(r, v) : rnd::mul_down(r, v);
  return r;
}

double pow_dir(double v, int n, bool up) {
  if (v >= 0) return pow_nonneg(v, n, up);
  if (n % 2 == 0) return pow_nonneg(-v, n, up);
  return -pow_nonneg(-v, n, !up);
}

}  // namespace

Interval sqr(const Interval& a) {
  if (a.is_empty()) return Interval::empty();
  const double m = std::max(std::fabs(a.lo()), std::fabs(a.hi()));
  const double n = a.contains_zero() ? 0.0 : std::min(std::fabs(a.lo()), std::fabs(a.hi()));
  return Interval::make(rnd::mul_down(n, n), rnd::mul_up(m, m));
}

Interval pow_int(const Interval& a, int n) {
  assert(n >= 0);
  if (a.is_empty()) return Interval::empty();
  if (n == 0) return Interval::point(1.0);
  if (n == 1) return a;
  if (n == 2) return sqr(a);
  if (n % 2 == 0) {
    const double m = std::max(std::fabs(a.lo()), std::fabs(a.hi()));
    const double nn = a.contains_zero() ? 0.0 : std::min(std::fabs(a.lo()), std::fabs(a.hi()));
    return Interval::make(pow_nonneg(nn, n, false), pow_nonneg(m, n, true));
  }
  return Interval::make(pow_dir(a.lo(), n, false), pow_dir(a.hi(), n, true));
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return Interval::empty();
  return Interval::make(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval::make(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

std::string to_string(const Interval& a) {
  if (a.is_empty()) return "[empty]";
  return "[" + std::to_string(a.lo()) + ", " + std::to_string(a.hi()) + "]";
}

}  // namespace ivroot
