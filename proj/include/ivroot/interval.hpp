#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "ivroot/rounding.hpp"

namespace ivroot {

// Three-valued certified sign. `unknown` means the sign could not be
// established rigorously, not that it is zero.
enum class Sign : int { minus = -1, unknown = 0, plus = 1 };

inline Sign flip(Sign s) noexcept { return static_cast<Sign>(-static_cast<int>(s)); }
inline int sign_value(Sign s) noexcept { return static_cast<int>(s); }

// Closed interval over binary64, possibly empty or unbounded. The empty
// interval is the dedicated state [+inf, -inf]; NaN bounds are rejected.
// All arithmetic is outward-rounded: the result contains every value
// op(a, b) with a, b ranging over the operands where op is defined.
class Interval {
 public:
  constexpr Interval() noexcept : lo_(kInf), hi_(-kInf) {}  // empty

  static Interval make(double lo, double hi);
  static Interval point(double t) { return make(t, t); }
  static Interval empty() noexcept { return Interval(); }
  static constexpr Interval whole() noexcept { return Interval(-kInf, kInf); }

  bool is_empty() const noexcept { return lo_ > hi_; }
  bool is_point() const noexcept { return lo_ == hi_; }
  bool is_bounded() const noexcept {
    return is_empty() || (lo_ > -kInf && hi_ < kInf);
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  bool contains(double t) const noexcept { return lo_ <= t && t <= hi_; }
  bool contains_zero() const noexcept { return lo_ <= 0 && 0 <= hi_; }
  bool contains(const Interval& other) const noexcept {
    return other.is_empty() || (lo_ <= other.lo_ && other.hi_ <= hi_);
  }

  // Upward-rounded width; 0 for the empty interval, +inf when unbounded.
  double width() const noexcept;

  // A representable point inside a non-empty bounded interval. Returns NaN
  // (contract violation) on empty or unbounded input.
  double midpoint() const noexcept;

  bool operator==(const Interval& other) const noexcept {
    if (is_empty() && other.is_empty()) return true;
    return lo_ == other.lo_ && hi_ == other.hi_;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr Interval(double lo, double hi) noexcept : lo_(lo), hi_(hi) {}

  double lo_;
  double hi_;
};

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
// Division by an interval containing zero yields the whole line ("no
// information"); the two-branch extended division lives in the Newton
// contraction, not here.
Interval div(const Interval& a, const Interval& b);
Interval neg(const Interval& a);
Interval sqr(const Interval& a);
Interval pow_int(const Interval& a, int n);

Interval intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return div(a, b); }
inline Interval operator-(const Interval& a) { return neg(a); }

// Certified sign of an interval value: plus/minus only when the whole
// interval lies strictly on that side of zero.
inline Sign certified_sign(const Interval& w) noexcept {
  if (w.is_empty()) return Sign::unknown;
  if (w.lo() > 0) return Sign::plus;
  if (w.hi() < 0) return Sign::minus;
  return Sign::unknown;
}

using rnd::next_down;
using rnd::next_up;

std::string to_string(const Interval& a);

}  // namespace ivroot
