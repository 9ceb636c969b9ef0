#pragma once

#include <cmath>
#include <limits>

// Directed rounding for binary64, used to build containment-safe interval
// bounds. Two interchangeable backends:
//
//   portable  -- round-to-nearest plus an error-free residual (two-sum /
//                fma) that tells which side the exact value lies on,
//                followed by a one-ulp outward adjustment when needed.
//                No rounding-mode changes, safe under any thread count.
//   hardware  -- fesetround(FE_UPWARD) scoped per call; lower bounds via
//                the negation identity lo = -up(-a op -b). fenv state is
//                thread-local and restored before returning.
//
// Both backends must produce bounds b with b >= exact (up) / b <= exact
// (down), at most one ulp from the exact value in the safe direction for
// normal-range results.

namespace ivroot::rnd {

enum class Backend { portable, hardware };

Backend backend() noexcept;
void set_backend(Backend b) noexcept;

double add_up(double a, double b) noexcept;
double add_down(double a, double b) noexcept;
double sub_up(double a, double b) noexcept;
double sub_down(double a, double b) noexcept;
double mul_up(double a, double b) noexcept;
double mul_down(double a, double b) noexcept;
double div_up(double a, double b) noexcept;
double div_down(double a, double b) noexcept;

// Upward-rounded result together with an exactness verdict. `maybe_exact`
// is true when the returned value may equal the exact result; false means
// the bound is provably strict (value > exact). Callers that need a strict
// bound nudge one float outward exactly when `maybe_exact` holds.
struct Directed {
  double value;
  bool maybe_exact;
};

Directed add_up_checked(double a, double b) noexcept;
Directed sub_up_checked(double a, double b) noexcept;
Directed div_up_checked(double a, double b) noexcept;

inline double next_up(double t) noexcept {
  return std::nextafter(t, std::numeric_limits<double>::infinity());
}
inline double next_down(double t) noexcept {
  return std::nextafter(t, -std::numeric_limits<double>::infinity());
}

}  // namespace ivroot::rnd
