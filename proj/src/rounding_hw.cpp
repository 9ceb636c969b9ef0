// Hardware directed rounding. Compiled with -frounding-math, and every
// operation is fenced with fp_barrier so the compiler cannot fold it or
// move it across the fesetround calls (plain FP ops carry no fenv
// dependence in gcc, so scoping alone is not enough). The rounding mode is
// scoped per call and restored on exit; fenv state is thread-local, so no
// mode leaks across threads.

#include <cfenv>
#include <cmath>

#include "ivroot/rounding.hpp"

namespace ivroot::rnd::hw {

namespace {

// Compiler fence for a floating-point value: forces the value to exist at
// this program point and forgets everything known about it.
inline double fp_barrier(double x) noexcept {
#if defined(__GNUC__) && defined(__x86_64__)
  asm volatile("" : "+x"(x));
#else
  asm volatile("" : "+r"(x));
#endif
  return x;
}

class RoundUpScope {
 public:
  RoundUpScope() : saved_(std::fegetround()) { std::fesetround(FE_UPWARD); }
  ~RoundUpScope() { std::fesetround(saved_); }
  RoundUpScope(const RoundUpScope&) = delete;
  RoundUpScope& operator=(const RoundUpScope&) = delete;

 private:
  int saved_;
};

}  // namespace

double add_up(double a, double b) noexcept {
  RoundUpScope scope;
  return fp_barrier(fp_barrier(a) + fp_barrier(b));
}

double mul_up(double a, double b) noexcept {
  if (a == 0 || b == 0) return 0.0;  // interval convention for 0 * inf
  RoundUpScope scope;
  return fp_barrier(fp_barrier(a) * fp_barrier(b));
}

double div_up(double a, double b) noexcept {
  RoundUpScope scope;
  return fp_barrier(fp_barrier(a) / fp_barrier(b));
}

Directed add_up_checked(double a, double b) noexcept {
  RoundUpScope scope;
  const double r = fp_barrier(fp_barrier(a) + fp_barrier(b));
  if (!std::isfinite(r)) return {r, false};
  // r == a + b exactly iff up(r - a) == b: up(r - a) >= r - a, and equality
  // with b forces r <= a + b, while r >= a + b holds by construction.
  const double back = fp_barrier(fp_barrier(r) - fp_barrier(a));
  return {r, back == b};
}

Directed div_up_checked(double a, double b) noexcept {
  if (std::isinf(b) && std::isfinite(a)) return {a / b, true};
  RoundUpScope scope;
  const double q = fp_barrier(fp_barrier(a) / fp_barrier(b));
  if (!std::isfinite(q)) return {q, false};
  // q == a / b exactly iff q * b == a exactly, i.e. both directed
  // roundings of q * b reproduce a.
  const double up = fp_barrier(fp_barrier(q) * fp_barrier(b));
  const double dn = -fp_barrier(fp_barrier(-q) * fp_barrier(b));
  return {q, up == a && dn == a};
}

}  // namespace ivroot::rnd::hw
