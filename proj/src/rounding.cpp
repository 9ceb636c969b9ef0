#include "ivroot/rounding.hpp"

#include <atomic>
#include <cmath>
#include <limits>

namespace ivroot::rnd {

namespace {

std::atomic<Backend> g_backend{Backend::portable};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
constexpr double kMinNormal = std::numeric_limits<double>::min();

// Knuth two-sum: s = fl(a+b), returns the exact error a+b-s.
// Exact for all finite inputs whose sum does not overflow.
inline double two_sum_err(double a, double b, double s) noexcept {
  const double bv = s - a;
  const double av = s - bv;
  return (a - av) + (b - bv);
}

// Upward rounding of a + b when the round-to-nearest sum is non-finite.
inline double add_up_overflow(double a, double b, double s) noexcept {
  if (std::isinf(a) || std::isinf(b)) return s;  // exact infinite result
  return s > 0 ? kInf : -kMax;                   // finite overflow
}

inline Directed add_up_checked_portable(double a, double b) noexcept {
  const double s = a + b;
  if (!std::isfinite(s)) return {add_up_overflow(a, b, s), false};
  const double e = two_sum_err(a, b, s);
  if (e > 0) return {next_up(s), false};
  return {s, e == 0};
}

// Residual of q = fl(a/b); nonzero residual proves a/b is not representable.
// Valid when neither q nor the operands sit in the subnormal range.
inline bool div_residual_ok(double a, double q) noexcept {
  return std::fabs(q) >= kMinNormal && std::fabs(a) >= kMinNormal;
}

inline Directed div_up_checked_portable(double a, double b) noexcept {
  const double q = a / b;
  if (std::isinf(b)) return {q, true};  // finite / inf is an exact zero
  if (!std::isfinite(q)) {
    if (std::isinf(a)) return {q, false};
    return {q > 0 ? kInf : -kMax, false};
  }
  if (q == 0 && a != 0) {
    // Complete underflow; the exact quotient is a tiny nonzero value.
    const bool positive = (a > 0) == (b > 0);
    return {positive ? std::numeric_limits<double>::denorm_min() : 0.0, false};
  }
  const double r = std::fma(q, b, -a);  // exact quotient = q - r/b
  if (!div_residual_ok(a, q)) {
    // r may round to zero spuriously in the subnormal range. Its sign is
    // still trustworthy, so keep q when it is provably an upper bound and
    // otherwise bump one ulp (|exact - q| < 1 ulp keeps that valid).
    if (r != 0 && (r < 0) == (b < 0)) return {q, false};  // exact < q
    return {next_up(q), false};
  }
  if (r == 0) return {q, true};
  const bool exact_above = (r < 0) == (b > 0);
  return exact_above ? Directed{next_up(q), false} : Directed{q, false};
}

inline Directed mul_up_checked_portable(double a, double b) noexcept {
  // Zero times anything (including infinity) is zero by interval convention.
  if (a == 0 || b == 0) return {0.0, true};
  const double p = a * b;
  if (!std::isfinite(p)) {
    if (std::isinf(a) || std::isinf(b)) return {p, false};
    return {p > 0 ? kInf : -kMax, false};
  }
  const double r = std::fma(a, b, -p);  // exact product = p + r
  if (std::fabs(p) < kMinNormal) {
    if (r < 0 && p != 0) return {p, false};
    if (p == 0) {
      const bool positive = (a > 0) == (b > 0);
      return {positive ? std::numeric_limits<double>::denorm_min() : 0.0, false};
    }
    return {next_up(p), false};
  }
  if (r == 0) return {p, true};
  return r > 0 ? Directed{next_up(p), false} : Directed{p, false};
}

}  // namespace

Backend backend() noexcept { return g_backend.load(std::memory_order_relaxed); }
void set_backend(Backend b) noexcept { g_backend.store(b, std::memory_order_relaxed); }

// Hardware backend entry points, defined in rounding_hw.cpp (compiled with
// -frounding-math so the compiler respects the fenv mode).
namespace hw {
double add_up(double a, double b) noexcept;
double mul_up(double a, double b) noexcept;
double div_up(double a, double b) noexcept;
Directed add_up_checked(double a, double b) noexcept;
Directed div_up_checked(double a, double b) noexcept;
}  // namespace hw

double add_up(double a, double b) noexcept {
  if (backend() == Backend::hardware) return hw::add_up(a, b);
  return add_up_checked_portable(a, b).value;
}

double add_down(double a, double b) noexcept { return -add_up(-a, -b); }

double sub_up(double a, double b) noexcept { return add_up(a, -b); }
double sub_down(double a, double b) noexcept { return -add_up(-a, b); }

double mul_up(double a, double b) noexcept {
  if (backend() == Backend::hardware) return hw::mul_up(a, b);
  return mul_up_checked_portable(a, b).value;
}

double mul_down(double a, double b) noexcept { return -mul_up(-a, b); }

double div_up(double a, double b) noexcept {
  if (backend() == Backend::hardware) return hw::div_up(a, b);
  return div_up_checked_portable(a, b).value;
}

double div_down(double a, double b) noexcept { return -div_up(-a, b); }

Directed add_up_checked(double a, double b) noexcept {
  if (backend() == Backend::hardware) return hw::add_up_checked(a, b);
  return add_up_checked_portable(a, b);
}

Directed sub_up_checked(double a, double b) noexcept {
  return add_up_checked(a, -b);
}

Directed div_up_checked(double a, double b) noexcept {
  if (backend() == Backend::hardware) return hw::div_up_checked(a, b);
  return div_up_checked_portable(a, b);
}

}  // namespace ivroot::rnd
