#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "ivroot/interval.hpp"

namespace ivroot {

// Curvature bookkeeping shared by the floating-point Newton and the
// monotone interval solver: d is the most recent derivative sample, t_d
// where it was taken, h the secant-of-derivatives estimate of f''.
struct SecantState {
  double d = std::numeric_limits<double>::quiet_NaN();
  double t_d = std::numeric_limits<double>::quiet_NaN();
  double h = 0.0;

  // Record a fresh derivative sample, updating h from the previous one.
  void observe(double t_k, double d_k) {
    if (!std::isnan(d) && t_d != t_k) h = (d - d_k) / (t_d - t_k);
    d = d_k;
    t_d = t_k;
  }

  // State under the reflection t -> -t (g(t) = -f(-t) keeps g' = f',
  // flips the second derivative).
  void mirror() {
    t_d = -t_d;
    h = -h;
  }
};

// One modified Newton step in the normalized orientation w < 0 < d.
// The concave case (h < 0) stretches the step so the iterate overshoots
// the root and the residual signs alternate; the convex case is classic
// Newton untouched.
double modified_step(double t, double w, double d, double h);

// Trace entry for instrumentation hooks (in caller coordinates).
struct PointIterate {
  double t;
  double w;
  bool bisection;
  double x_lo, x_hi;  // bracket after the update
  double w_lo, w_hi;
};

// Find a short interval containing the single root of an increasing f
// with a sign change on x. Returns nullopt when there is no sign change.
// The returned endpoints carry f-values of opposite (or vanishing) signs.
std::optional<Interval> exact_newton(const Interval& x,
                                     const std::function<double(double)>& f,
                                     const std::function<double(double)>& df,
                                     double tau_x, double tau_w,
                                     std::vector<PointIterate>* trace = nullptr);

}  // namespace ivroot
