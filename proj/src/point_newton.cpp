#include "ivroot/point_newton.hpp"

#include <cmath>

namespace ivroot {

double modified_step(double t, double w, double d, double h) {
  double s = -w / d;
  if (h < 0) s -= h * s * s / d;
  return t + s;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Solver state, kept in a normal form where the working side is the left
// endpoint. Selecting the right side reflects the problem through t -> -t
// so that a single code path serves both.
struct NewtonState {
  double x_lo, x_hi;
  double w_lo, w_hi;
  double d_lo = kNaN;  // stale-derivative markers per endpoint
  double d_hi = kNaN;
  SecantState secant;
  bool mirrored = false;

  void mirror() {
    std::swap(x_lo, x_hi);
    x_lo = -x_lo;
    x_hi = -x_hi;
    std::swap(w_lo, w_hi);
    w_lo = -w_lo;
    w_hi = -w_hi;
    std::swap(d_lo, d_hi);
    secant.mirror();
    mirrored = !mirrored;
  }
};

}  // namespace

std::optional<Interval> exact_newton(const Interval& x,
                                     const std::function<double(double)>& f,
                                     const std::function<double(double)>& df,
                                     double tau_x, double tau_w,
                                     std::vector<PointIterate>* trace) {
  if (x.is_empty() || !x.is_bounded()) return std::nullopt;

  NewtonState st;
  st.x_lo = x.lo();
  st.x_hi = x.hi();
  st.w_lo = f(st.x_lo);
  st.w_hi = f(st.x_hi);

  if (st.w_lo > 0 || st.w_hi < 0) return std::nullopt;

  const auto value = [&](double t) { return st.mirrored ? -f(-t) : f(t); };
  const auto dvalue = [&](double t) { return st.mirrored ? df(-t) : df(t); };

  const auto record = [&](double t, double w, bool bisection) {
    if (!trace) return;
    if (st.mirrored)
      trace->push_back({-t, -w, bisection, -st.x_hi, -st.x_lo, -st.w_hi, -st.w_lo});
    else
      trace->push_back({t, w, bisection, st.x_lo, st.x_hi, st.w_lo, st.w_hi});
  };

  const auto result = [&]() {
    return st.mirrored ? Interval::make(-st.x_hi, -st.x_lo)
                       : Interval::make(st.x_lo, st.x_hi);
  };

  // The bisection subsequence halves the width, so the loop terminates;
  // the cap is a backstop against degenerate tolerance choices.
  for (long iter = 0; iter < 200000; ++iter) {
    if (st.x_hi - st.x_lo < tau_x || st.w_hi - st.w_lo < tau_w) return result();

    if (-st.w_lo > st.w_hi) st.mirror();

    if (std::isnan(st.d_lo)) {
      const double t_k = st.x_lo;
      const double d_k = dvalue(t_k);
      if (std::isfinite(d_k) && d_k > 0) {
        st.secant.observe(t_k, d_k);
        st.d_lo = d_k;
        double s = -st.w_lo / d_k;
        if (st.secant.h < 0) s -= st.secant.h * s * s / d_k;
        if (std::isfinite(s) && !(2 * s > st.x_hi - st.x_lo)) {
          const double t_next = t_k + s;
          const double w_next = value(t_next);
          if (std::isnan(w_next)) return result();
          if (w_next >= 0) {
            st.w_hi = w_next;
            st.x_hi = t_next;
            st.d_hi = kNaN;
            record(t_next, w_next, false);
            continue;  // back to the regular case
          }
          st.w_lo = w_next;
          st.x_lo = t_next;
          st.d_lo = kNaN;
          record(t_next, w_next, false);
          // fall through to a bisection step
        }
      }
    }

    const double t_next = st.x_lo + (st.x_hi - st.x_lo) / 2;
    if (!(t_next > st.x_lo && t_next < st.x_hi)) return result();  // float-exhausted
    const double w_next = value(t_next);
    if (std::isnan(w_next)) return result();
    if (w_next > 0) {
      st.w_hi = w_next;
      st.x_hi = t_next;
      st.d_hi = kNaN;
    } else {
      st.w_lo = w_next;
      st.x_lo = t_next;
      st.d_lo = kNaN;
    }
    record(t_next, w_next, true);
  }
  return result();
}

}  // namespace ivroot
