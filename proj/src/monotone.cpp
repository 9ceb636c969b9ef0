#include "ivroot/monotone.hpp"

#include <cmath>

#include "ivroot/point_newton.hpp"

namespace ivroot {

ZeroExpansion expand_zero_march(double z, const Interval& x,
                                const std::function<Interval(double)>& point_eval,
                                double step, double& tau_w) {
  ZeroExpansion out;

  const auto certified = [&](const Interval& w) -> Sign {
    if (w.lo() >= tau_w) return Sign::plus;
    if (w.hi() <= -tau_w) return Sign::minus;
    return Sign::unknown;
  };

  // Inward-rounded steps keep k probes within k*step of z, so cluster
  // widths never exceed the nominal step budget.
  double core_hi = z;  // last uncertified probe
  double c_hi = z;     // cluster edge: the certified flank probe, if any
  for (long budget = 1 << 20; budget > 0; --budget) {
    double probe = rnd::add_down(c_hi, step);
    if (probe <= c_hi) probe = rnd::next_up(c_hi);
    if (probe > x.hi()) break;
    const Interval w = point_eval(probe);
    tau_w = std::max(tau_w, 16 * w.width());
    c_hi = probe;
    if (const Sign s = certified(w); s != Sign::unknown) {
      out.right_sign = s;
      break;
    }
    core_hi = probe;
  }
  if (out.right_sign == Sign::unknown) c_hi = core_hi;  // boundary stopped us

  double core_lo = z;
  double c_lo = z;
  for (long budget = 1 << 20; budget > 0; --budget) {
    double probe = rnd::sub_up(c_lo, step);
    if (probe >= c_lo) probe = rnd::next_down(c_lo);
    if (probe < x.lo()) break;
    const Interval w = point_eval(probe);
    tau_w = std::max(tau_w, 16 * w.width());
    c_lo = probe;
    if (const Sign s = certified(w); s != Sign::unknown) {
      out.left_sign = s;
      break;
    }
    core_lo = probe;
  }
  if (out.left_sign == Sign::unknown) c_lo = core_lo;

  out.cluster = Interval::make(c_lo, c_hi);
  out.core = Interval::make(core_lo, core_hi);
  out.left = c_lo > x.lo() ? Interval::make(x.lo(), c_lo) : Interval::empty();
  out.right = c_hi < x.hi() ? Interval::make(c_hi, x.hi()) : Interval::empty();
  return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MonotoneState {
  double x_lo, x_hi;
  Interval w_lo, w_hi;
  double d_lo = kNaN;
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

  double true_lo() const { return mirrored ? -x_hi : x_lo; }
  double true_hi() const { return mirrored ? -x_lo : x_hi; }
};

}  // namespace

ZeroExpansion expand_zero_monotone(double z, const Interval& x, const Expr& f,
                                   const MonotoneConfig& cfg, double& tau_w) {
  // Half steps keep a sharp-root cluster (one flank probe each way) within
  // the tau_x width contract; a monotone f has at most one root, so fine
  // steps cannot multiply candidates.
  return expand_zero_march(
      z, x, [&](double t) { return eval_point(f, t); }, cfg.tau_x / 2, tau_w);
}

MonotoneResult solve_increasing(const Interval& x, const Expr& f, const Expr& fprime,
                                const MonotoneConfig& cfg) {
  MonotoneResult out;
  double tau_w = cfg.tau_w;

  const auto eval = [&](double t) {
    ++out.stats.point_evals;
    const Interval w = eval_point(f, t);
    tau_w = std::max(tau_w, 16 * w.width());
    return w;
  };

  // Expansion assembly: the candidate spans from the certified left flank
  // (or the boundary) to the certified right flank (or the boundary); an
  // increasing f certifiably has no root beyond a certified flank, so the
  // remainders need no further examination. Signs for boundary ends fall
  // back to what is known about f there.
  const auto expansion_result = [&](double z, const Interval& domain, Sign lo_known,
                                    Sign hi_known) {
    out.stats.expanded = true;
    const ZeroExpansion ze = expand_zero_monotone(z, domain, f, cfg, tau_w);
    double lo = domain.lo();
    Sign sign_lo = lo_known;
    if (ze.left_sign != Sign::unknown) {
      lo = ze.cluster.lo();
      sign_lo = ze.left_sign;
    }
    double hi = domain.hi();
    Sign sign_hi = hi_known;
    if (ze.right_sign != Sign::unknown) {
      hi = ze.cluster.hi();
      sign_hi = ze.right_sign;
    }
    // A flat uncertified core, or flanks certifying the same sign, marks a
    // cluster; a degenerate core with a strict sign change is just a
    // sharp root.
    const bool clusterish = ze.core.lo() < ze.core.hi() ||
                            (sign_lo != Sign::unknown && sign_lo == sign_hi);
    out.candidate = RootCandidate{Interval::make(lo, hi), sign_lo, sign_hi,
                                  status_from_signs(sign_lo, sign_hi, clusterish)};
    out.tau_w_final = tau_w;
    return out;
  };

  MonotoneState st;
  st.x_lo = x.lo();
  st.x_hi = x.hi();
  st.w_lo = eval(st.x_lo);
  st.w_hi = eval(st.x_hi);

  // Certified no root: f already positive at the infimum or negative at
  // the supremum of an increasing function.
  if (st.w_lo.lo() > 0 || st.w_hi.hi() < 0) {
    out.tau_w_final = tau_w;
    return out;
  }

  tau_w = std::max({tau_w, 16 * st.w_lo.width(), 16 * st.w_hi.width()});

  // Ambiguous endpoint enclosures go straight to zero expansion.
  if (st.w_lo.hi() >= 0)
    return expansion_result(st.x_lo, x, Sign::unknown, certified_sign(st.w_hi));
  if (st.w_hi.lo() <= 0)
    return expansion_result(st.x_hi, x, certified_sign(st.w_lo), Sign::unknown);

  const auto value = [&](double t) {
    return st.mirrored ? -eval(-t) : eval(t);
  };
  const auto dvalue = [&](double t) {
    return st.mirrored ? eval_double(fprime, -t) : eval_double(fprime, t);
  };

  const auto bracket_candidate = [&]() {
    out.candidate = RootCandidate{Interval::make(st.true_lo(), st.true_hi()),
                                  Sign::minus, Sign::plus, RootStatus::certified};
    out.tau_w_final = tau_w;
    return out;
  };

  for (long iter = 0; iter < 200000; ++iter) {
    // Loop invariant: w_lo entirely negative, w_hi entirely positive.
    if (st.x_hi - st.x_lo < cfg.tau_x || st.w_hi.hi() - st.w_lo.lo() < tau_w)
      return bracket_candidate();

    if (-st.w_lo.lo() > st.w_hi.hi()) st.mirror();

    bool newton_found_ambiguous = false;
    double ambiguous_at = 0.0;

    if (std::isnan(st.d_lo)) {
      const double t_k = st.x_lo;
      const double d_k = std::fmax(cfg.kappa, dvalue(t_k));
      st.secant.observe(t_k, d_k);
      st.d_lo = d_k;
      double s = -st.w_lo.lo() / d_k;
      if (st.secant.h < 0) s -= st.secant.h * s * s / d_k;
      if (std::isfinite(s) && !(2 * s > st.x_hi - st.x_lo)) {
        ++out.stats.newton_steps;
        const double t_next = t_k + s;
        const Interval w_next = value(t_next);
        if (w_next.lo() > 0) {
          st.w_hi = w_next;
          st.x_hi = t_next;
          st.d_hi = kNaN;
          continue;
        }
        if (w_next.hi() < 0) {
          st.w_lo = w_next;
          st.x_lo = t_next;
          st.d_lo = kNaN;
          // fall through to a bisection step
        } else {
          newton_found_ambiguous = true;
          ambiguous_at = t_next;
        }
      }
    }

    if (!newton_found_ambiguous) {
      const double t_next = st.x_lo + (st.x_hi - st.x_lo) / 2;
      if (!(t_next > st.x_lo && t_next < st.x_hi)) return bracket_candidate();
      ++out.stats.bisections;
      const Interval w_next = value(t_next);
      if (w_next.lo() > 0) {
        st.w_hi = w_next;
        st.x_hi = t_next;
        st.d_hi = kNaN;
        continue;
      }
      if (w_next.hi() < 0) {
        st.w_lo = w_next;
        st.x_lo = t_next;
        st.d_lo = kNaN;
        continue;
      }
      newton_found_ambiguous = true;
      ambiguous_at = t_next;
    }

    if (newton_found_ambiguous) {
      const double z = st.mirrored ? -ambiguous_at : ambiguous_at;
      const Interval domain = Interval::make(st.true_lo(), st.true_hi());
      return expansion_result(z, domain, Sign::minus, Sign::plus);
    }
  }
  return bracket_candidate();
}

}  // namespace ivroot
