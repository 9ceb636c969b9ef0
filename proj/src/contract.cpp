#include "ivroot/contract.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ivroot {

namespace {

using rnd::Directed;

// A one-sided crossing bound together with its certification metadata.
struct CrossingBound {
  double value = 0.0;
  bool nudged = false;
};

[[noreturn]] void contract_violation(const char* what) {
  throw std::logic_error(std::string("contract: ") + what);
}

// Upper end of the left region: r1 = t - w_hi/d_lo computed upward as
// r1 = t + up(w_hi / (-d_lo)). When the result may be exact it is nudged
// one float up so that f is strictly nonzero there; the nudge is skipped
// when r1 already equals t (the sign at t is certified by w itself).
// Guarantees r1 <= t.
CrossingBound left_bound(double t, double w_hi, double d_lo) {
  const Directed q = rnd::div_up_checked(w_hi, -d_lo);
  const Directed r = rnd::add_up_checked(t, q.value);
  CrossingBound out{r.value, false};
  if (q.maybe_exact && r.maybe_exact && out.value < t) {
    out.value = rnd::next_up(out.value);
    out.nudged = true;
  }
  return out;
}

// Lower end of the right region: r2 = t - w_hi/d_hi computed downward via
// r2 = -up(up(w_hi / d_hi) - t), nudged one float down on possible
// exactness. Guarantees r2 >= t.
CrossingBound right_bound(double t, double w_hi, double d_hi) {
  const Directed q = rnd::div_up_checked(w_hi, d_hi);
  const Directed u = rnd::sub_up_checked(q.value, t);
  CrossingBound out{-u.value, false};
  if (q.maybe_exact && u.maybe_exact && out.value > t) {
    out.value = rnd::next_down(out.value);
    out.nudged = true;
  }
  return out;
}

// Upper end of the single part in the monotone-enclosure case (d_lo > 0):
// rU = t - w_lo/d_lo rounded upward; beyond it f is certifiably positive
// (in the normalized orientation). Nudged outward on possible exactness.
CrossingBound outer_bound(double t, double w_lo, double d_lo) {
  const Directed q = rnd::div_up_checked(w_lo, -d_lo);
  const Directed r = rnd::add_up_checked(t, q.value);
  CrossingBound out{r.value, false};
  if (q.maybe_exact && r.maybe_exact) {
    out.value = rnd::next_up(out.value);
    out.nudged = true;
  }
  return out;
}

ContractOutcome::Part clipped_part(const Interval& x, double lo, double hi,
                                   Sign lo_sign, Sign hi_sign, bool lo_nudged,
                                   bool hi_nudged) {
  ContractOutcome::Part part;
  const double plo = std::max(lo, x.lo());
  const double phi = std::min(hi, x.hi());
  if (plo > phi) return part;  // empty iv signals "no part"
  part.iv = Interval::make(plo, phi);
  part.lo_is_new = plo == lo && lo > x.lo();
  part.hi_is_new = phi == hi && hi < x.hi();
  if (part.lo_is_new) {
    part.lo_sign = lo_sign;
    part.lo_nudged = lo_nudged;
  }
  if (part.hi_is_new) {
    part.hi_sign = hi_sign;
    part.hi_nudged = hi_nudged;
  }
  return part;
}

// New endpoints with a certified sign cannot be roots, so a part collapsed
// to such a point is certifiably root-free.
bool droppable(const ContractOutcome::Part& part) {
  if (part.iv.is_empty()) return true;
  if (!part.iv.is_point()) return false;
  return (part.lo_is_new && part.lo_sign != Sign::unknown) ||
         (part.hi_is_new && part.hi_sign != Sign::unknown);
}

void mirror_in_place(ContractOutcome& outcome) {
  for (auto& part : outcome.parts) {
    part.iv = Interval::make(-part.iv.hi(), -part.iv.lo());
    std::swap(part.lo_sign, part.hi_sign);
    std::swap(part.lo_is_new, part.hi_is_new);
    std::swap(part.lo_nudged, part.hi_nudged);
  }
  std::reverse(outcome.parts.begin(), outcome.parts.end());
}

// Normalized case (w_hi < 0) with 0 strictly excluded from d and d > 0.
// Roots can only lie in [rL, rU] to the right of t; f is certifiably
// negative at rL and positive at rU.
ContractOutcome contract_monotone_up(const Interval& x, double t, const Interval& w,
                                     const Interval& d, Sign below, Sign above) {
  const CrossingBound lo = right_bound(t, w.hi(), d.hi());
  const CrossingBound hi = outer_bound(t, w.lo(), d.lo());
  if (!(lo.value >= t)) contract_violation("lower bound crossed t");
  if (lo.value > hi.value) contract_violation("monotone bounds crossed");
  ContractOutcome outcome;
  auto part = clipped_part(x, lo.value, hi.value, below, above, lo.nudged, hi.nudged);
  if (!droppable(part)) outcome.parts.push_back(std::move(part));
  return outcome;
}

// Normalized case (w_hi < 0) with 0 in d: the Figure-1 geometry with a
// certified gap between the candidate bounds.
ContractOutcome contract_straddle(const Interval& x, double t, const Interval& w,
                                  const Interval& d, Sign below) {
  ContractOutcome outcome;

  double excise_lo = x.lo();  // certified-root-free middle starts here
  double excise_hi = x.hi();

  ContractOutcome::Part left;
  bool have_left = false;
  if (d.lo() < 0) {
    const CrossingBound r1 = left_bound(t, w.hi(), d.lo());
    if (!(r1.value <= t)) contract_violation("r1 crossed t");
    excise_lo = r1.value;
    left = clipped_part(x, x.lo(), r1.value, Sign::unknown, below, false, r1.nudged);
    have_left = true;
  }

  ContractOutcome::Part right;
  bool have_right = false;
  if (d.hi() > 0) {
    const CrossingBound r2 = right_bound(t, w.hi(), d.hi());
    if (!(r2.value >= t)) contract_violation("r2 crossed t");
    excise_hi = r2.value;
    right = clipped_part(x, r2.value, x.hi(), below, Sign::unknown, r2.nudged, false);
    have_right = true;
  }

  // Both crossing bounds can collapse onto t (enclosures reaching out to
  // infinity); no middle region is excised then and the step carries no
  // information, so hand back x unchanged.
  if (have_left && have_right && excise_lo >= excise_hi) {
    outcome.parts.push_back({x, Sign::unknown, Sign::unknown, false, false, false, false});
    return outcome;
  }

  outcome.gap_certified = std::max(excise_lo, x.lo()) < std::min(excise_hi, x.hi());
  if (!droppable(left)) outcome.parts.push_back(std::move(left));
  if (!droppable(right)) outcome.parts.push_back(std::move(right));
  return outcome;
}

}  // namespace

std::pair<bool, Interval> normalize_sign(const Interval& w) {
  if (w.is_empty() || w.contains_zero())
    contract_violation("normalize_sign requires 0 outside w");
  if (w.hi() < 0) return {false, w};
  return {true, -w};
}

ContractOutcome contract(const Interval& x, double t, const Interval& w,
                         const Interval& d) {
  if (x.is_empty()) contract_violation("empty x");
  if (!x.contains(t)) contract_violation("t outside x");
  if (w.is_empty() || w.contains_zero()) contract_violation("0 in w");
  if (d.is_empty()) contract_violation("empty d");

  const auto [flipped, wn] = normalize_sign(w);
  Interval dn = flipped ? -d : d;
  // Certified signs of f (not of the normalized -f) at envelope points.
  const Sign below = flipped ? Sign::plus : Sign::minus;
  const Sign above = flip(below);

  // Degenerate zero enclosure: no line crosses, no information gained.
  if (dn.lo() == 0 && dn.hi() == 0) {
    ContractOutcome outcome;
    outcome.parts.push_back({x, Sign::unknown, Sign::unknown, false, false, false, false});
    return outcome;
  }

  if (dn.contains_zero()) return contract_straddle(x, t, wn, dn, below);

  if (dn.lo() > 0) return contract_monotone_up(x, t, wn, dn, below, above);

  // Decreasing enclosure: reduce to the increasing case by t -> -t.
  const Interval xm = Interval::make(-x.hi(), -x.lo());
  const Interval dm = Interval::make(-dn.hi(), -dn.lo());
  ContractOutcome outcome = contract_monotone_up(xm, -t, wn, dm, below, above);
  mirror_in_place(outcome);
  return outcome;
}

}  // namespace ivroot
