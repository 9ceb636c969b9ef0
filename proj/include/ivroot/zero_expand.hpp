#pragma once

#include <functional>

#include "ivroot/interval.hpp"

namespace ivroot {

// Outcome of a zero expansion around an ambiguous point z.
//
// The march probes outward from z in tolerance-sized steps until a probe
// value is certified at least tau_w away from zero (the flank) or the
// boundary of x stops it. The cluster spans from flank probe to flank
// probe (or boundary), so it contains every point whose value could not be
// separated from zero plus the one-step margins; the remainders are what
// is left of x beyond the flanks. `core` is the inner uncertified region
// alone, which tells a sharp sign change (degenerate core) apart from a
// genuinely flat zone. Flank signs are unknown when the boundary was hit
// before certification.
struct ZeroExpansion {
  Interval left;
  Interval cluster;
  Interval right;
  Interval core;
  Sign left_sign = Sign::unknown;
  Sign right_sign = Sign::unknown;
};

// tau_w is inflated in place by the 16x rule at every probe. The point
// evaluator must return an enclosure of f at the probe.
ZeroExpansion expand_zero_march(double z, const Interval& x,
                                const std::function<Interval(double)>& point_eval,
                                double step, double& tau_w);

}  // namespace ivroot
