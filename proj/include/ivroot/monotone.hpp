#pragma once

#include <cstdint>
#include <optional>

#include "ivroot/expr.hpp"
#include "ivroot/interval.hpp"
#include "ivroot/root_candidate.hpp"
#include "ivroot/zero_expand.hpp"

namespace ivroot {

// Configuration for the monotone solver. kappa is a certified positive
// lower bound on f' over the whole interval, established by the caller
// (typically from an interval derivative enclosure).
struct MonotoneConfig {
  double kappa;
  double tau_x;
  double tau_w;
};

struct MonotoneStats {
  std::uint64_t point_evals = 0;
  std::uint64_t newton_steps = 0;
  std::uint64_t bisections = 0;
  bool expanded = false;
};

struct MonotoneResult {
  std::optional<RootCandidate> candidate;  // nullopt: certified root-free
  double tau_w_final = 0.0;
  MonotoneStats stats;
};

// Verified Newton for f with f' >= kappa > 0 on x (handle decreasing f by
// negating the expression first). Uses point evaluations of f and plain
// floating-point evaluations of f' only; never evaluates an extension
// over a non-degenerate interval. At most one root exists, so the result
// is a single candidate or a certified "no root".
MonotoneResult solve_increasing(const Interval& x, const Expr& f, const Expr& fprime,
                                const MonotoneConfig& cfg);

// Monotone-variant zero expansion: marches in tau_x steps (a strictly
// monotone f has at most one root, so fine steps cannot blow up the
// candidate count) and applies the 16x tau_w inflation at every probe.
ZeroExpansion expand_zero_monotone(double z, const Interval& x, const Expr& f,
                                   const MonotoneConfig& cfg, double& tau_w);

}  // namespace ivroot
