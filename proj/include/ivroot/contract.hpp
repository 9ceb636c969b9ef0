#pragma once

#include <utility>
#include <vector>

#include "ivroot/interval.hpp"

namespace ivroot {

// Result of one interval Newton contraction on x with expansion point t,
// value enclosure w = f(t) (0 not in w) and slope-or-derivative enclosure d.
//
// Each surviving part is annotated per endpoint: `is_new` marks endpoints
// created by this contraction; those carry a rigorously certified sign of f
// obtained from the linear envelope alone, without evaluating f there.
// Endpoints that are not new coincide with endpoints of the input x and
// keep whatever sign the caller already knew.
struct ContractOutcome {
  struct Part {
    Interval iv;
    Sign lo_sign = Sign::unknown;
    Sign hi_sign = Sign::unknown;
    bool lo_is_new = false;
    bool hi_is_new = false;
    bool lo_nudged = false;
    bool hi_nudged = false;
  };

  std::vector<Part> parts;  // 0, 1 or 2, ordered left to right
  bool gap_certified = false;  // a middle region was excised with certainty
};

// Normalize w so that its upper bound is negative (replacing f by -f when
// needed). Returns {flipped, normalized w}. Requires 0 not in w.
std::pair<bool, Interval> normalize_sign(const Interval& w);

// One contraction step. Preconditions (programming errors when violated,
// reported by throwing std::logic_error): x non-empty, t in x, w non-empty
// with 0 not in w, d non-empty.
ContractOutcome contract(const Interval& x, double t, const Interval& w, const Interval& d);

}  // namespace ivroot
