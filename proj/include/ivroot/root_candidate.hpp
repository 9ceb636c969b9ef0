#pragma once

#include "ivroot/interval.hpp"

namespace ivroot {

enum class RootStatus { certified, possible, cluster };

// Output enclosure with the certified signs of f at its endpoints.
// certified status holds exactly when the endpoint signs are strictly
// opposite; cluster candidates come from zero expansion or the cluster-
// threshold rule.
struct RootCandidate {
  Interval interval;
  Sign sign_lo = Sign::unknown;
  Sign sign_hi = Sign::unknown;
  RootStatus status = RootStatus::possible;
};

inline RootStatus status_from_signs(Sign lo, Sign hi, bool from_cluster) {
  if (sign_value(lo) * sign_value(hi) == -1) return RootStatus::certified;
  return from_cluster ? RootStatus::cluster : RootStatus::possible;
}

inline const char* to_string(RootStatus s) {
  switch (s) {
    case RootStatus::certified: return "certified";
    case RootStatus::possible: return "possible";
    case RootStatus::cluster: return "cluster";
  }
  return "?";
}

}  // namespace ivroot
