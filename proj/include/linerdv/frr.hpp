#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "linerdv/line_model.hpp"

namespace linerdv {

// Normalized four-robot instance on [0,1]: outer gaps x (left) and y
// (right), middle gap 1-x-y, with 0 <= y <= x <= 1 and x+y <= 1.
struct FourConfig {
  Scalar x;
  Scalar y;
};

FourConfig four_config(Scalar x, Scalar y);  // validates the invariants

// Affine map from normalized coordinates back to the original line:
// position = shift + scale * (reflected ? 1 - xi : xi), time scales by
// `scale`. role_to_id maps the normalized roles a,b,c,d (0..3) onto the
// original robot ids.
struct NormalizationMap {
  Scalar shift;
  Scalar scale;  // > 0
  bool reflected;
  std::array<RobotId, 4> role_to_id;
};

// Exactly four robots, not all co-located.
std::pair<FourConfig, NormalizationMap> normalize4(const Configuration& config);

// A competitive ratio that may be the +infinity sentinel.
struct CrValue {
  bool infinite = false;
  Scalar value;

  static CrValue inf() { return {true, Scalar(0)}; }
  static CrValue finite(Scalar v) { return {false, std::move(v)}; }
  bool operator==(const CrValue& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const CrValue& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const CrValue& o) const { return *this < o || *this == o; }
  std::string str() const { return infinite ? "inf" : value.str(); }
};

// The six unordered robot pairs of a four-robot instance.
enum class FourPair { ab, ac, ad, bc, bd, cd };
constexpr std::array<FourPair, 6> kFourPairs = {FourPair::ab, FourPair::ac, FourPair::ad,
                                                FourPair::bc, FourPair::bd, FourPair::cd};
std::array<int, 2> pair_roles(FourPair pair);  // role indices 0..3
std::string pair_name(FourPair pair);

// True when the case handles this surviving pair at ratio one.
bool case_pair_optimal(int case_id, FourPair pair);

// The case's ratio for one surviving pair. A zero denominator with a
// positive numerator is the +inf sentinel; 0/0 marks a doubly degenerate
// co-located pair and evaluates to 1, matching the simulation policy.
CrValue case_pair_cr(int case_id, FourPair pair, const Scalar& x, const Scalar& y);

// Worst ratio of the case: max over its non-optimal pairs.
CrValue case_cr(int case_id, const Scalar& x, const Scalar& y);

// The case's phase durations in order; they always sum to 1/2. A zero
// entry marks a degenerate instance whose meeting order collapses.
std::vector<Scalar> case_phase_durations(int case_id, const Scalar& x, const Scalar& y);

// Membership in the region where the case stays within 1+phi. Boundaries
// inclusive. i in 3..6.
bool region_contains(int i, const Scalar& x, const Scalar& y);

// Case priority 3, 4 minus 3, 5 minus earlier, 6 minus earlier. The four
// regions cover the whole domain, so a point in none is an internal error.
int select_case(const Scalar& x, const Scalar& y);

// Phase plan of the case in normalized coordinates (robots 0..3 at 0, x,
// 1-y, 1); all four co-locate at time 1/2.
Plan case_plan(int case_id, const FourConfig& fc);

// Four-robot rendezvous in original coordinates: normalize, pick the case,
// run it, map back.
Plan frr_plan(const Configuration& config);

// The worst-case instance: x = 1/(1+phi), y = 1/(phi(1+phi)).
std::pair<Scalar, Scalar> golden_point();

}  // namespace linerdv
