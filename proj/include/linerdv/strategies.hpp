#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linerdv/line_model.hpp"

namespace linerdv {

// One shrink step: the minimal-gap adjacent pair of groups closes at its
// midpoint while everything else translates along.
struct SsiPhase {
  std::vector<RobotId> left_group;
  std::vector<RobotId> right_group;
  Scalar gap;
  Scalar duration;  // gap / 2
};

// Phase list computed arithmetically from the gap multiset (the plan's
// event log must agree; tests cross-check the two routes).
std::vector<SsiPhase> ssi_phases(const Configuration& config);

// Shrink-the-shortest-interval rendezvous. Ties between equal minimal
// gaps break to the leftmost pair.
Plan ssi_plan(const Configuration& config);

// Label-driven doubling rendezvous. Requires integral positions;
// co-located robots share a label and move as one.
Plan doubling_plan(const Configuration& config);

struct ScaledDoublingParams {
  Scalar epsilon = Scalar(Rational(1, 10));  // must be > 0; unused for exact rationals
};

// Rational positions are scaled by the lcm of their denominators to
// integers, run through the doubling plan, and mapped back.
Plan scaled_doubling_plan(const Configuration& config,
                          const ScaledDoublingParams& params = {});

// Move-towards-the-center rendezvous for f <= (n-1)/2.
Plan mtc_plan(const Configuration& config, int f);

// Three-way split sizes for the five-competitive algorithm.
struct PartitionSpec {
  int k;
  int size_left;
  int size_mid;
  int size_right;
  std::optional<Scalar> m_left;   // position of the mid group's left walker
  std::optional<Scalar> m_right;  // position of the mid group's right walker
};

PartitionSpec three_group_partition(int n);                       // n >= 9
PartitionSpec three_group_partition(const Configuration& config);  // binds m_l, m_r

// Three-group rendezvous for f < 2(n-1)/3, n >= 9.
Plan three_group_plan(const Configuration& config, int f);

enum class StrategyKind { ssi, doubling, scaled_doubling, mtc, three_group, frr };

StrategyKind parse_strategy(const std::string& name);
std::string strategy_name(StrategyKind kind);

struct StrategyParams {
  int f = 0;
  std::optional<Scalar> epsilon;
};

Plan make_plan(StrategyKind kind, const Configuration& config,
               const StrategyParams& params = {});

}  // namespace linerdv
