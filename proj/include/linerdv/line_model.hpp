#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linerdv/exactnum.hpp"

namespace linerdv {

// Robots are identified by dense indices 0..n-1, stable across a run.
using RobotId = int;

struct ConfigEntry {
  RobotId id;
  Scalar position;
};

// Initial robot placement, kept sorted by (position, id).
class Configuration {
 public:
  Configuration() = default;

  // Ids are assigned by list order (0..n-1), then entries are sorted.
  static Configuration from_positions(const std::vector<Scalar>& positions);
  static Configuration from_entries(std::vector<ConfigEntry> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<ConfigEntry>& entries() const { return entries_; }
  const Scalar& position_of(RobotId id) const;
  RobotId id_at_rank(int rank) const { return entries_.at(rank).id; }
  std::vector<RobotId> all_ids() const;
  const Scalar& min_position() const { return entries_.front().position; }
  const Scalar& max_position() const { return entries_.back().position; }
  Scalar span() const { return max_position() - min_position(); }

 private:
  std::vector<ConfigEntry> entries_;
  std::vector<int> rank_of_id_;
};

// Max minus min initial position over a non-empty subset.
Scalar diameter(const Configuration& config, std::span<const RobotId> subset);

struct Breakpoint {
  Scalar t;
  Scalar x;
};

// Piecewise-linear motion. Times are strictly increasing and start at 0;
// beyond the last breakpoint the position holds.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<Breakpoint> points);

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  Scalar position_at(const Scalar& t) const;  // t < 0 is an error
  const Scalar& end_time() const { return points_.back().t; }
  const Scalar& end_position() const { return points_.back().x; }

 private:
  std::vector<Breakpoint> points_;
};

// Least t >= 0 with equal positions, or nullopt when the trajectories
// never co-locate (including their terminal holds).
std::optional<Scalar> first_meet_time(const Trajectory& a, const Trajectory& b);

// An instantaneous co-location of two or more robots.
struct MeetEvent {
  Scalar time;
  Scalar position;
  std::vector<RobotId> robots;  // sorted, size >= 2
};

// The full output of a strategy: one trajectory per robot, the complete
// co-location event log, and the first time all robots share a point.
// schedule_times are the timestamps at which the generator commanded
// velocity changes that are not that robot's own meeting (phase and stage
// boundaries); the validator treats turns there as sanctioned.
struct Plan {
  Configuration config;
  std::vector<Trajectory> trajectories;  // indexed by RobotId
  std::vector<MeetEvent> events;         // ordered by (time, position)
  Scalar all_gather_time;
  std::vector<Scalar> schedule_times;    // sorted, unique
  Scalar gather_position() const;
};

// First time every robot of the subset shares one point. The plan's event
// log must contain every co-location (strategy plans do); zeros of the
// subset diameter can then only occur at event times or t = 0.
Scalar gather_time(const Plan& plan, std::span<const RobotId> subset);

struct Violation {
  int rule;  // 1 = turn away from any meeting, 2 = non-unit speed
  RobotId robot;
  Scalar time;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the movement normalization rules: (1) a robot changes direction
// only while it participates in a meeting or at a sanctioned schedule
// time, and (2) every segment before the all-gather time has unit speed
// (afterwards at most one hold is allowed).
ValidationReport validate_plan(const Plan& plan);

struct ColocationGroups {
  Configuration config;                     // unchanged positions
  std::vector<std::vector<RobotId>> groups;  // by ascending position
};

// Robots at identical positions form one motion group.
ColocationGroups merge_colocated(const Configuration& config);

// CSV export: header "robot,t,x", one row per breakpoint, scalars in the
// canonical grammar.
void write_trajectory_csv(const Plan& plan, std::ostream& out);

}  // namespace linerdv
