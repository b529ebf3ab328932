#pragma once

#include <optional>
#include <vector>

#include "linerdv/line_model.hpp"

namespace linerdv {

// Live simulation state. Robots sit in motion groups; a group moves as one
// with a single velocity in {-1, 0, +1}. Between events every group is
// linear, so the next co-location is an exact one-step computation.
class Sim {
 public:
  explicit Sim(const Configuration& config);

  const Scalar& now() const { return now_; }
  int robot_count() const { return static_cast<int>(pos_.size()); }
  const Scalar& position(RobotId id) const { return pos_[id]; }
  int group_of(RobotId id) const { return group_[id]; }
  int velocity_of(RobotId id) const { return vel_[group_[id]]; }
  int group_velocity(int group) const { return vel_[group]; }
  const std::vector<RobotId>& members(int group) const { return members_[group]; }
  bool all_colocated() const;

  // Live group ids ordered by (position, id).
  std::vector<int> groups_by_position() const;

  void set_velocity(int group, int v);
  // Groups must be co-located; the surviving id is the smaller one.
  int merge(int g1, int g2);

 private:
  friend Plan run_kernel(const Configuration&, class Controller&, int);
  Scalar now_;
  std::vector<Scalar> pos_;                    // per robot
  std::vector<int> group_;                     // robot -> group id
  std::vector<std::vector<RobotId>> members_;  // group id -> sorted members
  std::vector<int> vel_;                       // per group id
};

// One co-location position within an event batch.
struct MeetSite {
  Scalar position;
  std::vector<RobotId> robots;  // sorted; everyone standing at `position`
  std::vector<int> groups;      // the groups present, ascending
};

// Everything that happens at a single timestamp: the new co-locations
// (ordered by position) and whether a scheduled boundary was reached.
struct Batch {
  Scalar time;
  std::vector<MeetSite> sites;
  bool boundary = false;
};

class Controller {
 public:
  virtual ~Controller() = default;
  // Set initial velocities and perform t = 0 merges.
  virtual void start(Sim& sim) = 0;
  // Next strategy-scheduled time, strictly after sim.now(), if any.
  virtual std::optional<Scalar> next_boundary(const Sim& sim) = 0;
  // React to a batch: merge met groups, update velocities and targets.
  virtual void react(Sim& sim, const Batch& batch) = 0;
};

// Runs the controller until all robots share one point. Records every
// co-location as a MeetEvent, builds the trajectories, and collects the
// sanctioned turn timestamps for the validator.
Plan run_kernel(const Configuration& config, Controller& controller,
                int max_events = 100000);

// Scheduled open-loop motion: per-robot velocities per stage. Stages with
// zero duration must be dropped by the caller.
class ScheduleController : public Controller {
 public:
  struct Stage {
    Scalar end_time;             // strictly increasing across stages
    std::vector<int> velocities;  // one per robot
  };
  explicit ScheduleController(std::vector<Stage> stages);

  void start(Sim& sim) override;
  std::optional<Scalar> next_boundary(const Sim& sim) override;
  void react(Sim& sim, const Batch& batch) override;

 private:
  void apply(Sim& sim);
  std::vector<Stage> stages_;
  std::size_t current_ = 0;
};

}  // namespace linerdv
