#include "linerdv/line_model.hpp"

#include <algorithm>
#include <ostream>

namespace linerdv {

Configuration Configuration::from_positions(const std::vector<Scalar>& positions) {
  std::vector<ConfigEntry> entries;
  entries.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    entries.push_back({static_cast<RobotId>(i), positions[i]});
  }
  return from_entries(std::move(entries));
}

Configuration Configuration::from_entries(std::vector<ConfigEntry> entries) {
  if (entries.size() < 2) throw PreconditionError("a configuration needs at least 2 robots");
  std::sort(entries.begin(), entries.end(), [](const ConfigEntry& l, const ConfigEntry& r) {
    if (l.position != r.position) return l.position < r.position;
    return l.id < r.id;
  });
  Configuration c;
  c.entries_ = std::move(entries);
  c.rank_of_id_.assign(c.entries_.size(), -1);
  for (std::size_t rank = 0; rank < c.entries_.size(); ++rank) {
    const RobotId id = c.entries_[rank].id;
    if (id < 0 || id >= static_cast<int>(c.entries_.size()) || c.rank_of_id_[id] != -1) {
      throw PreconditionError("robot ids must be a permutation of 0..n-1");
    }
    c.rank_of_id_[id] = static_cast<int>(rank);
  }
  return c;
}

const Scalar& Configuration::position_of(RobotId id) const {
  if (id < 0 || id >= size()) throw PreconditionError("unknown robot id");
  return entries_[rank_of_id_[id]].position;
}

std::vector<RobotId> Configuration::all_ids() const {
  std::vector<RobotId> ids(entries_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<RobotId>(i);
  return ids;
}

Scalar diameter(const Configuration& config, std::span<const RobotId> subset) {
  if (subset.empty()) throw PreconditionError("diameter of an empty subset");
  Scalar lo = config.position_of(subset[0]);
  Scalar hi = lo;
  for (const RobotId id : subset.subspan(1)) {
    const Scalar& p = config.position_of(id);
    if (p < lo) lo = p;
    if (hi < p) hi = p;
  }
  return hi - lo;
}

Trajectory::Trajectory(std::vector<Breakpoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw PreconditionError("empty trajectory");
  if (!points_.front().t.is_zero()) throw PreconditionError("trajectory must start at t = 0");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].t < points_[i].t)) {
      throw PreconditionError("trajectory times must be strictly increasing");
    }
  }
}

Scalar Trajectory::position_at(const Scalar& t) const {
  if (t.sign() < 0) throw PreconditionError("negative time");
  if (!(t < points_.back().t)) return points_.back().x;  // hold
  // Binary search the segment with points_[k].t <= t < points_[k+1].t.
  std::size_t lo = 0, hi = points_.size() - 1;
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (points_[mid].t <= t) lo = mid;
    else hi = mid;
  }
  const Breakpoint& p = points_[lo];
  const Breakpoint& q = points_[lo + 1];
  return p.x + (q.x - p.x) * (t - p.t) / (q.t - p.t);
}

std::optional<Scalar> first_meet_time(const Trajectory& a, const Trajectory& b) {
  // Merged breakpoint grid; each piece is linear for both trajectories.
  std::vector<Scalar> grid;
  grid.reserve(a.breakpoints().size() + b.breakpoints().size());
  for (const auto& p : a.breakpoints()) grid.push_back(p.t);
  for (const auto& p : b.breakpoints()) grid.push_back(p.t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Scalar prev_t = grid.front();
  Scalar prev_d = a.position_at(prev_t) - b.position_at(prev_t);
  if (prev_d.is_zero()) return prev_t;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Scalar& t = grid[i];
    const Scalar d = a.position_at(t) - b.position_at(t);
    if (d.is_zero()) return t;
    if (prev_d.sign() != d.sign()) {
      // Root of the linear gap within (prev_t, t).
      return prev_t + (t - prev_t) * prev_d / (prev_d - d);
    }
    prev_t = t;
    prev_d = d;
  }
  return std::nullopt;  // terminal holds differ
}

Scalar Plan::gather_position() const {
  return trajectories.front().position_at(all_gather_time);
}

Scalar gather_time(const Plan& plan, std::span<const RobotId> subset) {
  if (subset.empty()) throw PreconditionError("gather_time of an empty subset");
  if (subset.size() == 1) return Scalar(0);

  std::vector<Scalar> candidates;
  candidates.reserve(plan.events.size() + 2);
  candidates.push_back(Scalar(0));
  for (const MeetEvent& e : plan.events) candidates.push_back(e.time);
  candidates.push_back(plan.all_gather_time);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const Scalar& t : candidates) {
    const Scalar first = plan.trajectories[subset[0]].position_at(t);
    bool together = true;
    for (const RobotId id : subset.subspan(1)) {
      if (plan.trajectories[id].position_at(t) != first) {
        together = false;
        break;
      }
    }
    if (together) return t;
  }
  throw InternalError("subset never gathers before the plan horizon");
}

namespace {

bool robot_in_event_at(const Plan& plan, RobotId robot, const Scalar& t) {
  for (const MeetEvent& e : plan.events) {
    if (e.time != t) continue;
    if (std::binary_search(e.robots.begin(), e.robots.end(), robot)) return true;
  }
  return false;
}

bool is_schedule_time(const Plan& plan, const Scalar& t) {
  return std::binary_search(plan.schedule_times.begin(), plan.schedule_times.end(), t);
}

}  // namespace

ValidationReport validate_plan(const Plan& plan) {
  ValidationReport report;
  for (RobotId id = 0; id < plan.config.size(); ++id) {
    const auto& pts = plan.trajectories[id].breakpoints();
    int prev_dir = 0;
    int post_gather_segments = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const Scalar dt = pts[k + 1].t - pts[k].t;
      const Scalar dx = pts[k + 1].x - pts[k].x;
      const bool after_gather = !(pts[k].t < plan.all_gather_time);
      if (after_gather) {
        ++post_gather_segments;
        if (!dx.is_zero() || post_gather_segments > 1) {
          report.violations.push_back(
              {2, id, pts[k].t, "only one hold segment is allowed after all-gather"});
        }
        continue;
      }
      if (abs(dx) != dt) {
        report.violations.push_back({2, id, pts[k].t, "segment speed is not 1"});
      }
      const int dir = dx.sign();
      if (dir != 0 && prev_dir != 0 && dir != prev_dir) {
        const Scalar& turn_time = pts[k].t;
        if (!robot_in_event_at(plan, id, turn_time) && !is_schedule_time(plan, turn_time)) {
          report.violations.push_back(
              {1, id, turn_time, "direction change away from any meeting or schedule point"});
        }
      }
      if (dir != 0) prev_dir = dir;
    }
  }
  return report;
}

ColocationGroups merge_colocated(const Configuration& config) {
  ColocationGroups out;
  out.config = config;
  const auto& entries = config.entries();
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    std::vector<RobotId> group;
    while (j < entries.size() && entries[j].position == entries[i].position) {
      group.push_back(entries[j].id);
      ++j;
    }
    std::sort(group.begin(), group.end());
    out.groups.push_back(std::move(group));
    i = j;
  }
  return out;
}

void write_trajectory_csv(const Plan& plan, std::ostream& out) {
  out << "robot,t,x\n";
  for (RobotId id = 0; id < plan.config.size(); ++id) {
    for (const Breakpoint& p : plan.trajectories[id].breakpoints()) {
      out << id << ',' << p.t.str() << ',' << p.x.str() << '\n';
    }
  }
}

}  // namespace linerdv
