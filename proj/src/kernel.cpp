#include "linerdv/kernel.hpp"

#include <algorithm>

namespace linerdv {

Sim::Sim(const Configuration& config) : now_(0) {
  const int n = config.size();
  pos_.resize(n);
  group_.resize(n);
  members_.resize(n);
  vel_.assign(n, 0);
  for (RobotId id = 0; id < n; ++id) {
    pos_[id] = config.position_of(id);
    group_[id] = id;
    members_[id] = {id};
  }
}

bool Sim::all_colocated() const {
  for (std::size_t i = 1; i < pos_.size(); ++i) {
    if (pos_[i] != pos_[0]) return false;
  }
  return true;
}

std::vector<int> Sim::groups_by_position() const {
  std::vector<int> live;
  for (std::size_t g = 0; g < members_.size(); ++g) {
    if (!members_[g].empty()) live.push_back(static_cast<int>(g));
  }
  std::sort(live.begin(), live.end(), [this](int a, int b) {
    const Scalar& pa = pos_[members_[a].front()];
    const Scalar& pb = pos_[members_[b].front()];
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return live;
}

void Sim::set_velocity(int group, int v) {
  if (v < -1 || v > 1) throw InternalError("velocity must be in {-1,0,1}");
  if (members_[group].empty()) throw InternalError("velocity on a dead group");
  vel_[group] = v;
}

int Sim::merge(int g1, int g2) {
  if (g1 == g2) return g1;
  if (members_[g1].empty() || members_[g2].empty()) throw InternalError("merging a dead group");
  if (pos_[members_[g1].front()] != pos_[members_[g2].front()]) {
    throw InternalError("merging groups that are not co-located");
  }
  const int keep = std::min(g1, g2);
  const int drop = std::max(g1, g2);
  std::vector<RobotId> merged;
  std::merge(members_[keep].begin(), members_[keep].end(), members_[drop].begin(),
             members_[drop].end(), std::back_inserter(merged));
  members_[keep] = std::move(merged);
  members_[drop].clear();
  for (const RobotId r : members_[keep]) group_[r] = keep;
  return keep;
}

Plan run_kernel(const Configuration& config, Controller& controller, int max_events) {
  Sim sim(config);
  const int n = sim.robot_count();

  controller.start(sim);

  std::vector<std::vector<Breakpoint>> points(n);
  std::vector<int> seg_vel(n);
  for (RobotId r = 0; r < n; ++r) {
    points[r].push_back({Scalar(0), sim.position(r)});
    seg_vel[r] = sim.velocity_of(r);
  }

  std::vector<MeetEvent> events;
  std::vector<Scalar> schedule;

  int steps = 0;
  while (!sim.all_colocated()) {
    if (++steps > max_events) throw InternalError("event budget exhausted; runaway plan");

    const std::vector<int> order = sim.groups_by_position();

    // Earliest future co-location. Groups sharing a position (an instant
    // of crossing) form one cluster; only adjacent clusters can meet
    // first, and the soonest contact between two clusters is between the
    // fastest right-mover of the left one and the fastest left-mover of
    // the right one. Anything between two meeting clusters would meet one
    // of them no later.
    struct Cluster {
      Scalar position;
      int vmax;
      int vmin;
    };
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < order.size();) {
      const Scalar& pos = sim.position(sim.members(order[i]).front());
      Cluster c{pos, -2, 2};
      while (i < order.size() && sim.position(sim.members(order[i]).front()) == pos) {
        const int v = sim.group_velocity(order[i]);
        c.vmax = std::max(c.vmax, v);
        c.vmin = std::min(c.vmin, v);
        ++i;
      }
      clusters.push_back(std::move(c));
    }
    std::optional<Scalar> t_meet;
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
      const int closing = clusters[i].vmax - clusters[i + 1].vmin;
      if (closing <= 0) continue;
      const Scalar gap = clusters[i + 1].position - clusters[i].position;
      const Scalar t = sim.now() + gap / Scalar(closing);
      if (!t_meet || t < *t_meet) t_meet = t;
    }

    const std::optional<Scalar> t_boundary = controller.next_boundary(sim);
    if (t_boundary && !(sim.now() < *t_boundary)) {
      throw InternalError("controller boundary is not in the future");
    }

    std::optional<Scalar> t_next = t_meet;
    if (t_boundary && (!t_next || *t_boundary < *t_next)) t_next = t_boundary;
    if (!t_next) {
      throw StallError("robots are apart but no co-location or boundary lies ahead");
    }

    // Advance every robot linearly to the event time.
    const Scalar dt = *t_next - sim.now();
    std::vector<Scalar> before(sim.pos_);
    for (RobotId r = 0; r < n; ++r) {
      const int v = sim.velocity_of(r);
      if (v != 0) sim.pos_[r] += Scalar(v) * dt;
    }
    sim.now_ = *t_next;

    // Collect the new co-locations, grouped by position.
    Batch batch;
    batch.time = sim.now();
    batch.boundary = t_boundary && *t_boundary == sim.now();
    const std::vector<int> order_now = sim.groups_by_position();
    for (std::size_t i = 0; i < order_now.size();) {
      std::size_t j = i;
      const Scalar& site_pos = sim.position(sim.members(order_now[i]).front());
      while (j < order_now.size() &&
             sim.position(sim.members(order_now[j]).front()) == site_pos) {
        ++j;
      }
      if (j - i >= 2) {
        // Skip clusters that were already together before this step.
        bool fresh = false;
        const Scalar& ref = before[sim.members(order_now[i]).front()];
        for (std::size_t k = i + 1; k < j && !fresh; ++k) {
          if (before[sim.members(order_now[k]).front()] != ref) fresh = true;
        }
        if (fresh) {
          MeetSite site;
          site.position = site_pos;
          for (std::size_t k = i; k < j; ++k) {
            site.groups.push_back(order_now[k]);
            for (const RobotId r : sim.members(order_now[k])) site.robots.push_back(r);
          }
          std::sort(site.robots.begin(), site.robots.end());
          std::sort(site.groups.begin(), site.groups.end());
          batch.sites.push_back(std::move(site));
        }
      }
      i = j;
    }

    for (const MeetSite& site : batch.sites) {
      events.push_back({batch.time, site.position, site.robots});
    }

    controller.react(sim, batch);

    // Record breakpoints for velocity changes and sanction turns that are
    // not the robot's own meeting.
    for (RobotId r = 0; r < n; ++r) {
      const int v = sim.velocity_of(r);
      if (v == seg_vel[r]) continue;
      if (points[r].back().t < sim.now()) {
        points[r].push_back({sim.now(), sim.position(r)});
      }
      const bool flip = seg_vel[r] != 0 && v != 0 && v == -seg_vel[r];
      if (flip) {
        bool in_site = false;
        for (const MeetSite& site : batch.sites) {
          if (std::binary_search(site.robots.begin(), site.robots.end(), r)) {
            in_site = true;
            break;
          }
        }
        if (!in_site) schedule.push_back(sim.now());
      }
      seg_vel[r] = v;
    }
  }

  Plan plan;
  plan.config = config;
  plan.all_gather_time = sim.now();
  plan.trajectories.reserve(n);
  for (RobotId r = 0; r < n; ++r) {
    if (points[r].back().t < sim.now()) points[r].push_back({sim.now(), sim.position(r)});
    plan.trajectories.emplace_back(std::move(points[r]));
  }
  plan.events = std::move(events);
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
  plan.schedule_times = std::move(schedule);
  return plan;
}

ScheduleController::ScheduleController(std::vector<Stage> stages)
    : stages_(std::move(stages)) {
  for (std::size_t i = 1; i < stages_.size(); ++i) {
    if (!(stages_[i - 1].end_time < stages_[i].end_time)) {
      throw InternalError("schedule stages must strictly increase");
    }
  }
}

void ScheduleController::start(Sim& sim) { apply(sim); }

std::optional<Scalar> ScheduleController::next_boundary(const Sim&) {
  if (current_ >= stages_.size()) return std::nullopt;
  return stages_[current_].end_time;
}

void ScheduleController::react(Sim& sim, const Batch& batch) {
  if (!batch.boundary) return;
  ++current_;
  apply(sim);
}

void ScheduleController::apply(Sim& sim) {
  if (current_ >= stages_.size()) return;
  const auto& vels = stages_[current_].velocities;
  for (RobotId r = 0; r < sim.robot_count(); ++r) {
    sim.set_velocity(sim.group_of(r), vels[r]);
  }
}

}  // namespace linerdv
