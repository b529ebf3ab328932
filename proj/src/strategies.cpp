#include "linerdv/strategies.hpp"

#include <algorithm>
#include <cstddef>

#include "linerdv/frr.hpp"
#include "linerdv/kernel.hpp"

namespace linerdv {

namespace {

void merge_colocated_groups(Sim& sim) {
  bool changed = true;
  while (changed) {
    changed = false;
    const auto order = sim.groups_by_position();
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const Scalar& a = sim.position(sim.members(order[i]).front());
      const Scalar& b = sim.position(sim.members(order[i + 1]).front());
      if (a == b) {
        sim.merge(order[i], order[i + 1]);
        changed = true;
        break;
      }
    }
  }
}

// Shrink-the-shortest-interval: reacts to each merge by re-aiming the two
// blocks at the new minimal gap (leftmost pair on ties).
class SsiController : public Controller {
 public:
  void start(Sim& sim) override {
    merge_colocated_groups(sim);
    aim(sim);
  }

  std::optional<Scalar> next_boundary(const Sim&) override { return std::nullopt; }

  void react(Sim& sim, const Batch& batch) override {
    for (const MeetSite& site : batch.sites) {
      int g = sim.group_of(site.robots.front());
      for (const RobotId r : site.robots) {
        if (sim.group_of(r) != g) g = sim.merge(g, sim.group_of(r));
      }
    }
    if (!sim.all_colocated()) aim(sim);
  }

 private:
  void aim(Sim& sim) {
    const auto order = sim.groups_by_position();
    if (order.size() < 2) return;
    std::size_t best = 0;
    Scalar best_gap = gap_at(sim, order, 0);
    for (std::size_t i = 1; i + 1 < order.size(); ++i) {
      const Scalar g = gap_at(sim, order, i);
      if (g < best_gap) {
        best_gap = g;
        best = i;
      }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      sim.set_velocity(order[i], i <= best ? 1 : -1);
    }
  }

  static Scalar gap_at(const Sim& sim, const std::vector<int>& order, std::size_t i) {
    return sim.position(sim.members(order[i + 1]).front()) -
           sim.position(sim.members(order[i]).front());
  }
};

// Open-loop doubling motion: velocities come from per-robot integer labels
// that halve every round while the stride doubles.
class DoublingController : public Controller {
 public:
  explicit DoublingController(const Configuration& config) {
    const int n = config.size();
    labels_.reserve(n);
    for (RobotId id = 0; id < n; ++id) {
      labels_.push_back(config.position_of(id).integer_value());
    }
    BigInt span = config.span().integer_value();
    round_cap_ = 2;
    BigInt p = 1;
    while (p < span) {
      p *= 2;
      ++round_cap_;
    }
    round_cap_ += 2;
    stride_ = Rational(1, 2);
    stage_end_ = Scalar(stride_);
  }

  void start(Sim& sim) override { apply(sim); }

  std::optional<Scalar> next_boundary(const Sim&) override { return stage_end_; }

  void react(Sim& sim, const Batch& batch) override {
    if (!batch.boundary) return;
    if (second_stage_) {
      for (BigInt& label : labels_) label = floor_div(label, 2);
      stride_ *= 2;
      if (++round_ > round_cap_) {
        throw InternalError("doubling exceeded its round bound without gathering");
      }
      second_stage_ = false;
      stage_end_ += Scalar(stride_);
    } else {
      second_stage_ = true;
      stage_end_ += Scalar(2 * stride_);
    }
    apply(sim);
  }

 private:
  void apply(Sim& sim) {
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      const bool odd = labels_[r] % 2 != 0;
      const int v = second_stage_ ? (odd ? -1 : 1) : (odd ? 1 : -1);
      sim.set_velocity(sim.group_of(r), v);
    }
  }

  std::vector<BigInt> labels_;
  Rational stride_;
  Scalar stage_end_;
  bool second_stage_ = false;
  int round_ = 1;
  int round_cap_;
};

// Move-towards-the-center: the halves walk inward, the central group walks
// the distance-ordered visit sequence, anyone touching the center sticks.
class MtcController : public Controller {
 public:
  MtcController(const Configuration& config, int f) : config_(config), f_(f) {}

  void start(Sim& sim) override {
    const int n = sim.robot_count();
    const int left_count = n / 2;
    role_.assign(n, 0);
    for (int rank = 0; rank < n; ++rank) {
      role_[config_.id_at_rank(rank)] = rank < left_count ? -1 : 1;
    }
    if (n == 2 * f_ + 1) {
      const RobotId middle = config_.id_at_rank(f_);
      role_[middle] = 0;
      central_ = sim.group_of(middle);
      absorb_colocated(sim);
      build_targets(sim, sim.position(middle));
    } else {
      const RobotId ql = config_.id_at_rank(left_count - 1);
      const RobotId qr = config_.id_at_rank(left_count);
      if (sim.position(ql) == sim.position(qr)) {
        central_ = sim.merge(sim.group_of(ql), sim.group_of(qr));
        absorb_colocated(sim);
        build_targets(sim, sim.position(ql));
      }
    }
    drive(sim);
  }

  std::optional<Scalar> next_boundary(const Sim&) override { return std::nullopt; }

  void react(Sim& sim, const Batch& batch) override {
    for (const MeetSite& site : batch.sites) {
      if (central_ < 0) {
        // Before the center exists the only possible contact is the
        // innermost left-right pair (plus anything standing with it).
        int g = sim.group_of(site.robots.front());
        for (const RobotId r : site.robots) {
          if (sim.group_of(r) != g) g = sim.merge(g, sim.group_of(r));
        }
        central_ = g;
        build_targets(sim, site.position);
      } else if (std::find(site.groups.begin(), site.groups.end(), central_) !=
                 site.groups.end()) {
        int g = central_;
        for (const RobotId r : site.robots) {
          if (sim.group_of(r) != g) g = sim.merge(g, sim.group_of(r));
        }
        central_ = g;
      }
      // Other sites are pass-through crossings of the inward walkers.
    }
    drive(sim);
  }

 private:
  void absorb_colocated(Sim& sim) {
    const Scalar at = sim.position(sim.members(central_).front());
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      if (sim.group_of(r) != central_ && sim.position(r) == at) {
        central_ = sim.merge(central_, sim.group_of(r));
      }
    }
  }

  void build_targets(Sim& sim, const Scalar& center) {
    std::vector<RobotId> order;
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      if (sim.group_of(r) != central_) order.push_back(r);
    }
    std::sort(order.begin(), order.end(), [&](RobotId a, RobotId b) {
      const Scalar da = abs(sim.position(a) - center);
      const Scalar db = abs(sim.position(b) - center);
      if (da != db) return da < db;
      return a < b;
    });
    targets_ = std::move(order);
    next_ = 0;
  }

  void drive(Sim& sim) {
    if (sim.all_colocated()) return;
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      if (central_ >= 0 && sim.group_of(r) == central_) continue;
      if (role_[r] != 0) sim.set_velocity(sim.group_of(r), role_[r] < 0 ? 1 : -1);
    }
    if (central_ < 0) return;
    while (next_ < targets_.size() && sim.group_of(targets_[next_]) == central_) ++next_;
    if (next_ == targets_.size()) return;
    const Scalar to_target =
        sim.position(targets_[next_]) - sim.position(sim.members(central_).front());
    sim.set_velocity(central_, to_target.sign());
  }

  Configuration config_;
  int f_;
  std::vector<int> role_;  // -1 left walker, +1 right walker, 0 initial center
  int central_ = -1;
  std::vector<RobotId> targets_;
  std::size_t next_ = 0;
};

// Three-group rendezvous: outer blocks walk inward and stick to their
// walker, the middle splits by half-interval, the two walkers trace their
// visit sequences and fuse into one group that finishes the sweep.
class ThreeGroupController : public Controller {
 public:
  enum Role { kLeftBlock, kMidLeft, kMidRight, kRightBlock, kWalkerLeft, kWalkerRight };

  ThreeGroupController(const Configuration& config, const PartitionSpec& spec)
      : config_(config), spec_(spec) {}

  void start(Sim& sim) override {
    const int n = sim.robot_count();
    role_.assign(n, kLeftBlock);
    const int mid_lo = spec_.size_left;
    const int mid_hi = spec_.size_left + spec_.size_mid;  // one past
    const RobotId walker_l = config_.id_at_rank(mid_lo);
    const RobotId walker_r = config_.id_at_rank(mid_hi - 1);
    const Scalar ml = config_.position_of(walker_l);
    const Scalar mr = config_.position_of(walker_r);
    const Scalar mid = (ml + mr) / Scalar(2);
    for (int rank = 0; rank < n; ++rank) {
      const RobotId id = config_.id_at_rank(rank);
      if (rank < mid_lo) {
        role_[id] = kLeftBlock;
      } else if (rank >= mid_hi) {
        role_[id] = kRightBlock;
      } else if (id == walker_l) {
        role_[id] = kWalkerLeft;
      } else if (id == walker_r) {
        role_[id] = kWalkerRight;
      } else {
        role_[id] = config_.position_of(id) < mid ? kMidLeft : kMidRight;
      }
    }
    group_l_ = sim.group_of(walker_l);
    group_r_ = sim.group_of(walker_r);
    seq_l_ = sequence_by_distance(sim, walker_l, ml);
    seq_r_ = sequence_by_distance(sim, walker_r, mr);
    consumed_l_.assign(n, false);
    consumed_r_.assign(n, false);

    // t = 0 sticking fixpoint.
    Batch initial;
    initial.time = Scalar(0);
    for (RobotId r = 0; r < n; ++r) {
      MeetSite site;
      site.position = sim.position(r);
      site.robots = {r};
      initial.sites.push_back(site);
    }
    apply_sticks(sim, initial, /*synthetic=*/true);
    drive(sim);
  }

  std::optional<Scalar> next_boundary(const Sim&) override { return std::nullopt; }

  void react(Sim& sim, const Batch& batch) override {
    apply_sticks(sim, batch, /*synthetic=*/false);
    drive(sim);
  }

 private:
  bool targets_left(Role r) const { return r == kLeftBlock || r == kMidLeft; }
  bool targets_right(Role r) const { return r == kRightBlock || r == kMidRight; }

  std::vector<RobotId> sequence_by_distance(const Sim& sim, RobotId self,
                                            const Scalar& from) const {
    std::vector<RobotId> order;
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      if (r != self) order.push_back(r);
    }
    std::sort(order.begin(), order.end(), [&](RobotId a, RobotId b) {
      const Scalar da = abs(sim.position(a) - from);
      const Scalar db = abs(sim.position(b) - from);
      if (da != db) return da < db;
      return a < b;
    });
    return order;
  }

  // Sticks and walker fusion. With `synthetic` the sites are the t = 0
  // positions and the position test replaces group-presence tests.
  void apply_sticks(Sim& sim, const Batch& batch, bool synthetic) {
    // Walker fusion first: it widens what the remaining robots stick to.
    if (!merged_) {
      const Scalar pl = sim.position(sim.members(group_l_).front());
      const Scalar pr = sim.position(sim.members(group_r_).front());
      if (pl == pr) fuse(sim, batch.time, pl);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (RobotId r = 0; r < sim.robot_count(); ++r) {
        const int g = sim.group_of(r);
        if (merged_) {
          if (g == central_) continue;
          if (sim.position(r) == sim.position(sim.members(central_).front()) &&
              (synthetic || in_batch(batch, r))) {
            central_ = sim.merge(central_, g);
            changed = true;
          }
          continue;
        }
        if (g == group_l_ || g == group_r_) continue;
        if (!synthetic && !in_batch(batch, r)) continue;
        const Role role = static_cast<Role>(role_[r]);
        if (targets_left(role) &&
            sim.position(r) == sim.position(sim.members(group_l_).front())) {
          group_l_ = sim.merge(group_l_, g);
          changed = true;
        } else if (targets_right(role) &&
                   sim.position(r) == sim.position(sim.members(group_r_).front())) {
          group_r_ = sim.merge(group_r_, g);
          changed = true;
        }
      }
    }
    // Record visits: anything standing with a walker right now counts as
    // seen by that walker, merged or not.
    mark_seen(sim);
  }

  void fuse(Sim& sim, const Scalar& when, const Scalar& where) {
    central_ = sim.merge(group_l_, group_r_);
    merged_ = true;
    std::vector<RobotId> order;
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      if (sim.group_of(r) != central_) order.push_back(r);
    }
    std::sort(order.begin(), order.end(), [&](RobotId a, RobotId b) {
      const Scalar da = abs(sim.position(a) - where);
      const Scalar db = abs(sim.position(b) - where);
      if (da != db) return da < db;
      return a < b;
    });
    seq_ = std::move(order);
    idx_ = 0;
    (void)when;
  }

  void mark_seen(const Sim& sim) {
    if (merged_) return;  // post-fusion every visit absorbs, nothing to mark
    const Scalar& pl = sim.position(sim.members(group_l_).front());
    const Scalar& pr = sim.position(sim.members(group_r_).front());
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      if (sim.position(r) == pl) consumed_l_[r] = true;
      if (sim.position(r) == pr) consumed_r_[r] = true;
    }
  }

  static bool in_batch(const Batch& batch, RobotId r) {
    for (const MeetSite& site : batch.sites) {
      if (std::binary_search(site.robots.begin(), site.robots.end(), r)) return true;
    }
    return false;
  }

  void drive(Sim& sim) {
    if (sim.all_colocated()) return;
    for (RobotId r = 0; r < sim.robot_count(); ++r) {
      const int g = sim.group_of(r);
      if (merged_ ? g == central_ : (g == group_l_ || g == group_r_)) continue;
      const Role role = static_cast<Role>(role_[r]);
      switch (role) {
        case kLeftBlock:
          sim.set_velocity(g, 1);
          break;
        case kRightBlock:
          sim.set_velocity(g, -1);
          break;
        case kMidLeft:
        case kMidRight: {
          const int target = merged_ ? central_ : (role == kMidLeft ? group_l_ : group_r_);
          const Scalar d = sim.position(sim.members(target).front()) - sim.position(r);
          sim.set_velocity(g, d.sign());
          break;
        }
        default:
          throw InternalError("free walker outside its group");
      }
    }
    if (merged_) {
      // Post-fusion only absorption removes a robot from the sweep, so the
      // walker always aims at a live pursuer and closes with it.
      aim_walker(sim, central_, seq_, idx_, nullptr);
    } else {
      aim_walker(sim, group_l_, seq_l_, idx_l_, &consumed_l_);
      aim_walker(sim, group_r_, seq_r_, idx_r_, &consumed_r_);
    }
  }

  void aim_walker(Sim& sim, int group, const std::vector<RobotId>& seq, std::size_t& idx,
                  const std::vector<bool>* consumed) {
    while (idx < seq.size()) {
      const RobotId entry = seq[idx];
      if (sim.group_of(entry) == group || (consumed && (*consumed)[entry])) {
        ++idx;
        continue;
      }
      break;
    }
    if (idx == seq.size()) {
      // The other walker is the only thing left; head for it until fusion.
      if (!merged_) {
        const int other = group == group_l_ ? group_r_ : group_l_;
        const Scalar d =
            sim.position(sim.members(other).front()) - sim.position(sim.members(group).front());
        sim.set_velocity(group, d.sign());
      }
      return;
    }
    const Scalar d =
        sim.position(sim.members(seq[idx]).front()) - sim.position(sim.members(group).front());
    sim.set_velocity(group, d.sign());
  }

  Configuration config_;
  PartitionSpec spec_;
  std::vector<int> role_;
  int group_l_ = -1;
  int group_r_ = -1;
  int central_ = -1;
  bool merged_ = false;
  std::vector<RobotId> seq_l_, seq_r_, seq_;
  std::size_t idx_l_ = 0, idx_r_ = 0, idx_ = 0;
  std::vector<bool> consumed_l_, consumed_r_;
};

}  // namespace

std::vector<SsiPhase> ssi_phases(const Configuration& config) {
  struct Group {
    Scalar position;
    std::vector<RobotId> members;
  };
  std::vector<Group> groups;
  for (const auto& g : merge_colocated(config).groups) {
    groups.push_back({config.position_of(g.front()), g});
  }
  std::vector<SsiPhase> phases;
  while (groups.size() > 1) {
    std::size_t best = 0;
    Scalar best_gap = groups[1].position - groups[0].position;
    for (std::size_t i = 1; i + 1 < groups.size(); ++i) {
      const Scalar g = groups[i + 1].position - groups[i].position;
      if (g < best_gap) {
        best_gap = g;
        best = i;
      }
    }
    const Scalar half = best_gap / Scalar(2);
    phases.push_back({groups[best].members, groups[best + 1].members, best_gap, half});
    for (std::size_t i = 0; i <= best; ++i) groups[i].position += half;
    for (std::size_t i = best + 1; i < groups.size(); ++i) groups[i].position -= half;
    auto& left = groups[best];
    auto& right = groups[best + 1];
    left.members.insert(left.members.end(), right.members.begin(), right.members.end());
    std::sort(left.members.begin(), left.members.end());
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  }
  return phases;
}

Plan ssi_plan(const Configuration& config) {
  SsiController controller;
  return run_kernel(config, controller);
}

Plan doubling_plan(const Configuration& config) {
  for (const auto& e : config.entries()) {
    if (!e.position.is_integer()) {
      throw PreconditionError("doubling requires integer positions, got " + e.position.str());
    }
  }
  DoublingController controller(config);
  return run_kernel(config, controller);
}

namespace {

Plan scale_plan_down(const Plan& plan, const Scalar& factor, Configuration config) {
  Plan out;
  out.config = std::move(config);
  out.all_gather_time = plan.all_gather_time * factor;
  for (const Trajectory& traj : plan.trajectories) {
    std::vector<Breakpoint> pts;
    pts.reserve(traj.breakpoints().size());
    for (const Breakpoint& p : traj.breakpoints()) {
      pts.push_back({p.t * factor, p.x * factor});
    }
    out.trajectories.emplace_back(std::move(pts));
  }
  for (const MeetEvent& e : plan.events) {
    out.events.push_back({e.time * factor, e.position * factor, e.robots});
  }
  for (const Scalar& t : plan.schedule_times) out.schedule_times.push_back(t * factor);
  return out;
}

}  // namespace

Plan scaled_doubling_plan(const Configuration& config, const ScaledDoublingParams& params) {
  if (!(params.epsilon > Scalar(0))) {
    throw PreconditionError("epsilon must be positive");
  }
  BigInt q = 1;
  for (const auto& e : config.entries()) {
    if (!e.position.is_rational()) {
      throw PreconditionError("scaled doubling requires rational positions, got " +
                              e.position.str());
    }
    const BigInt den = denominator(e.position.a());
    q = q / gcd(q, den) * den;
  }
  std::vector<ConfigEntry> scaled;
  scaled.reserve(config.entries().size());
  for (const auto& e : config.entries()) {
    scaled.push_back({e.id, e.position * Scalar(Rational(q))});
  }
  const Plan plan = doubling_plan(Configuration::from_entries(std::move(scaled)));
  return scale_plan_down(plan, Scalar(1) / Scalar(Rational(q)), config);
}

Plan mtc_plan(const Configuration& config, int f) {
  const int n = config.size();
  if (n < 3) throw PreconditionError("mtc requires n >= 3");
  if (f < 0 || 2 * f > n - 1) {
    throw PreconditionError("mtc requires f <= (n-1)/2, got f=" + std::to_string(f) +
                            " with n=" + std::to_string(n));
  }
  MtcController controller(config, f);
  return run_kernel(config, controller);
}

PartitionSpec three_group_partition(int n) {
  if (n < 9) throw PreconditionError("three-group split requires n >= 9; use ssi below that");
  const BigInt k_big = floor_rational(Rational(n, 6) - Rational(2, 3));
  const int k = static_cast<int>(k_big);
  PartitionSpec spec;
  spec.k = k;
  spec.size_left = n / 2 - k - 1;
  spec.size_mid = 2 * k + 2;
  spec.size_right = (n + 1) / 2 - k - 1;
  if (spec.size_left < 1 || spec.size_mid < 2 || spec.size_right < 1 ||
      spec.size_left + spec.size_mid + spec.size_right != n) {
    throw InternalError("three-group sizes are inconsistent");
  }
  return spec;
}

PartitionSpec three_group_partition(const Configuration& config) {
  PartitionSpec spec = three_group_partition(config.size());
  spec.m_left = config.position_of(config.id_at_rank(spec.size_left));
  spec.m_right = config.position_of(config.id_at_rank(spec.size_left + spec.size_mid - 1));
  return spec;
}

Plan three_group_plan(const Configuration& config, int f) {
  const int n = config.size();
  if (n < 9) {
    throw PreconditionError("three-group rendezvous requires n >= 9; use ssi for n <= 8");
  }
  if (f < 0 || 3 * f >= 2 * (n - 1)) {
    throw PreconditionError("three-group rendezvous requires f < 2(n-1)/3; use ssi instead");
  }
  ThreeGroupController controller(config, three_group_partition(config));
  return run_kernel(config, controller);
}

StrategyKind parse_strategy(const std::string& name) {
  if (name == "ssi") return StrategyKind::ssi;
  if (name == "doubling") return StrategyKind::doubling;
  if (name == "scaled_doubling") return StrategyKind::scaled_doubling;
  if (name == "mtc") return StrategyKind::mtc;
  if (name == "three_group") return StrategyKind::three_group;
  if (name == "frr") return StrategyKind::frr;
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected ssi, doubling, scaled_doubling, mtc, three_group or frr)");
}

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::ssi: return "ssi";
    case StrategyKind::doubling: return "doubling";
    case StrategyKind::scaled_doubling: return "scaled_doubling";
    case StrategyKind::mtc: return "mtc";
    case StrategyKind::three_group: return "three_group";
    case StrategyKind::frr: return "frr";
  }
  throw InternalError("bad strategy kind");
}

Plan make_plan(StrategyKind kind, const Configuration& config, const StrategyParams& params) {
  switch (kind) {
    case StrategyKind::ssi:
      return ssi_plan(config);
    case StrategyKind::doubling:
      return doubling_plan(config);
    case StrategyKind::scaled_doubling: {
      ScaledDoublingParams p;
      if (params.epsilon) p.epsilon = *params.epsilon;
      return scaled_doubling_plan(config, p);
    }
    case StrategyKind::mtc:
      return mtc_plan(config, params.f);
    case StrategyKind::three_group:
      return three_group_plan(config, params.f);
    case StrategyKind::frr:
      return frr_plan(config);
  }
  throw InternalError("bad strategy kind");
}

}  // namespace linerdv
