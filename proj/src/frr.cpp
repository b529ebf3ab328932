#include "linerdv/frr.hpp"

#include <algorithm>

#include "linerdv/kernel.hpp"

namespace linerdv {

namespace {

const Scalar kOne(1);
const Scalar kTwo(2);

// 1/(1+phi) = (3 - sqrt5)/2 and phi/(1+phi) = (sqrt5 - 1)/2.
const Scalar kInvOnePlusPhi(Rational(3, 2), Rational(-1, 2));
const Scalar kPhiOverOnePlusPhi(Rational(-1, 2), Rational(1, 2));

}  // namespace

FourConfig four_config(Scalar x, Scalar y) {
  if (y.sign() < 0 || y > x || x > kOne || x + y > kOne) {
    throw PreconditionError("four-robot instance needs 0 <= y <= x <= 1 and x+y <= 1, got x=" +
                            x.str() + " y=" + y.str());
  }
  return FourConfig{std::move(x), std::move(y)};
}

std::pair<FourConfig, NormalizationMap> normalize4(const Configuration& config) {
  if (config.size() != 4) throw PreconditionError("normalization needs exactly 4 robots");
  const Scalar span = config.span();
  if (span.is_zero()) throw PreconditionError("all four robots are co-located (zero span)");

  std::array<RobotId, 4> sorted_ids;
  for (int rank = 0; rank < 4; ++rank) sorted_ids[rank] = config.id_at_rank(rank);
  const Scalar& lo = config.min_position();
  auto xi = [&](int rank) { return (config.position_of(sorted_ids[rank]) - lo) / span; };

  const Scalar raw_x = xi(1);
  const Scalar raw_y = kOne - xi(2);
  NormalizationMap map;
  map.shift = lo;
  map.scale = span;
  map.reflected = raw_x < raw_y;
  if (map.reflected) {
    map.role_to_id = {sorted_ids[3], sorted_ids[2], sorted_ids[1], sorted_ids[0]};
    return {four_config(raw_y, raw_x), map};
  }
  map.role_to_id = {sorted_ids[0], sorted_ids[1], sorted_ids[2], sorted_ids[3]};
  return {four_config(raw_x, raw_y), map};
}

std::array<int, 2> pair_roles(FourPair pair) {
  switch (pair) {
    case FourPair::ab: return {0, 1};
    case FourPair::ac: return {0, 2};
    case FourPair::ad: return {0, 3};
    case FourPair::bc: return {1, 2};
    case FourPair::bd: return {1, 3};
    case FourPair::cd: return {2, 3};
  }
  throw InternalError("bad pair");
}

std::string pair_name(FourPair pair) {
  static const char* names[] = {"ab", "ac", "ad", "bc", "bd", "cd"};
  return names[static_cast<int>(pair)];
}

namespace {

// Surviving-pair ratios per case, as numerator/denominator forms in (x,y).
// nullptr marks an optimal pair (ratio one).
struct Term {
  Scalar (*num)(const Scalar&, const Scalar&);
  Scalar (*den)(const Scalar&, const Scalar&);
};

Scalar f_one(const Scalar&, const Scalar&) { return kOne; }
Scalar f_x(const Scalar& x, const Scalar&) { return x; }
Scalar f_y(const Scalar&, const Scalar& y) { return y; }
Scalar f_1mx(const Scalar& x, const Scalar&) { return kOne - x; }
Scalar f_1my(const Scalar&, const Scalar& y) { return kOne - y; }
Scalar f_1mxmy(const Scalar& x, const Scalar& y) { return kOne - x - y; }

// Indexed [case-1][pair]; pairs in kFourPairs order ab,ac,ad,bc,bd,cd.
const Term* term_for(int case_id, FourPair pair) {
  static const Term kBc1 = {f_1my, f_1mxmy}, kBd = {f_one, f_1mx}, kCd = {f_one, f_y};
  static const Term kAb2 = {f_1my, f_x};
  static const Term kAc = {f_one, f_1my};
  static const Term kCd34 = {f_1mx, f_y};
  static const Term kAb46 = {f_one, f_x};
  static const Term kBc5 = {f_one, f_1mxmy};
  static const Term kBc6 = {f_1mx, f_1mxmy};

  static const std::array<std::array<const Term*, 6>, 6> kTable = {{
      // ab      ac      ad       bc      bd      cd
      {nullptr, nullptr, nullptr, &kBc1, &kBd, &kCd},     // case 1: ab, abc, abcd
      {&kAb2, nullptr, nullptr, nullptr, &kBd, &kCd},     // case 2: bc, abc, abcd
      {&kAb2, &kAc, nullptr, nullptr, &kBd, &kCd34},      // case 3: bc, ab & cd, abcd
      {&kAb46, &kAc, nullptr, nullptr, nullptr, &kCd34},  // case 4: bc, bcd, abcd
      {nullptr, &kAc, nullptr, &kBc5, &kBd, nullptr},     // case 5: cd, ab, abcd
      {&kAb46, &kAc, nullptr, &kBc6, nullptr, nullptr},   // case 6: cd, bcd, abcd
  }};
  if (case_id < 1 || case_id > 6) throw PreconditionError("case id must be in 1..6");
  return kTable[case_id - 1][static_cast<int>(pair)];
}

}  // namespace

bool case_pair_optimal(int case_id, FourPair pair) {
  return term_for(case_id, pair) == nullptr;
}

CrValue case_pair_cr(int case_id, FourPair pair, const Scalar& x, const Scalar& y) {
  const Term* term = term_for(case_id, pair);
  if (term == nullptr) return CrValue::finite(kOne);
  const Scalar den = term->den(x, y);
  if (den.is_zero()) {
    const Scalar num = term->num(x, y);
    // 0/0 is a pair that is co-located from the start; its ratio is 1 by
    // the degenerate-pair policy. Positive over zero is unbounded.
    return num.is_zero() ? CrValue::finite(kOne) : CrValue::inf();
  }
  return CrValue::finite(term->num(x, y) / den);
}

CrValue case_cr(int case_id, const Scalar& x, const Scalar& y) {
  CrValue worst = CrValue::finite(kOne);
  for (const FourPair pair : kFourPairs) {
    if (case_pair_optimal(case_id, pair)) continue;
    const CrValue v = case_pair_cr(case_id, pair, x, y);
    if (worst < v) worst = v;
  }
  return worst;
}

bool region_contains(int i, const Scalar& x, const Scalar& y) {
  switch (i) {
    case 3:
      return x <= kPhiOverOnePlusPhi && y >= (kOne - x) * kInvOnePlusPhi;
    case 4:
      return x >= kInvOnePlusPhi && y >= (kOne - x) * kInvOnePlusPhi;
    case 5:
      return x + y <= kPhiOverOnePlusPhi;
    case 6:
      return x >= kInvOnePlusPhi && y <= (kOne - x) * kPhiOverOnePlusPhi;
    default:
      throw PreconditionError("regions exist for cases 3..6 only");
  }
}

int select_case(const Scalar& x, const Scalar& y) {
  if (region_contains(3, x, y)) return 3;
  if (region_contains(4, x, y)) return 4;
  if (region_contains(5, x, y)) return 5;
  if (region_contains(6, x, y)) return 6;
  throw InternalError("point (" + x.str() + "," + y.str() +
                      ") lies in no region; coverage is violated");
}

namespace {

// Phase table: durations and per-role velocities {a, b, c, d}. Every case
// ends with all four at 1/2 at time 1/2.
struct CasePhase {
  Scalar duration;
  std::array<int, 4> vel;
};

std::vector<CasePhase> case_phases(int case_id, const Scalar& x, const Scalar& y) {
  const Scalar mid = kOne - x - y;
  switch (case_id) {
    case 1:
      return {{x / kTwo, {1, -1, -1, -1}},
              {mid / kTwo, {1, 1, -1, -1}},
              {y / kTwo, {1, 1, 1, -1}}};
    case 2:
      return {{mid / kTwo, {1, 1, -1, -1}},
              {x / kTwo, {1, -1, -1, -1}},
              {y / kTwo, {1, 1, 1, -1}}};
    case 3:
      return {{mid / kTwo, {1, 1, -1, -1}},
              {y / kTwo, {1, -1, 1, -1}},
              {(x - y) / kTwo, {1, -1, -1, -1}},
              {y / kTwo, {1, 1, -1, -1}}};
    case 4:
      return {{mid / kTwo, {1, 1, -1, -1}},
              {y / kTwo, {1, 1, 1, -1}},
              {x / kTwo, {1, -1, -1, -1}}};
    case 5:
      return {{y / kTwo, {1, -1, 1, -1}},
              {(x - y) / kTwo, {1, -1, -1, -1}},
              {(kOne - x) / kTwo, {1, 1, -1, -1}}};
    case 6:
      return {{y / kTwo, {1, 1, 1, -1}},
              {mid / kTwo, {1, 1, -1, -1}},
              {x / kTwo, {1, -1, -1, -1}}};
    default:
      throw PreconditionError("case id must be in 1..6");
  }
}

}  // namespace

std::vector<Scalar> case_phase_durations(int case_id, const Scalar& x, const Scalar& y) {
  std::vector<Scalar> out;
  for (const CasePhase& phase : case_phases(case_id, x, y)) out.push_back(phase.duration);
  return out;
}

Plan case_plan(int case_id, const FourConfig& fc) {
  const Scalar& x = fc.x;
  const Scalar& y = fc.y;
  const std::vector<CasePhase> phases = case_phases(case_id, x, y);

  std::vector<ScheduleController::Stage> stages;
  Scalar clock(0);
  for (const CasePhase& phase : phases) {
    if (phase.duration.sign() < 0) {
      throw PreconditionError("negative phase duration; four-robot invariants violated");
    }
    if (phase.duration.is_zero()) continue;
    clock += phase.duration;
    stages.push_back({clock, {phase.vel.begin(), phase.vel.end()}});
  }

  const Configuration normalized =
      Configuration::from_positions({Scalar(0), x, kOne - y, kOne});
  ScheduleController controller(std::move(stages));
  return run_kernel(normalized, controller);
}

namespace {

// Maps a normalized-coordinate plan back through the affine normalization.
Plan denormalize_plan(const Plan& plan, const NormalizationMap& map, Configuration config) {
  auto point = [&](const Scalar& xi) {
    return map.shift + map.scale * (map.reflected ? kOne - xi : xi);
  };
  Plan out;
  out.config = std::move(config);
  out.all_gather_time = plan.all_gather_time * map.scale;
  out.trajectories.resize(4);
  for (int role = 0; role < 4; ++role) {
    std::vector<Breakpoint> pts;
    pts.reserve(plan.trajectories[role].breakpoints().size());
    for (const Breakpoint& p : plan.trajectories[role].breakpoints()) {
      pts.push_back({p.t * map.scale, point(p.x)});
    }
    out.trajectories[map.role_to_id[role]] = Trajectory(std::move(pts));
  }
  for (const MeetEvent& e : plan.events) {
    MeetEvent mapped;
    mapped.time = e.time * map.scale;
    mapped.position = point(e.position);
    for (const RobotId role : e.robots) mapped.robots.push_back(map.role_to_id[role]);
    std::sort(mapped.robots.begin(), mapped.robots.end());
    out.events.push_back(std::move(mapped));
  }
  std::sort(out.events.begin(), out.events.end(), [](const MeetEvent& l, const MeetEvent& r) {
    if (l.time != r.time) return l.time < r.time;
    return l.position < r.position;
  });
  for (const Scalar& t : plan.schedule_times) out.schedule_times.push_back(t * map.scale);
  return out;
}

}  // namespace

Plan frr_plan(const Configuration& config) {
  const auto [fc, map] = normalize4(config);
  const int case_id = select_case(fc.x, fc.y);
  const Plan normalized = case_plan(case_id, fc);
  return denormalize_plan(normalized, map, config);
}

std::pair<Scalar, Scalar> golden_point() {
  // x = 1/(1+phi) = (3 - sqrt5)/2, y = 1/(phi(1+phi)) = sqrt5 - 2.
  return {Scalar(Rational(3, 2), Rational(-1, 2)), Scalar(Rational(-2), Rational(1))};
}

}  // namespace linerdv
