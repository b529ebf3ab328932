#include "linerdv/evaluation.hpp"

#include <algorithm>
#include <random>

namespace linerdv {

EvalRequest make_request(Configuration config, int f, EvalMode mode) {
  const int n = config.size();
  if (f < 0 || f > n - 2) {
    throw ConfigError("fault budget must satisfy 0 <= f <= n-2, got f=" + std::to_string(f) +
                      " with n=" + std::to_string(n));
  }
  return EvalRequest{std::move(config), f, mode};
}

std::vector<RobotId> complement_of(const Configuration& config, const FaultSet& faults) {
  std::vector<RobotId> out;
  out.reserve(config.size() - faults.ids.size());
  for (RobotId id = 0; id < config.size(); ++id) {
    if (!std::binary_search(faults.ids.begin(), faults.ids.end(), id)) out.push_back(id);
  }
  return out;
}

Scalar offline_time(const Configuration& config, std::span<const RobotId> nonfaulty) {
  return diameter(config, nonfaulty) / Scalar(2);
}

CrOutcome competitive_ratio(const Plan& plan, const FaultSet& faults) {
  const std::vector<RobotId> nonfaulty = complement_of(plan.config, faults);
  if (nonfaulty.empty()) throw PreconditionError("fault set leaves no robot");
  CrOutcome out;
  out.diameter = diameter(plan.config, nonfaulty);
  out.gather = gather_time(plan, nonfaulty);
  if (out.diameter.is_zero()) {
    out.defined = out.gather.is_zero();
    if (out.defined) out.ratio = Scalar(1);
    return out;
  }
  out.ratio = Scalar(2) * out.gather / out.diameter;
  return out;
}

std::vector<FaultSet> enumerate_fault_sets(int n, int f, EvalMode mode) {
  if (n > 24) throw PreconditionError("exhaustive enumeration is limited to n <= 24");
  std::vector<FaultSet> sets;
  const int lo = mode == EvalMode::exactly_f ? f : 0;
  for (int k = lo; k <= f; ++k) {
    std::vector<RobotId> pick(k);
    // Lexicographic k-combinations of 0..n-1.
    for (int i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      sets.push_back({pick});
      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (k == 0) continue;
  }
  return sets;
}

namespace {

// Positions of every robot at every candidate gather instant, shared by
// all subsets of one evaluation.
struct PlanGrid {
  std::vector<Scalar> times;               // 0, event times, all-gather
  std::vector<std::vector<Scalar>> pos;    // [time][robot]

  explicit PlanGrid(const Plan& plan) {
    times.push_back(Scalar(0));
    for (const MeetEvent& e : plan.events) times.push_back(e.time);
    times.push_back(plan.all_gather_time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    pos.resize(times.size());
    for (std::size_t t = 0; t < times.size(); ++t) {
      pos[t].reserve(plan.config.size());
      for (RobotId r = 0; r < plan.config.size(); ++r) {
        pos[t].push_back(plan.trajectories[r].position_at(times[t]));
      }
    }
  }

  // First instant at which the subset stands at one point.
  const Scalar& gather(std::span<const RobotId> subset) const {
    for (std::size_t t = 0; t < times.size(); ++t) {
      const Scalar& first = pos[t][subset[0]];
      bool together = true;
      for (std::size_t i = 1; i < subset.size(); ++i) {
        if (pos[t][subset[i]] != first) {
          together = false;
          break;
        }
      }
      if (together) return times[t];
    }
    throw InternalError("subset never gathers before the plan horizon");
  }
};

CrRow evaluate_row(const Plan& plan, const PlanGrid& grid, FaultSet faults) {
  CrRow row;
  const std::vector<RobotId> nonfaulty = complement_of(plan.config, faults);
  row.faults = std::move(faults);
  row.diameter = diameter(plan.config, nonfaulty);
  row.gather = nonfaulty.size() == 1 ? Scalar(0) : grid.gather(nonfaulty);
  if (row.diameter.is_zero()) {
    if (row.gather.is_zero()) {
      row.ratio = Scalar(1);
    } else {
      row.skipped = true;
    }
    return row;
  }
  row.ratio = Scalar(2) * row.gather / row.diameter;
  return row;
}

CrReport run_evaluation(const Plan& plan, const EvalRequest& request, bool parallel) {
  std::vector<FaultSet> sets =
      enumerate_fault_sets(plan.config.size(), request.f, request.mode);
  CrReport report;
  report.rows.resize(sets.size());
  const PlanGrid grid(plan);

  const int count = static_cast<int>(sets.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < count; ++i) {
      report.rows[i] = evaluate_row(plan, grid, std::move(sets[i]));
    }
  } else {
    for (int i = 0; i < count; ++i) {
      report.rows[i] = evaluate_row(plan, grid, std::move(sets[i]));
    }
  }

  for (int i = 0; i < count; ++i) {
    const CrRow& row = report.rows[i];
    if (row.skipped) {
      report.skipped_rows.push_back(i);
      continue;
    }
    if (report.worst_row < 0 || report.worst < row.ratio) {
      report.worst = row.ratio;
      report.worst_row = i;
    }
  }
  if (report.worst_row < 0) throw InternalError("every fault set was skipped");
  return report;
}

}  // namespace

CrReport worst_case_cr(const Plan& plan, const EvalRequest& request) {
  return run_evaluation(plan, request, true);
}

CrReport worst_case_cr_serial(const Plan& plan, const EvalRequest& request) {
  return run_evaluation(plan, request, false);
}

Scalar strategy_bound(StrategyKind kind, int f) {
  switch (kind) {
    case StrategyKind::ssi:
      return Scalar(f + 1);
    case StrategyKind::doubling:
    case StrategyKind::scaled_doubling:
      return Scalar(12);
    case StrategyKind::mtc:
      return Scalar(2);
    case StrategyKind::three_group:
      return Scalar(5);
    case StrategyKind::frr:
      return Scalar(1) + phi();
  }
  throw InternalError("bad strategy kind");
}

BoundCheckResult bound_check(StrategyKind kind, const EvalRequest& request,
                             const StrategyParams& params) {
  const int n = request.config.size();
  const int f = request.f;
  if (kind == StrategyKind::frr) {
    if (n != 4 || f != 2 || request.mode != EvalMode::exactly_f) {
      throw PreconditionError(
          "the four-robot bound holds for n = 4 with exactly two faults");
    }
  }
  StrategyParams effective = params;
  effective.f = f;
  BoundCheckResult result;
  result.strategy = kind;
  result.bound = strategy_bound(kind, f);
  const Plan plan = make_plan(kind, request.config, effective);
  result.report = worst_case_cr(plan, request);
  result.pass = result.report.worst <= result.bound;
  result.margin = result.bound - result.report.worst;
  return result;
}

Configuration lower_bound_witness(int n, int f) {
  if (n < 3 || f < 1 || f > n - 2) {
    throw PreconditionError("witness needs n >= 3 and 1 <= f <= n-2");
  }
  std::vector<Scalar> positions;
  positions.reserve(n);
  const int left = (f + 2) / 2;   // ceil((f+1)/2)
  const int right = (f + 1) / 2;  // floor((f+1)/2)
  for (int i = 0; i < left; ++i) positions.push_back(Scalar(-1));
  for (int i = 0; i < n - f - 1; ++i) positions.push_back(Scalar(0));
  for (int i = 0; i < right; ++i) positions.push_back(Scalar(1));
  return Configuration::from_positions(positions);
}

Configuration ssi_tightness_config(int n, int f, const Scalar& eps) {
  if (!(eps > Scalar(0))) throw PreconditionError("eps must be positive");
  if (f < 1 || f > n - 2) throw PreconditionError("need 1 <= f <= n-2");
  std::vector<Scalar> positions;
  positions.reserve(n);
  for (int i = 1; i <= f; ++i) positions.push_back(Scalar(i));
  positions.push_back(Scalar(f + 1));
  for (int i = 0; i < n - f - 1; ++i) positions.push_back(Scalar(f + 2) + eps);
  return Configuration::from_positions(positions);
}

Configuration random_config(std::uint64_t seed, int n, int max_denominator, int span,
                            bool distinct) {
  if (n < 2 || max_denominator < 1 || span < 1) {
    throw PreconditionError("bad random configuration parameters");
  }
  std::mt19937_64 rng(seed);
  std::vector<Scalar> positions;
  positions.reserve(n);
  while (static_cast<int>(positions.size()) < n) {
    const long long den =
        1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(max_denominator));
    const long long num =
        static_cast<long long>(rng() % static_cast<std::uint64_t>(span * den + 1));
    const Scalar p{Rational(num, den)};
    if (distinct && std::find(positions.begin(), positions.end(), p) != positions.end()) {
      continue;
    }
    positions.push_back(p);
  }
  std::sort(positions.begin(), positions.end());
  return Configuration::from_positions(positions);
}

Configuration random_integer_config(std::uint64_t seed, int n, long long lo, long long hi) {
  if (n < 2 || hi - lo + 1 < n) throw PreconditionError("range too small for distinct picks");
  std::mt19937_64 rng(seed);
  std::vector<Scalar> positions;
  positions.reserve(n);
  while (static_cast<int>(positions.size()) < n) {
    const long long v =
        lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    const Scalar p(v);
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) continue;
    positions.push_back(p);
  }
  std::sort(positions.begin(), positions.end());
  return Configuration::from_positions(positions);
}

namespace {

std::vector<std::pair<Scalar, Scalar>> domain_grid(int density) {
  if (density < 1) throw PreconditionError("grid density must be >= 1");
  std::vector<std::pair<Scalar, Scalar>> pts;
  for (int p = 0; p <= density; ++p) {
    for (int q = 0; q <= std::min(p, density - p); ++q) {
      pts.emplace_back(Scalar(Rational(p, density)), Scalar(Rational(q, density)));
    }
  }
  return pts;
}

void check_point(const Scalar& x, const Scalar& y, std::vector<std::string>& out) {
  const Scalar bound = Scalar(1) + phi();
  auto fail = [&](const std::string& what) {
    out.push_back("(" + x.str() + "," + y.str() + "): " + what);
  };
  if (!(case_cr(6, x, y) <= case_cr(1, x, y))) fail("f6 > f1");
  if (!(case_cr(4, x, y) <= case_cr(2, x, y))) fail("f4 > f2");
  bool covered = false;
  for (int i = 3; i <= 6; ++i) {
    const bool inside = region_contains(i, x, y);
    covered = covered || inside;
    const bool below = case_cr(i, x, y) <= CrValue::finite(bound);
    if (inside != below) {
      fail("region " + std::to_string(i) + " membership disagrees with the ratio test");
    }
  }
  if (!covered) fail("covered by no region");
}

SweepRow sweep_point(const Scalar& x, const Scalar& y) {
  const Configuration config =
      Configuration::from_positions({Scalar(0), x, Scalar(1) - y, Scalar(1)});
  const Plan plan = frr_plan(config);
  const CrReport report =
      worst_case_cr_serial(plan, make_request(config, 2, EvalMode::exactly_f));
  SweepRow row;
  row.x = x;
  row.y = y;
  row.case_id = select_case(x, y);
  row.worst_cr = report.worst;
  row.worst_faults = report.rows[report.worst_row].faults;
  return row;
}

LemmaSweepReport run_lemma_sweep(int density, bool parallel) {
  const auto pts = domain_grid(density);
  const int count = static_cast<int>(pts.size());
  std::vector<std::vector<std::string>> per_point(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 32)
    for (int i = 0; i < count; ++i) check_point(pts[i].first, pts[i].second, per_point[i]);
  } else {
    for (int i = 0; i < count; ++i) check_point(pts[i].first, pts[i].second, per_point[i]);
  }
  LemmaSweepReport report;
  report.points = count;
  for (auto& v : per_point) {
    for (auto& s : v) report.violations.push_back(std::move(s));
  }
  return report;
}

std::vector<SweepRow> run_frr_sweep(int density, bool parallel) {
  const auto pts = domain_grid(density);
  const int count = static_cast<int>(pts.size());
  std::vector<SweepRow> rows(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < count; ++i) rows[i] = sweep_point(pts[i].first, pts[i].second);
  } else {
    for (int i = 0; i < count; ++i) rows[i] = sweep_point(pts[i].first, pts[i].second);
  }
  return rows;
}

}  // namespace

LemmaSweepReport verify_lemmas(int density) { return run_lemma_sweep(density, true); }
LemmaSweepReport verify_lemmas_serial(int density) { return run_lemma_sweep(density, false); }

std::vector<SweepRow> frr_sweep(int density) { return run_frr_sweep(density, true); }
std::vector<SweepRow> frr_sweep_serial(int density) { return run_frr_sweep(density, false); }

}  // namespace linerdv
