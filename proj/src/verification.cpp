#include "linerdv/verification.hpp"

#include <chrono>
#include <functional>

namespace linerdv {

namespace {

struct Audit {
  long plans = 0;
  long violations = 0;
};

// Per-item scratch shared by the criterion runners.
struct ItemLog {
  std::vector<std::string> errors;
  std::vector<long> plans;
  std::vector<long> violations;

  explicit ItemLog(int count) : errors(count), plans(count, 0), violations(count, 0) {}

  void validate(int item, const Plan& plan) {
    ++plans[item];
    violations[item] += static_cast<long>(validate_plan(plan).violations.size());
  }

  int failures(std::string& first) const {
    int count = 0;
    for (const auto& e : errors) {
      if (e.empty()) continue;
      if (count == 0) first = e;
      ++count;
    }
    return count;
  }

  void accumulate(Audit& audit) const {
    for (const long p : plans) audit.plans += p;
    for (const long v : violations) audit.violations += v;
  }
};

void run_items(int count, bool parallel, ItemLog& log,
               const std::function<void(int)>& body) {
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (const std::exception& e) {
      log.errors[i] = e.what();
    }
  }
}

std::uint64_t mix_seed(std::uint64_t base, int a, int b, int c) {
  std::uint64_t s = base;
  s = s * 1000003 + static_cast<std::uint64_t>(a);
  s = s * 1000003 + static_cast<std::uint64_t>(b);
  s = s * 1000003 + static_cast<std::uint64_t>(c);
  return s;
}

CriterionResult finish(const std::string& name, const ItemLog& log, Audit& audit,
                       std::string detail_ok,
                       std::chrono::steady_clock::time_point started) {
  CriterionResult result;
  result.name = name;
  std::string first;
  const int failures = log.failures(first);
  result.pass = failures == 0;
  result.detail = result.pass
                      ? std::move(detail_ok)
                      : std::to_string(failures) + " failing items; first: " + first;
  log.accumulate(audit);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

CriterionResult c01_ssi_bound(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Item {
    int n;
    int i;
  };
  std::vector<Item> items;
  for (int n = 3; n <= 7; ++n) {
    for (int i = 0; i < 200; ++i) items.push_back({n, i});
  }
  ItemLog log(static_cast<int>(items.size()));
  long checks = 0;
  run_items(static_cast<int>(items.size()), opt.parallel, log, [&](int idx) {
    const auto [n, i] = items[idx];
    const Configuration config = random_config(mix_seed(opt.base_seed, 1, n, i), n, 6, 12);
    const Plan plan = ssi_plan(config);
    log.validate(idx, plan);
    for (int f = 0; f <= n - 2; ++f) {
      const CrReport report =
          worst_case_cr_serial(plan, make_request(config, f, EvalMode::at_most_f));
      if (!(report.worst <= Scalar(f + 1))) {
        throw InternalError("ssi exceeded f+1 at n=" + std::to_string(n) +
                            " f=" + std::to_string(f) + ": " + report.worst.str());
      }
#pragma omp atomic
      ++checks;
    }
  });
  return finish("ssi_bound", log, audit,
                std::to_string(checks) + " bound checks over " + std::to_string(items.size()) +
                    " configurations stayed within f+1",
                t0);
}

CriterionResult c02_ssi_tightness(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  ItemLog log(2);
  std::string values;
  run_items(2, false, log, [&](int idx) {
    const int n = idx == 0 ? 4 : 5;
    const int f = idx == 0 ? 2 : 3;
    const Scalar expected = idx == 0 ? Scalar(Rational(31, 11)) : Scalar(Rational(41, 11));
    const Configuration config = ssi_tightness_config(n, f, Scalar(Rational(1, 10)));
    const Plan plan = ssi_plan(config);
    log.validate(idx, plan);
    const CrReport report =
        worst_case_cr_serial(plan, make_request(config, f, EvalMode::at_most_f));
    if (report.worst != expected) {
      throw InternalError("tightness value is " + report.worst.str() + ", expected " +
                          expected.str());
    }
    if (idx == 0) values = "worst_cr = " + report.worst.str() + " (" + report.worst.decimal() + ")";
  });
  (void)opt;
  return finish("ssi_tightness", log, audit,
                "n=4,f=2 gives 31/11 and n=5,f=3 gives 41/11 exactly; " + values, t0);
}

CriterionResult c03_doubling_pairs(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  const int kConfigs = 200;
  ItemLog log(kConfigs);
  long checks = 0;
  run_items(kConfigs, opt.parallel, log, [&](int i) {
    const int n = 2 + i % 7;
    const Configuration config =
        random_integer_config(mix_seed(opt.base_seed, 3, n, i), n, -50, 50);
    const Plan plan = doubling_plan(config);
    log.validate(i, plan);
    for (RobotId a = 0; a < n; ++a) {
      for (RobotId b = a + 1; b < n; ++b) {
        const Scalar d = abs(config.position_of(a) - config.position_of(b));
        const auto meet = first_meet_time(plan.trajectories[a], plan.trajectories[b]);
        if (!meet) throw InternalError("pair never meets");
        if (!(*meet <= Scalar(6) * d)) {
          throw InternalError("pair (" + std::to_string(a) + "," + std::to_string(b) +
                              ") met at " + meet->str() + " > 6*" + d.str());
        }
#pragma omp atomic
        ++checks;
      }
    }
  });
  return finish("doubling_pair_bound", log, audit,
                std::to_string(checks) + " pair meetings within 6x their distance", t0);
}

CriterionResult c04_scaled_doubling(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  const int kConfigs = 200;
  ItemLog log(kConfigs);
  run_items(kConfigs, opt.parallel, log, [&](int i) {
    const int n = 2 + i % 7;
    const Configuration config = random_config(mix_seed(opt.base_seed, 4, n, i), n, 6, 12);
    const Plan plan = scaled_doubling_plan(config);
    log.validate(i, plan);
    const CrReport report =
        worst_case_cr_serial(plan, make_request(config, n - 2, EvalMode::at_most_f));
    if (!(report.worst <= Scalar(12))) {
      throw InternalError("scaled doubling exceeded 12: " + report.worst.str());
    }
  });
  return finish("scaled_doubling_bound", log, audit,
                std::to_string(kConfigs) + " rational configurations stayed within 12", t0);
}

CriterionResult c05_mtc(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Item {
    int n;
    int i;
  };
  std::vector<Item> items;
  for (int n = 3; n <= 9; ++n) {
    for (int i = 0; i < 100; ++i) items.push_back({n, i});
  }
  ItemLog log(static_cast<int>(items.size()) + 1);
  run_items(static_cast<int>(items.size()), opt.parallel, log, [&](int idx) {
    const auto [n, i] = items[idx];
    const Configuration config = random_config(mix_seed(opt.base_seed, 5, n, i), n, 6, 12);
    for (int f = 0; 2 * f <= n - 1; ++f) {
      const Plan plan = mtc_plan(config, f);
      log.validate(idx, plan);
      const CrReport report =
          worst_case_cr_serial(plan, make_request(config, f, EvalMode::at_most_f));
      if (!(report.worst <= Scalar(2))) {
        throw InternalError("mtc exceeded 2 at n=" + std::to_string(n) +
                            " f=" + std::to_string(f) + ": " + report.worst.str());
      }
    }
  });
  // The three-robot instance attains the bound exactly.
  std::string margin_note;
  try {
    const Configuration config =
        Configuration::from_positions({Scalar(0), Scalar(1), Scalar(2)});
    const Plan plan = mtc_plan(config, 1);
    log.validate(static_cast<int>(items.size()), plan);
    const CrReport report =
        worst_case_cr_serial(plan, make_request(config, 1, EvalMode::at_most_f));
    if (report.worst != Scalar(2)) {
      throw InternalError("expected worst exactly 2, got " + report.worst.str());
    }
    margin_note = "; {0,1,2} with f=1 attains 2 exactly";
  } catch (const std::exception& e) {
    log.errors.back() = e.what();
  }
  return finish("mtc_bound", log, audit,
                std::to_string(items.size()) + " configurations stayed within 2" + margin_note,
                t0);
}

CriterionResult c06_three_group(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Item {
    int n;
    int f;
    int i;
  };
  std::vector<Item> items;
  for (int n = 9; n <= 12; ++n) {
    for (int f = 0; 3 * f < 2 * (n - 1); ++f) {
      for (int i = 0; i < 25; ++i) items.push_back({n, f, i});
    }
  }
  ItemLog log(static_cast<int>(items.size()));
  long subsets = 0;
  run_items(static_cast<int>(items.size()), opt.parallel, log, [&](int idx) {
    const auto [n, f, i] = items[idx];
    const Configuration config =
        random_config(mix_seed(opt.base_seed, 6, n, f * 100 + i), n, 4, 16);
    const Plan plan = three_group_plan(config, f);
    log.validate(idx, plan);
    const CrReport report =
        worst_case_cr_serial(plan, make_request(config, f, EvalMode::at_most_f));
    if (!(report.worst <= Scalar(5))) {
      throw InternalError("three-group exceeded 5 at n=" + std::to_string(n) +
                          " f=" + std::to_string(f) + ": " + report.worst.str());
    }
#pragma omp atomic
    subsets += static_cast<long>(report.rows.size());
  });
  return finish("three_group_bound", log, audit,
                std::to_string(subsets) + " fault subsets evaluated within ratio 5", t0);
}

// The two-groups-alive property of the three-way split, checked over every
// subset the fault budget admits. This fails, honestly, at n = 9 with
// f = 5: the split sizes are (3, 2, 4), so the five leftmost robots cover
// the left and middle blocks entirely and leave only the right block
// alive. The admissible budget 3f < 2(n-1) allows f = 5 there, so the
// property as claimed does not hold at that boundary cell; see the
// decisions ledger for the full analysis.
CriterionResult c06b_three_group_partition(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Item {
    int n;
    int f;
  };
  std::vector<Item> items;
  for (int n = 9; n <= 12; ++n) {
    for (int f = 0; 3 * f < 2 * (n - 1); ++f) items.push_back({n, f});
  }
  ItemLog log(static_cast<int>(items.size()));
  long subsets = 0;
  run_items(static_cast<int>(items.size()), opt.parallel, log, [&](int idx) {
    const auto [n, f] = items[idx];
    const PartitionSpec spec = three_group_partition(n);
    // Membership is positional, so the property depends only on (n, f);
    // exhaust the subsets over ranks.
    std::uint32_t mask_left = 0, mask_mid = 0, mask_right = 0;
    for (int rank = 0; rank < n; ++rank) {
      const std::uint32_t bit = 1u << rank;
      if (rank < spec.size_left) mask_left |= bit;
      else if (rank < spec.size_left + spec.size_mid) mask_mid |= bit;
      else mask_right |= bit;
    }
    const std::uint32_t all = (1u << n) - 1;
    for (const FaultSet& faults : enumerate_fault_sets(n, f, EvalMode::at_most_f)) {
      std::uint32_t faulty = 0;
      for (const RobotId rank : faults.ids) faulty |= 1u << rank;
      const std::uint32_t alive = all & ~faulty;
      const int groups_alive = ((alive & mask_left) != 0) + ((alive & mask_mid) != 0) +
                               ((alive & mask_right) != 0);
      if (groups_alive < 2) {
        throw InternalError(
            "fault set leaves fewer than two groups alive at n=" + std::to_string(n) +
            " f=" + std::to_string(f) + " (split " + std::to_string(spec.size_left) + "+" +
            std::to_string(spec.size_mid) + "+" + std::to_string(spec.size_right) + ")");
      }
#pragma omp atomic
      ++subsets;
    }
  });
  (void)opt;
  return finish("three_group_partition", log, audit,
                std::to_string(subsets) + " fault subsets leave two groups alive", t0);
}

CriterionResult c07_frr_optimality(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  const int density = 40;
  std::vector<std::pair<Scalar, Scalar>> pts;
  for (int p = 0; p <= density; ++p) {
    for (int q = 0; q <= std::min(p, density - p); ++q) {
      pts.emplace_back(Scalar(Rational(p, density)), Scalar(Rational(q, density)));
    }
  }
  const Scalar bound = Scalar(1) + phi();
  ItemLog log(static_cast<int>(pts.size()) + 1);
  run_items(static_cast<int>(pts.size()), opt.parallel, log, [&](int idx) {
    const auto& [x, y] = pts[idx];
    const Configuration config =
        Configuration::from_positions({Scalar(0), x, Scalar(1) - y, Scalar(1)});
    const Plan plan = frr_plan(config);
    log.validate(idx, plan);
    const CrReport report =
        worst_case_cr_serial(plan, make_request(config, 2, EvalMode::exactly_f));
    if (!(report.worst <= bound)) {
      throw InternalError("worst ratio " + report.worst.str() + " above 1+phi at (" + x.str() +
                          "," + y.str() + ")");
    }
  });
  // The golden instance attains the bound exactly.
  std::string golden_note;
  try {
    const auto [gx, gy] = golden_point();
    const Configuration config =
        Configuration::from_positions({Scalar(0), gx, Scalar(1) - gy, Scalar(1)});
    const Plan plan = frr_plan(config);
    log.validate(static_cast<int>(pts.size()), plan);
    const CrReport report =
        worst_case_cr_serial(plan, make_request(config, 2, EvalMode::exactly_f));
    if (report.worst != bound) {
      throw InternalError("golden point worst is " + report.worst.str() + ", expected 1+phi");
    }
    golden_note = "golden point worst_cr = " + report.worst.str() + " (" +
                  report.worst.decimal() + "), pass";
  } catch (const std::exception& e) {
    log.errors.back() = e.what();
  }
  return finish("frr_optimality", log, audit,
                std::to_string(pts.size()) + " grid points within 1+phi; " + golden_note, t0);
}

CriterionResult c08_table_agreement(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  const int density = 40;
  std::vector<std::pair<Scalar, Scalar>> pts;
  for (int p = 0; p <= density; ++p) {
    for (int q = 0; q <= std::min(p, density - p); ++q) {
      pts.emplace_back(Scalar(Rational(p, density)), Scalar(Rational(q, density)));
    }
  }
  ItemLog log(static_cast<int>(pts.size()));
  long checks = 0;
  run_items(static_cast<int>(pts.size()), opt.parallel, log, [&](int idx) {
    const auto& [x, y] = pts[idx];
    const FourConfig fc = four_config(x, y);
    for (int case_id = 1; case_id <= 6; ++case_id) {
      const Plan plan = case_plan(case_id, fc);
      log.validate(idx, plan);
      // With a collapsed (zero-duration) phase the meeting order
      // degenerates and pairs may co-locate ahead of the generic
      // schedule; there the column only bounds the simulation.
      bool generic = true;
      for (const Scalar& d : case_phase_durations(case_id, x, y)) {
        generic = generic && !d.is_zero();
      }
      for (const FourPair pair : kFourPairs) {
        const auto roles = pair_roles(pair);
        const std::vector<RobotId> ids = {roles[0], roles[1]};
        const Scalar d = diameter(plan.config, ids);
        const Scalar gather = gather_time(plan, ids);
        if (d.is_zero()) {
          if (!gather.is_zero()) {
            throw InternalError("co-located pair gathered late in case " +
                                std::to_string(case_id));
          }
          continue;  // degenerate pair; ratio is 1 by policy
        }
        const Scalar simulated = Scalar(2) * gather / d;
        const CrValue formula = case_pair_cr(case_id, pair, x, y);
        const bool optimal = case_pair_optimal(case_id, pair);
        bool match;
        if (optimal) {
          match = simulated == Scalar(1);
        } else if (generic) {
          match = !formula.infinite && simulated == formula.value;
        } else {
          match = Scalar(1) <= simulated &&
                  (formula.infinite || simulated <= formula.value);
        }
        if (!match) {
          throw InternalError("case " + std::to_string(case_id) + " pair " + pair_name(pair) +
                              " at (" + x.str() + "," + y.str() + "): simulated " +
                              simulated.str() + " vs table " + formula.str());
        }
#pragma omp atomic
        ++checks;
      }
    }
  });
  return finish("table_agreement", log, audit,
                std::to_string(checks) + " pair ratios match the case table exactly", t0);
}

CriterionResult c09_lemma_sweeps(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  ItemLog log(1);
  const LemmaSweepReport report =
      opt.parallel ? verify_lemmas(100) : verify_lemmas_serial(100);
  if (!report.ok()) log.errors[0] = report.violations.front();
  return finish("lemma_sweeps", log, audit,
                std::to_string(report.points) +
                    " grid points satisfy the dominations, coverage and region soundness",
                t0);
}

CriterionResult c10_lower_bound(const VerificationOptions& opt, Audit& audit) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Item {
    int n;
    int f;
    StrategyKind kind;
  };
  std::vector<Item> items;
  for (int n = 3; n <= 6; ++n) {
    for (int f = 1; f <= 2 && f <= n - 2; ++f) {
      items.push_back({n, f, StrategyKind::ssi});
      items.push_back({n, f, StrategyKind::doubling});
      items.push_back({n, f, StrategyKind::scaled_doubling});
      if (2 * f <= n - 1) items.push_back({n, f, StrategyKind::mtc});
      if (n == 4 && f == 2) items.push_back({n, f, StrategyKind::frr});
    }
  }
  ItemLog log(static_cast<int>(items.size()));
  run_items(static_cast<int>(items.size()), opt.parallel, log, [&](int idx) {
    const auto [n, f, kind] = items[idx];
    const Configuration config = lower_bound_witness(n, f);
    StrategyParams params;
    params.f = f;
    const Plan plan = make_plan(kind, config, params);
    log.validate(idx, plan);
    const EvalMode mode =
        kind == StrategyKind::frr ? EvalMode::exactly_f : EvalMode::at_most_f;
    const CrReport report = worst_case_cr_serial(plan, make_request(config, f, mode));
    if (!(report.worst >= Scalar(2))) {
      throw InternalError("witness ratio below 2 for " + strategy_name(kind) +
                          " at n=" + std::to_string(n) + " f=" + std::to_string(f) + ": " +
                          report.worst.str());
    }
  });
  return finish("lower_bound_witness", log, audit,
                std::to_string(items.size()) + " strategy/witness pairs at ratio >= 2", t0);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerificationOptions& options) {
  Audit audit;
  std::vector<CriterionResult> results;
  results.push_back(c01_ssi_bound(options, audit));
  results.push_back(c02_ssi_tightness(options, audit));
  results.push_back(c03_doubling_pairs(options, audit));
  results.push_back(c04_scaled_doubling(options, audit));
  results.push_back(c05_mtc(options, audit));
  results.push_back(c06_three_group(options, audit));
  results.push_back(c06b_three_group_partition(options, audit));
  results.push_back(c07_frr_optimality(options, audit));
  results.push_back(c08_table_agreement(options, audit));
  results.push_back(c09_lemma_sweeps(options, audit));
  results.push_back(c10_lower_bound(options, audit));

  CriterionResult validator;
  validator.name = "plan_validator";
  validator.pass = audit.violations == 0 && audit.plans > 0;
  validator.detail = std::to_string(audit.plans) + " plans validated, " +
                     std::to_string(audit.violations) + " movement-rule violations";
  results.push_back(validator);
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace linerdv
