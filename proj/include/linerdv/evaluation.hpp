#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linerdv/frr.hpp"
#include "linerdv/line_model.hpp"
#include "linerdv/strategies.hpp"

namespace linerdv {

enum class EvalMode { exactly_f, at_most_f };

struct FaultSet {
  std::vector<RobotId> ids;  // sorted
};

struct EvalRequest {
  Configuration config;
  int f = 0;
  EvalMode mode = EvalMode::at_most_f;
};

EvalRequest make_request(Configuration config, int f, EvalMode mode = EvalMode::at_most_f);

// Ratio for one hypothesized fault set. A co-located surviving set (D = 0)
// has ratio 1 when it gathers immediately; the undefined case exists only
// as a guard against corrupt plans and is reported as skipped.
struct CrOutcome {
  bool defined = true;
  Scalar ratio;
  Scalar gather;
  Scalar diameter;
};

CrOutcome competitive_ratio(const Plan& plan, const FaultSet& faults);

struct CrRow {
  FaultSet faults;
  Scalar gather;
  Scalar diameter;
  bool skipped = false;
  Scalar ratio;  // valid iff !skipped
};

struct CrReport {
  std::vector<CrRow> rows;   // enumeration order: sizes ascending, lexicographic
  Scalar worst;              // max ratio over non-skipped rows
  int worst_row = -1;        // first argmax
  std::vector<int> skipped_rows;
};

// Exhaustive fault-subset evaluation. The parallel entry point fans the
// subsets across OpenMP workers; the serial one is the reference kept for
// testing and produces identical output.
CrReport worst_case_cr(const Plan& plan, const EvalRequest& request);
CrReport worst_case_cr_serial(const Plan& plan, const EvalRequest& request);

Scalar offline_time(const Configuration& config, std::span<const RobotId> nonfaulty);

// Enumerates fault subsets for a request (sizes ascending, lexicographic).
std::vector<FaultSet> enumerate_fault_sets(int n, int f, EvalMode mode);

struct BoundCheckResult {
  StrategyKind strategy;
  Scalar bound;
  bool pass = false;
  Scalar margin;  // bound - worst
  CrReport report;
};

// Generates the strategy's plan and compares its worst-case ratio against
// the proved bound, exactly. Throws PreconditionError when the request
// violates the bound's hypothesis.
BoundCheckResult bound_check(StrategyKind kind, const EvalRequest& request,
                             const StrategyParams& params = {});
Scalar strategy_bound(StrategyKind kind, int f);

// Three-cluster placement used by the factor-2 impossibility argument:
// ceil((f+1)/2) robots at -1, n-f-1 at 0, floor((f+1)/2) at 1.
Configuration lower_bound_witness(int n, int f);

// Placement on which the shrink strategy approaches its f+1 bound:
// intended-faulty robots at 1..f, one robot at f+1, the rest at f+2+eps.
Configuration ssi_tightness_config(int n, int f, const Scalar& eps);

// Deterministic pseudo-random sorted rational positions in [0, span] with
// denominators at most max_denominator.
Configuration random_config(std::uint64_t seed, int n, int max_denominator, int span,
                            bool distinct = true);

// Deterministic distinct integer positions in [lo, hi].
Configuration random_integer_config(std::uint64_t seed, int n, long long lo, long long hi);

struct LemmaSweepReport {
  int points = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Sweeps the rational grid (p/density, q/density) over the four-robot
// domain and checks the dominations f6 <= f1 and f4 <= f2, the region
// coverage, and the region soundness equivalences.
LemmaSweepReport verify_lemmas(int density);
LemmaSweepReport verify_lemmas_serial(int density);

struct SweepRow {
  Scalar x;
  Scalar y;
  int case_id;
  Scalar worst_cr;
  FaultSet worst_faults;
};

// Evaluates the four-robot plan at every grid point (exactly two faults).
std::vector<SweepRow> frr_sweep(int density);
std::vector<SweepRow> frr_sweep_serial(int density);

std::vector<RobotId> complement_of(const Configuration& config, const FaultSet& faults);

}  // namespace linerdv
