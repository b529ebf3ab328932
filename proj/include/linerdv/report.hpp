#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linerdv/evaluation.hpp"

namespace linerdv {

// A run request as read from a JSON document.
struct RunConfig {
  std::vector<std::string> position_texts;
  std::vector<Scalar> positions;
  int f = 0;
  StrategyKind algorithm = StrategyKind::ssi;
  EvalMode mode = EvalMode::at_most_f;
  std::optional<Scalar> epsilon;

  Configuration configuration() const { return Configuration::from_positions(positions); }
  EvalRequest request() const { return make_request(configuration(), f, mode); }
  StrategyParams params() const {
    StrategyParams p;
    p.f = f;
    p.epsilon = epsilon;
    return p;
  }
};

// Parses and validates the JSON run configuration. Unknown fields are
// rejected; every violation names the offending field.
RunConfig load_config(std::istream& in);
RunConfig load_config_text(const std::string& text);

struct RunReport {
  RunConfig config;
  Scalar all_gather_time;
  Scalar gather_position;
  std::size_t event_count = 0;
  CrReport cr;
  std::optional<Scalar> bound;  // absent when no proved bound applies
  bool bound_pass = false;
  std::optional<Scalar> margin;
};

// Generates the plan, evaluates every fault set, attaches the bound
// verdict when one applies. Also returns the plan for artifact export.
RunReport run_evaluation_report(const RunConfig& config, Plan* plan_out = nullptr);

enum class ReportFormat { json, csv };

// Serializes with stable field ordering; exact scalars use the canonical
// grammar, decimals carry 12 significant digits.
std::string emit_report(const RunReport& report, ReportFormat format);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Space-time diagram: time on the vertical axis, one polyline per robot,
// markers at the meeting events.
void write_plan_svg(const Plan& plan, std::ostream& out);

}  // namespace linerdv
