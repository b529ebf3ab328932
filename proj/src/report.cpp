#include "linerdv/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace linerdv {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

RunConfig from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  static const char* kKnown[] = {"positions", "f", "algorithm", "mode", "epsilon"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) bad_field(key, "unknown field");
  }

  RunConfig cfg;
  if (!doc.contains("positions") || !doc["positions"].is_array()) {
    bad_field("positions", "required array of scalar strings");
  }
  for (std::size_t i = 0; i < doc["positions"].size(); ++i) {
    const auto& item = doc["positions"][i];
    const std::string path = "positions[" + std::to_string(i) + "]";
    if (!item.is_string()) bad_field(path, "must be a scalar string");
    try {
      cfg.positions.push_back(parse_scalar(item.get<std::string>()));
    } catch (const ParseError& e) {
      bad_field(path, e.what());
    }
    cfg.position_texts.push_back(item.get<std::string>());
  }
  if (cfg.positions.size() < 2) bad_field("positions", "needs at least 2 robots");

  if (!doc.contains("f") || !doc["f"].is_number_integer()) {
    bad_field("f", "required integer");
  }
  cfg.f = doc["f"].get<int>();
  const int n = static_cast<int>(cfg.positions.size());
  if (cfg.f < 0 || cfg.f > n - 2) {
    bad_field("f", "must satisfy 0 <= f <= n-2 (n = " + std::to_string(n) + ")");
  }

  if (!doc.contains("algorithm") || !doc["algorithm"].is_string()) {
    bad_field("algorithm", "required string");
  }
  try {
    cfg.algorithm = parse_strategy(doc["algorithm"].get<std::string>());
  } catch (const ConfigError& e) {
    bad_field("algorithm", e.what());
  }

  if (doc.contains("mode")) {
    const std::string mode = doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
    if (mode == "at-most") cfg.mode = EvalMode::at_most_f;
    else if (mode == "exactly") cfg.mode = EvalMode::exactly_f;
    else bad_field("mode", "must be 'exactly' or 'at-most'");
  }

  if (doc.contains("epsilon")) {
    if (!doc["epsilon"].is_string()) bad_field("epsilon", "must be a scalar string");
    try {
      cfg.epsilon = parse_scalar(doc["epsilon"].get<std::string>());
    } catch (const ParseError& e) {
      bad_field("epsilon", e.what());
    }
    if (!(*cfg.epsilon > Scalar(0))) bad_field("epsilon", "must be positive");
  }

  // Static strategy/position compatibility.
  switch (cfg.algorithm) {
    case StrategyKind::doubling:
      for (std::size_t i = 0; i < cfg.positions.size(); ++i) {
        if (!cfg.positions[i].is_integer()) {
          bad_field("positions[" + std::to_string(i) + "]",
                    "the doubling strategy needs integer positions");
        }
      }
      break;
    case StrategyKind::scaled_doubling:
      for (std::size_t i = 0; i < cfg.positions.size(); ++i) {
        if (!cfg.positions[i].is_rational()) {
          bad_field("positions[" + std::to_string(i) + "]",
                    "scaled doubling needs rational positions");
        }
      }
      break;
    case StrategyKind::frr:
      if (n != 4) bad_field("positions", "the four-robot strategy needs exactly 4 robots");
      break;
    case StrategyKind::three_group:
      if (n < 9) bad_field("positions", "the three-group strategy needs n >= 9");
      break;
    default:
      break;
  }
  return cfg;
}

}  // namespace

RunConfig load_config(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

RunConfig load_config_text(const std::string& text) {
  std::istringstream in(text);
  return load_config(in);
}

RunReport run_evaluation_report(const RunConfig& config, Plan* plan_out) {
  RunReport report;
  report.config = config;
  const Configuration configuration = config.configuration();
  const Plan plan = make_plan(config.algorithm, configuration, config.params());
  report.all_gather_time = plan.all_gather_time;
  report.gather_position = plan.gather_position();
  report.event_count = plan.events.size();
  report.cr = worst_case_cr(plan, config.request());

  const int n = configuration.size();
  bool applicable = true;
  switch (config.algorithm) {
    case StrategyKind::mtc:
      applicable = 2 * config.f <= n - 1;
      break;
    case StrategyKind::three_group:
      applicable = 3 * config.f < 2 * (n - 1);
      break;
    case StrategyKind::frr:
      applicable = config.f == 2 && config.mode == EvalMode::exactly_f;
      break;
    default:
      break;
  }
  if (applicable) {
    report.bound = strategy_bound(config.algorithm, config.f);
    report.bound_pass = report.cr.worst <= *report.bound;
    report.margin = *report.bound - report.cr.worst;
  }
  if (plan_out != nullptr) *plan_out = plan;
  return report;
}

namespace {

Json scalar_json(const Scalar& v) {
  return Json{{"exact", v.str()}, {"decimal", v.decimal()}};
}

std::string join_ids(const std::vector<RobotId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "fault_ids,T,D,cr_exact,cr_decimal\n";
    for (const CrRow& row : report.cr.rows) {
      out += join_ids(row.faults.ids) + ',' + row.gather.str() + ',' + row.diameter.str() + ',';
      out += row.skipped ? "skipped,skipped" : row.ratio.str() + ',' + row.ratio.decimal();
      out += '\n';
    }
    const CrRow& worst = report.cr.rows[report.cr.worst_row];
    out += "worst," + join_ids(worst.faults.ids) + ",," + report.cr.worst.str() + ',' +
           report.cr.worst.decimal() + '\n';
    return out;
  }

  Json doc;
  Json cfg;
  cfg["positions"] = report.config.position_texts;
  cfg["f"] = report.config.f;
  cfg["algorithm"] = strategy_name(report.config.algorithm);
  cfg["mode"] = report.config.mode == EvalMode::exactly_f ? "exactly" : "at-most";
  if (report.config.epsilon) cfg["epsilon"] = report.config.epsilon->str();
  doc["config"] = cfg;

  Json plan;
  plan["all_gather_time"] = scalar_json(report.all_gather_time);
  plan["gather_position"] = scalar_json(report.gather_position);
  plan["event_count"] = report.event_count;
  doc["plan"] = plan;

  Json rows = Json::array();
  for (const CrRow& row : report.cr.rows) {
    Json r;
    r["fault_ids"] = row.faults.ids;
    r["T"] = row.gather.str();
    r["D"] = row.diameter.str();
    if (row.skipped) {
      r["skipped"] = true;
    } else {
      r["cr_exact"] = row.ratio.str();
      r["cr_decimal"] = row.ratio.decimal();
    }
    rows.push_back(r);
  }
  doc["rows"] = rows;
  doc["worst_cr_exact"] = report.cr.worst.str();
  doc["worst_cr_decimal"] = report.cr.worst.decimal();
  doc["worst_fault_ids"] = report.cr.rows[report.cr.worst_row].faults.ids;
  doc["skipped_count"] = report.cr.skipped_rows.size();
  if (report.bound) {
    doc["bound"] = report.bound->str();
    doc["pass"] = report.bound_pass;
    doc["margin"] = report.margin->str();
  } else {
    doc["bound"] = nullptr;
    doc["pass"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "x,y,case,worst_cr,worst_fault_pair,x_decimal,y_decimal,worst_cr_decimal\n";
  for (const SweepRow& row : rows) {
    out += row.x.str() + ',' + row.y.str() + ',' + std::to_string(row.case_id) + ',' +
           row.worst_cr.str() + ',' + join_ids(row.worst_faults.ids) + ',' +
           row.x.decimal(6) + ',' + row.y.decimal(6) + ',' + row.worst_cr.decimal() + '\n';
  }
  return out;
}

namespace {

double to_double(const Scalar& v) { return std::stod(v.decimal(15)); }

}  // namespace

void write_plan_svg(const Plan& plan, std::ostream& out) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const double width = 800, height = 560, margin = 60;

  double x_lo = to_double(plan.config.min_position());
  double x_hi = to_double(plan.config.max_position());
  for (const auto& traj : plan.trajectories) {
    for (const auto& p : traj.breakpoints()) {
      x_lo = std::min(x_lo, to_double(p.x));
      x_hi = std::max(x_hi, to_double(p.x));
    }
  }
  double t_hi = to_double(plan.all_gather_time);
  if (x_hi - x_lo < 1e-9) {
    x_lo -= 1;
    x_hi += 1;
  }
  if (t_hi < 1e-9) t_hi = 1;
  const double pad = (x_hi - x_lo) * 0.05;
  x_lo -= pad;
  x_hi += pad;

  auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto sy = [&](double t) { return height - margin - t / t_hi * (height - 2 * margin); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << margin
      << "\" y2=\"" << margin << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << width / 2 << "\" y=\"" << height - margin / 3
      << "\" font-size=\"12\" text-anchor=\"middle\">position</text>\n";
  out << "  <text x=\"" << margin / 3 << "\" y=\"" << height / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " << margin / 3
      << " " << height / 2 << ")\">time</text>\n";

  for (RobotId id = 0; id < plan.config.size(); ++id) {
    out << "  <polyline fill=\"none\" stroke=\"" << kPalette[id % 8]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : plan.trajectories[id].breakpoints()) {
      out << sx(to_double(p.x)) << ',' << sy(to_double(p.t)) << ' ';
    }
    out << "\"/>\n";
  }
  for (const MeetEvent& e : plan.events) {
    out << "  <circle cx=\"" << sx(to_double(e.position)) << "\" cy=\"" << sy(to_double(e.time))
        << "\" r=\"3.5\" fill=\"none\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace linerdv
