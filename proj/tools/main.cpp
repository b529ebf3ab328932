#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "linerdv/report.hpp"
#include "linerdv/verification.hpp"

namespace {

using namespace linerdv;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerification = 4;
constexpr int kExitInternal = 5;

RunConfig read_config(const std::string& path) {
  if (path.empty()) throw ConfigError("--config is required for this command");
  if (path == "-") return load_config(std::cin);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return load_config(in);
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
  out << payload;
}

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string mode;
  std::string epsilon;
  int grid = 40;
  std::uint64_t seed = 1;
  bool serial = false;
};

RunConfig effective_config(const Options& opt) {
  RunConfig cfg = read_config(opt.config_path);
  if (!opt.mode.empty()) {
    if (opt.mode == "exactly") cfg.mode = EvalMode::exactly_f;
    else if (opt.mode == "at-most") cfg.mode = EvalMode::at_most_f;
    else throw ConfigError("--mode must be 'exactly' or 'at-most'");
  }
  if (!opt.epsilon.empty()) {
    const Scalar eps = parse_scalar(opt.epsilon);
    if (!(eps > Scalar(0))) throw ConfigError("--epsilon must be positive");
    cfg.epsilon = eps;
  }
  return cfg;
}

int run_simulate(const Options& opt) {
  const RunConfig cfg = effective_config(opt);
  const Plan plan = make_plan(cfg.algorithm, cfg.configuration(), cfg.params());
  std::ostringstream csv;
  write_trajectory_csv(plan, csv);
  write_output(opt.out_path, csv.str());
  return kExitOk;
}

int run_evaluate(const Options& opt) {
  const RunConfig cfg = effective_config(opt);
  const RunReport report = run_evaluation_report(cfg);
  const ReportFormat format = opt.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  if (!opt.format.empty() && opt.format != "csv" && opt.format != "json") {
    throw ConfigError("--format must be 'json' or 'csv' for evaluate");
  }
  write_output(opt.out_path, emit_report(report, format));
  return kExitOk;
}

int run_verify(const Options& opt) {
  VerificationOptions vopt;
  vopt.parallel = !opt.serial;
  vopt.base_seed = opt.seed;
  const auto results = run_acceptance(vopt);
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << " ("
        << static_cast<int>(r.seconds * 1000) / 1000.0 << "s)\n";
  }
  out << (all_passed(results) ? "verification passed\n" : "verification FAILED\n");
  write_output(opt.out_path, out.str());
  return all_passed(results) ? kExitOk : kExitVerification;
}

int run_sweep(const Options& opt) {
  if (opt.grid < 1) throw ConfigError("--grid must be >= 1");
  const auto rows = opt.serial ? frr_sweep_serial(opt.grid) : frr_sweep(opt.grid);
  write_output(opt.out_path, sweep_csv(rows));
  return kExitOk;
}

int run_plot(const Options& opt) {
  const RunConfig cfg = effective_config(opt);
  const Plan plan = make_plan(cfg.algorithm, cfg.configuration(), cfg.params());
  std::ostringstream svg;
  write_plan_svg(plan, svg);
  write_output(opt.out_path, svg.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator and verifier for byzantine-tolerant rendezvous on a line"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool with_config) {
    if (with_config) cmd->add_option("--config", opt.config_path, "JSON run config ('-' = stdin)");
    cmd->add_option("--out", opt.out_path, "output path (default stdout)");
    return cmd;
  };

  auto* simulate = add_common(app.add_subcommand("simulate", "emit the trajectory CSV"), true);
  simulate->add_option("--mode", opt.mode, "exactly|at-most");
  simulate->add_option("--epsilon", opt.epsilon, "scalar epsilon override");

  auto* evaluate =
      add_common(app.add_subcommand("evaluate", "fault-set evaluation report"), true);
  evaluate->add_option("--format", opt.format, "json|csv (default json)");
  evaluate->add_option("--mode", opt.mode, "exactly|at-most");
  evaluate->add_option("--epsilon", opt.epsilon, "scalar epsilon override");

  auto* verify =
      add_common(app.add_subcommand("verify", "run the built-in verification suite"), false);
  verify->add_option("--seed", opt.seed, "base seed for the random configurations");
  verify->add_flag("--serial", opt.serial, "disable the parallel sweeps");

  auto* sweep = add_common(app.add_subcommand("sweep", "four-robot grid sweep CSV"), false);
  sweep->add_option("--grid", opt.grid, "grid density (default 40)");
  sweep->add_flag("--serial", opt.serial, "disable the parallel sweeps");

  auto* plot = add_common(app.add_subcommand("plot", "space-time SVG diagram"), true);
  plot->add_option("--mode", opt.mode, "exactly|at-most");
  plot->add_option("--epsilon", opt.epsilon, "scalar epsilon override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(opt);
    if (evaluate->parsed()) return run_evaluate(opt);
    if (verify->parsed()) return run_verify(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (plot->parsed()) return run_plot(opt);
    std::cerr << "no subcommand\n";
    return kExitConfig;
  } catch (const linerdv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const linerdv::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const linerdv::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
