// Times the OpenMP evaluation kernels against their serial reference
// implementations and cross-checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "linerdv/evaluation.hpp"

using namespace linerdv;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
              serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp; both columns run serially\n");
#endif
  std::printf("%-28s %11s %11s %9s\n", "workload", "serial", "parallel", "speedup");

  {
    const Configuration config = random_config(42, 12, 4, 16);
    const Plan plan = three_group_plan(config, 7);
    const EvalRequest request = make_request(config, 7, EvalMode::at_most_f);
    CrReport serial_report, parallel_report;
    const double ts = time_of([&] { serial_report = worst_case_cr_serial(plan, request); });
    const double tp = time_of([&] { parallel_report = worst_case_cr(plan, request); });
    const bool same = serial_report.worst == parallel_report.worst &&
                      serial_report.worst_row == parallel_report.worst_row;
    row("worst_case_cr n=12 f=7", ts, tp, same);
  }

  {
    LemmaSweepReport serial_report, parallel_report;
    const double ts = time_of([&] { serial_report = verify_lemmas_serial(160); });
    const double tp = time_of([&] { parallel_report = verify_lemmas(160); });
    const bool same = serial_report.points == parallel_report.points &&
                      serial_report.violations == parallel_report.violations;
    row("lemma sweep density 160", ts, tp, same);
  }

  {
    std::vector<SweepRow> serial_rows, parallel_rows;
    const double ts = time_of([&] { serial_rows = frr_sweep_serial(48); });
    const double tp = time_of([&] { parallel_rows = frr_sweep(48); });
    bool same = serial_rows.size() == parallel_rows.size();
    for (std::size_t i = 0; same && i < serial_rows.size(); ++i) {
      same = serial_rows[i].worst_cr == parallel_rows[i].worst_cr &&
             serial_rows[i].case_id == parallel_rows[i].case_id;
    }
    row("four-robot sweep density 48", ts, tp, same);
  }
  return 0;
}
