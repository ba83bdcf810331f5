// One line per acceptance criterion. Tolerances live in suites.hpp: every
// criterion is exact, criteria 1 and 4 also carry wall-clock limits.
#include <cstdio>

#include "tamestrata/suites.hpp"

int main() {
  using namespace ts;
  const auto corpus = build_corpus();
  const auto results = run_suites("all", OracleMode::Check, corpus);
  int failed = 0;
  for (const auto& r : results) {
    const char* verdict = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
    std::printf("%s  criterion %d  %-48s cases=%lld failures=%lld time=%.2fs%s%s\n", verdict, r.id,
                r.name.c_str(), r.cases, r.failures, r.seconds, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
