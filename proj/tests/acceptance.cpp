// Acceptance suite: runs every criterion at its stated tolerance (all exact)
// and prints one pass/fail line per criterion.  Exit status is nonzero when
// any criterion fails.

#include <cstdio>

#include "supergrade/checks.hpp"

int main() {
  using namespace supergrade;
  int failures = 0;
  auto names = list_checks();
  for (size_t i = 0; i < names.size(); ++i) {
    CheckResult r = run_check(names[i], /*seed=*/0);
    std::printf("[%s] criterion %zu (%s) [%.2fs]\n", r.pass ? "PASS" : "FAIL", i + 1,
                r.name.c_str(), r.seconds);
    if (!r.pass) {
      ++failures;
      std::printf("       %s\n", r.detail.c_str());
    }
  }
  std::printf("%zu/%zu criteria passed\n", names.size() - failures, names.size());
  return failures == 0 ? 0 : 1;
}
