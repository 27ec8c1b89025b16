// Runs every acceptance criterion and prints one line each.  Exit status is
// the number of failures (capped at 1 for ctest).
#include <cstdio>

#include "loudcrit/verification.hpp"

int main() {
  int failed = 0;
  for (const auto& r : loudcrit::verify::acceptance()) {
    std::printf("[%s] %2d %-45s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.criterion,
                r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
