// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure.
#include <cstdio>

#include "hochkit/acceptance.hpp"

int main() {
  auto results = hochkit::acceptance::run_all();
  bool all = true;
  for (auto& r : results) {
    std::printf("[%s] %2d %-48s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
  return all ? 0 : 1;
}
