// Acceptance suite runner. With no arguments runs every criterion; with a
// criterion number runs just that one. One PASS/FAIL line per criterion; exit
// status 1 if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "merolocus/verification.hpp"

int main(int argc, char** argv) {
  using namespace merolocus;
  std::vector<CriterionResult> results;
  if (argc > 1) {
    const int id = std::atoi(argv[1]);
    if (id < 1 || id > kCriterionCount) {
      std::fprintf(stderr, "usage: %s [criterion 1-%d]\n", argv[0], kCriterionCount);
      return 2;
    }
    results.push_back(run_criterion(id));
  } else {
    results = run_acceptance();
  }
  bool all = true;
  for (const CriterionResult& r : results) {
    std::printf("%s %2d %s | %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                r.seconds);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
