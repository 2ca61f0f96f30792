// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--cli PATH] [criterion ...]

#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "spinscat/verify.hpp"

using namespace spinscat;

int main(int argc, char** argv) {
  std::string cli;
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc)
      cli = argv[++i];
    else
      wanted.push_back(std::atoi(argv[i]));
  }

  const std::vector<std::function<CheckResult()>> checks{
      check_flux_conservation,
      check_oracle_equivalence,
      check_unit_concurrence,
      check_reflection_edges,
      check_total_reflection,
      check_concurrence_cross_validation,
      check_protocol_dominance,
      check_foundations,
      check_mirror_symmetry,
      [&] { return check_determinism(cli); },
  };
  if (wanted.empty())
    for (int i = 1; i <= static_cast<int>(checks.size()); ++i) wanted.push_back(i);

  int failed = 0;
  for (int id : wanted) {
    if (id < 1 || id > static_cast<int>(checks.size())) {
      std::fprintf(stderr, "no criterion %d\n", id);
      return 2;
    }
    const CheckResult r = checks[id - 1]();
    std::printf("%s  criterion %2d  %-34s %6.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.c_str());
    failed += !r.passed;
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
