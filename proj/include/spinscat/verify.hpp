#pragma once

#include <string>
#include <vector>

#include "spinscat/scattering.hpp"

namespace spinscat {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// eps = 100 meV, J = 4 eV*angstrom, m* = 0.067, V0 = 0.
ScatteringProblem reference_problem(double x0_nm);

/// The twenty (V0, x0, J) samples for the oracle comparison, fixed seed.
std::vector<ScatteringProblem> oracle_sample();

/// Max |difference| over r, t and the transmitted amplitude at x0.
double oracle_deviation(const ScatteringProblem& problem, int slices = 8192);

CheckResult check_flux_conservation();
CheckResult check_oracle_equivalence();
CheckResult check_unit_concurrence();
CheckResult check_reflection_edges();
CheckResult check_total_reflection();
CheckResult check_concurrence_cross_validation();
CheckResult check_protocol_dominance();
CheckResult check_foundations();
CheckResult check_mirror_symmetry();
/// `cli` may name the sweep executable; its CSV output is then compared
/// across repeated runs as well.
CheckResult check_determinism(const std::string& cli = {});

std::vector<CheckResult> run_all_checks(const std::string& cli = {});

} // namespace spinscat
