#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinscat/protocols.hpp"
#include "spinscat/scattering.hpp"

namespace spinscat {

enum class SweptParameter { RampHeight, Separation, Energy, Coupling };

const char* to_string(SweptParameter p);
SweptParameter parse_swept_parameter(const std::string& name); // v0 | x0 | epsilon | j
/// CSV column name of the swept value. "v0_mev" for the default sweep.
std::string column_name(SweptParameter p);

/// Grid values are in lab units: meV for V0 and eps, nm for x0, eV*angstrom for J.
struct SweepSpec {
  ScatteringProblem base = ScatteringProblem::from_lab_units(100.0, 0.0, 6.0, 4.0);
  SweptParameter parameter = SweptParameter::RampHeight;
  double start = -100.0;
  double stop = 400.0;
  int points = 2001;
  std::vector<Protocol> protocols{Protocol::SpinCharge, Protocol::Charge, Protocol::None};
  std::string output_csv;
  std::string output_svg;
  bool dump_amplitudes = false;

  void validate() const; // InvalidParameter
  double value_at(int i) const;
  ScatteringProblem problem_at(int i) const;
  bool selected(Protocol p) const;
};

struct SweepRow {
  double value = 0.0; // swept parameter, lab units
  bool ok = false;    // false: the solve was rejected, see error
  std::string error;
  double p_refl = 0.0;
  double p_trans = 0.0;
  // Empty when the outcome is infeasible or the protocol was not selected.
  std::optional<double> c_sc_t, p_sc_t, c_sc_r, p_sc_r;
  std::optional<double> c_c_t, c_c_r;
  std::optional<double> c_none;
  double flux_residual = 0.0;
  bool transmitted_feasible = false;
  bool reflected_feasible = false;
  ChannelAmplitudes r{}, t{};

  bool operator==(const SweepRow&) const = default;
};

/// Solves one point and fills every selected protocol column.
SweepRow evaluate_point(const ScatteringProblem& problem, double value,
                        const std::vector<Protocol>& protocols);

/// Grid points run in parallel; rows come back in grid order and do not
/// depend on the thread count. workers <= 0 uses the OpenMP default.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 0);
/// Single-threaded reference with the same output.
std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec);

struct UnitConcurrence {
  bool found = false; // max >= threshold
  double v0_mev = 0.0;
  double max = 0.0;
};

/// Dense scan of C_none over [v0_lo, v0_hi] meV, then golden-section
/// refinement around the best grid point.
UnitConcurrence find_unit_concurrence(const ScatteringProblem& base, double v0_lo_mev,
                                      double v0_hi_mev, double step_mev = 0.5,
                                      double threshold = 0.99);

inline constexpr double kDefaultEdgeThreshold = 0.01;

struct ReflectionEdge {
  bool found = false;
  double v_max_mev = 0.0;
  double delta_v_mev = 0.0;
};

/// Largest V0 above eps, on a 1 meV scan up to scan_stop_mev, at which the
/// spin+charge reflected concurrence still reaches `threshold`.
ReflectionEdge effective_reflection_edge(const ScatteringProblem& base,
                                         double threshold = kDefaultEdgeThreshold,
                                         double scan_stop_mev = 1000.0, double step_mev = 1.0);

struct LandmarkReport {
  double x0_nm = 0.0;
  UnitConcurrence unit;
  ReflectionEdge edge;
};

} // namespace spinscat
