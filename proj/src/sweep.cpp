#include "spinscat/sweep.hpp"

#include <cmath>
#include <omp.h>

#include "spinscat/errors.hpp"

namespace spinscat {

const char* to_string(SweptParameter p) {
  switch (p) {
  case SweptParameter::RampHeight: return "v0";
  case SweptParameter::Separation: return "x0";
  case SweptParameter::Energy: return "epsilon";
  case SweptParameter::Coupling: return "j";
  }
  return "?";
}

SweptParameter parse_swept_parameter(const std::string& name) {
  if (name == "v0") return SweptParameter::RampHeight;
  if (name == "x0") return SweptParameter::Separation;
  if (name == "epsilon") return SweptParameter::Energy;
  if (name == "j") return SweptParameter::Coupling;
  throw InvalidParameter("unknown swept parameter '" + name + "'");
}

std::string column_name(SweptParameter p) {
  switch (p) {
  case SweptParameter::RampHeight: return "v0_mev";
  case SweptParameter::Separation: return "x0_nm";
  case SweptParameter::Energy: return "epsilon_mev";
  case SweptParameter::Coupling: return "j_ev_angstrom";
  }
  return "value";
}

void SweepSpec::validate() const {
  if (points < 2) throw InvalidParameter("sweep needs at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop) || start == stop)
    throw InvalidParameter("sweep start and stop must be finite and distinct");
  if (protocols.empty()) throw InvalidParameter("no protocol selected");
  base.validate();
  problem_at(0).validate();
  problem_at(points - 1).validate();
}

double SweepSpec::value_at(int i) const {
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / (points - 1);
}

ScatteringProblem SweepSpec::problem_at(int i) const {
  ScatteringProblem p = base;
  const double v = value_at(i);
  switch (parameter) {
  case SweptParameter::RampHeight: p.ramp_height = mev_to_ev(v); break;
  case SweptParameter::Separation: p.separation = nm_to_angstrom(v); break;
  case SweptParameter::Energy: p.energy = mev_to_ev(v); break;
  case SweptParameter::Coupling: p.coupling = v; break;
  }
  return p;
}

bool SweepSpec::selected(Protocol p) const {
  for (Protocol q : protocols)
    if (q == p) return true;
  return false;
}

SweepRow evaluate_point(const ScatteringProblem& problem, double value,
                        const std::vector<Protocol>& protocols) {
  SweepRow row;
  row.value = value;
  WaveCoefficients w;
  try {
    w = solve(problem);
  } catch (const NumericalError& e) {
    row.error = e.what();
    return row;
  }
  row.ok = true;
  row.p_refl = w.reflection_probability();
  row.p_trans = w.transmission_probability();
  row.flux_residual = w.flux_residual;
  row.r = w.r;
  row.t = w.t;

  auto wants = [&](Protocol p) {
    for (Protocol q : protocols)
      if (q == p) return true;
    return false;
  };
  if (wants(Protocol::SpinCharge)) {
    const ProtocolResult tr = protocol_spin_charge(w, Outcome::Transmitted);
    const ProtocolResult rf = protocol_spin_charge(w, Outcome::Reflected);
    if (tr.feasible) row.c_sc_t = tr.concurrence, row.p_sc_t = tr.success_probability;
    if (rf.feasible) row.c_sc_r = rf.concurrence, row.p_sc_r = rf.success_probability;
  }
  const ProtocolResult ct = protocol_charge(w, Outcome::Transmitted);
  const ProtocolResult cr = protocol_charge(w, Outcome::Reflected);
  row.transmitted_feasible = ct.feasible;
  row.reflected_feasible = cr.feasible;
  if (wants(Protocol::Charge)) {
    if (ct.feasible) row.c_c_t = ct.concurrence;
    if (cr.feasible) row.c_c_r = cr.concurrence;
  }
  if (wants(Protocol::None)) row.c_none = protocol_none(w).concurrence;
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.points));
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (int i = 0; i < spec.points; ++i)
    rows[i] = evaluate_point(spec.problem_at(i), spec.value_at(i), spec.protocols);
  return rows;
}

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i)
    rows.push_back(evaluate_point(spec.problem_at(i), spec.value_at(i), spec.protocols));
  return rows;
}

namespace {

double none_concurrence(ScatteringProblem p, double v0_mev) {
  p.ramp_height = mev_to_ev(v0_mev);
  try {
    return *protocol_none(solve(p)).concurrence;
  } catch (const NumericalError&) {
    return 0.0;
  }
}

} // namespace

UnitConcurrence find_unit_concurrence(const ScatteringProblem& base, double v0_lo_mev,
                                      double v0_hi_mev, double step_mev, double threshold) {
  if (!(v0_hi_mev > v0_lo_mev) || !(step_mev > 0))
    throw InvalidParameter("find_unit_concurrence: empty range or bad step");
  const int n = static_cast<int>(std::ceil((v0_hi_mev - v0_lo_mev) / step_mev)) + 1;
  std::vector<double> c(n);
  auto at = [&](int i) { return std::min(v0_lo_mev + i * step_mev, v0_hi_mev); };
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) c[i] = none_concurrence(base, at(i));

  int best = 0;
  for (int i = 1; i < n; ++i)
    if (c[i] > c[best]) best = i;

  // golden section on the bracketing cells
  double a = at(std::max(best - 1, 0)), b = at(std::min(best + 1, n - 1));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = none_concurrence(base, x1), f2 = none_concurrence(base, x2);
  while (b - a > 1e-6) {
    if (f1 > f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a);
      f1 = none_concurrence(base, x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a);
      f2 = none_concurrence(base, x2);
    }
  }
  UnitConcurrence out;
  out.v0_mev = at(best);
  out.max = c[best];
  const double mid = 0.5 * (a + b), fm = none_concurrence(base, mid);
  if (fm > out.max) out.v0_mev = mid, out.max = fm;
  out.found = out.max >= threshold;
  return out;
}

ReflectionEdge effective_reflection_edge(const ScatteringProblem& base, double threshold,
                                         double scan_stop_mev, double step_mev) {
  if (!(step_mev > 0) || !(threshold >= 0))
    throw InvalidParameter("effective_reflection_edge: bad step or threshold");
  const double eps_mev = ev_to_mev(base.energy);
  const double first = eps_mev + step_mev;
  const int n = static_cast<int>(std::floor((scan_stop_mev - first) / step_mev)) + 1;
  ReflectionEdge out;
  if (n <= 0) return out;
  std::vector<char> hit(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    ScatteringProblem p = base;
    p.ramp_height = mev_to_ev(first + i * step_mev);
    try {
      const ProtocolResult res = protocol_spin_charge(solve(p), Outcome::Reflected);
      hit[i] = res.feasible && *res.concurrence >= threshold;
    } catch (const NumericalError&) {
    }
  }
  for (int i = n - 1; i >= 0; --i)
    if (hit[i]) {
      out.found = true;
      out.v_max_mev = first + i * step_mev;
      out.delta_v_mev = out.v_max_mev - eps_mev;
      break;
    }
  return out;
}

} // namespace spinscat
