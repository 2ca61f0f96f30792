#pragma once

#include <array>

#include "spinscat/linalg.hpp"
#include "spinscat/spin.hpp"
#include "spinscat/units.hpp"

namespace spinscat {

/// Electron of energy `energy` incident from x < 0 on impurity 1 at x = 0
/// and impurity 2 at x = separation, with the potential rising linearly from
/// 0 to `ramp_height` between them and staying flat beyond. Internal units
/// (eV, angstrom, eV*angstrom).
struct ScatteringProblem {
  double energy = 0.1;        // eps, eV
  double ramp_height = 0.0;   // V0, eV (either sign)
  double separation = 60.0;   // x0, angstrom
  double coupling = 4.0;      // J, eV*angstrom
  MaterialParams material{};
  IncomingSpinor incoming{};
  SpinChannelBasis basis = SpinChannelBasis::plus_half();

  /// Builds a problem from lab units: meV, nm, eV*angstrom.
  static ScatteringProblem from_lab_units(double energy_mev, double ramp_mev, double separation_nm,
                                          double coupling_ev_angstrom, double mass_ratio = 0.067);

  /// Throws InvalidParameter on eps <= 0, x0 <= 0, non-finite values or a
  /// non-positive mass ratio.
  void validate() const;
};

/// |V0| below this (eV) uses the free plane-wave pair on the ramp.
inline constexpr double kRampDegeneracyThreshold = 1e-6;
/// |eps - V0| below this (eV) is treated as the transmission threshold q = 0.
inline constexpr double kThresholdWindow = 1e-9;
/// Assembled systems with a larger infinity-norm condition number are rejected.
inline constexpr double kMaxCondition = 1e12;

/// Affine map from position to Airy argument, u(x) = alpha (slope x - eps).
struct RampBasisParams {
  double alpha = 0.0; // 1/eV
  double slope = 0.0; // eV/A
  double energy = 0.0;
  bool degenerate = false; // plane waves instead of Airy functions

  double u_at(double x) const { return alpha * (slope * x - energy); }
  /// du/dx
  double du_dx() const { return alpha * slope; }
};

RampBasisParams ramp_params(const ScatteringProblem& problem);

/// Two independent ramp solutions and their x-derivatives. On an Airy ramp
/// f1 = Ai(u(x)) and f2 = Bi(u(x)) * exp(-bi_exponent); the exponent is
/// (2/3) u(x0)^{3/2} when the ramp ends in the classically forbidden region
/// and 0 otherwise, which keeps both columns of the boundary system O(1).
struct MiddleBasis {
  cplx f1, df1, f2, df2;
  double bi_exponent = 0.0;
};

double middle_bi_exponent(const ScatteringProblem& problem);
MiddleBasis middle_basis(double x, const ScatteringProblem& problem);

/// A value stored as mantissa * exp(exponent).
struct ScaledAmplitude {
  cplx mantissa{};
  double exponent = 0.0;
  cplx value() const { return mantissa * std::exp(exponent); }
};

enum class Regime { Propagating, Threshold, Evanescent };

using ChannelAmplitudes = std::array<cplx, 3>;

struct WaveCoefficients {
  ChannelAmplitudes r{};       // reflected, multiplies e^{-ikx}
  std::array<ScaledAmplitude, 3> b{}; // Ai coefficient
  std::array<ScaledAmplitude, 3> c{}; // Bi coefficient
  ChannelAmplitudes tau{};     // raw transmitted, multiplies e^{iqx}
  ChannelAmplitudes tau_edge{}; // tau e^{iq x0}, the transmitted amplitude at x0
  ChannelAmplitudes t{};       // flux normalized sqrt(q/k) tau; zero unless q > 0
  double k = 0.0;
  cplx q{};
  Regime regime = Regime::Propagating;
  double flux_residual = 0.0;
  double condition = 0.0;
  SpinChannelBasis basis = SpinChannelBasis::plus_half();
  ChannelAmplitudes incoming{}; // a_j used for this solve

  bool transmits() const { return regime == Regime::Propagating; }
  double reflection_probability() const;
  double transmission_probability() const;
};

/// Unknown order: r(0..2), b(0..2), c(0..2), tau_edge(0..2). Rows come in
/// groups of four per channel: continuity at 0, derivative jump at 0,
/// continuity at x0, derivative jump at x0.
struct LinearSystem {
  ComplexMatrix matrix;
  ComplexVector rhs;
  double bi_exponent = 0.0;
};

LinearSystem assemble_system(const ScatteringProblem& problem);
/// Same system for arbitrary (unnormalized) incoming amplitudes.
LinearSystem assemble_system(const ScatteringProblem& problem, const ChannelAmplitudes& incoming);

/// Solves the boundary-matching system. Throws IllConditioned when the
/// condition estimate exceeds kMaxCondition.
WaveCoefficients solve(const ScatteringProblem& problem);

/// Raw solution for arbitrary incoming amplitudes; the flux bookkeeping
/// assumes nothing about their norm. Used for superposition checks.
WaveCoefficients solve_amplitudes(const ScatteringProblem& problem,
                                  const ChannelAmplitudes& incoming);

/// psi_j(x) for each channel, region by region.
ChannelAmplitudes evaluate_wavefunction(const WaveCoefficients& coeffs,
                                        const ScatteringProblem& problem, double x);
/// d psi_j / dx. At the impurity positions x = 0 and x = x0 the one-sided
/// derivative is selected by `from_right`.
ChannelAmplitudes evaluate_derivative(const WaveCoefficients& coeffs,
                                      const ScatteringProblem& problem, double x,
                                      bool from_right = false);

} // namespace spinscat
