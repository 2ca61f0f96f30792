#pragma once

#include <complex>

namespace spinscat {

// Internal units: energies in eV, lengths in angstrom. Public entry points
// that take lab units (meV, nm) convert with the helpers below.

namespace codata {
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double elementary_charge = 1.602176634e-19; // C
} // namespace codata

struct UnitConvention {
  /// hbar^2 / (2 m_e) in eV * angstrom^2.
  static constexpr double hbar2_over_2me =
      codata::hbar * codata::hbar / (2.0 * codata::electron_mass) /
      codata::elementary_charge * 1e20;
};

inline constexpr double mev_to_ev(double mev) { return mev * 1e-3; }
inline constexpr double ev_to_mev(double ev) { return ev * 1e3; }
inline constexpr double nm_to_angstrom(double nm) { return nm * 10.0; }
inline constexpr double angstrom_to_nm(double a) { return a * 0.1; }

struct MaterialParams {
  double mass_ratio = 0.067; // m*/m_e, GaAs
};

/// hbar^2 / (2 m*) in eV A^2.
double kinetic_factor(const MaterialParams& material);

/// k = sqrt(2 m* eps) / hbar, in 1/A. Requires eps > 0.
double incident_wavenumber(double energy, const MaterialParams& material);

/// q = sqrt(2 m* (eps - V0)) / hbar on the branch with Im(q) >= 0.
std::complex<double> transmitted_wavenumber(double energy, double ramp_height,
                                            const MaterialParams& material);

/// 2 m* J / hbar^2 in 1/A; the derivative jump per unit exchange eigenvalue.
double delta_strength(double coupling, const MaterialParams& material);

} // namespace spinscat
