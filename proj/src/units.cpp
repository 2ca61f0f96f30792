#include "spinscat/units.hpp"

#include <cmath>
#include <string>

#include "spinscat/errors.hpp"

namespace spinscat {

double kinetic_factor(const MaterialParams& material) {
  if (!(material.mass_ratio > 0.0) || !std::isfinite(material.mass_ratio))
    throw InvalidParameter("mass_ratio must be positive, got " +
                           std::to_string(material.mass_ratio));
  return UnitConvention::hbar2_over_2me / material.mass_ratio;
}

double incident_wavenumber(double energy, const MaterialParams& material) {
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw InvalidParameter("incident energy must be positive, got " +
                           std::to_string(energy));
  return std::sqrt(energy / kinetic_factor(material));
}

std::complex<double> transmitted_wavenumber(double energy, double ramp_height,
                                            const MaterialParams& material) {
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw InvalidParameter("incident energy must be positive, got " +
                           std::to_string(energy));
  const double kf = kinetic_factor(material);
  const double gap = energy - ramp_height;
  if (gap > 0.0) return {std::sqrt(gap / kf), 0.0};
  if (gap < 0.0) return {0.0, std::sqrt(-gap / kf)};
  return {0.0, 0.0};
}

double delta_strength(double coupling, const MaterialParams& material) {
  return coupling / kinetic_factor(material);
}

} // namespace spinscat
