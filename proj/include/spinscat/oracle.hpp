#pragma once

#include <vector>

#include "spinscat/linalg.hpp"
#include "spinscat/scattering.hpp"

namespace spinscat {

/// Piecewise-constant approximation of the ramp: N equal slices, each at the
/// potential of its midpoint.
struct SliceStack {
  std::vector<double> potential; // eV
  double width = 0.0;            // angstrom

  static SliceStack midpoint(const ScatteringProblem& problem, int slices);
  std::size_t size() const { return potential.size(); }
};

/// Maps (psi_1..3, psi'_1..3) across a region. 6x6.
struct ChannelTransferMatrix {
  ComplexMatrix m = ComplexMatrix::identity(6);

  ChannelTransferMatrix then(const ChannelTransferMatrix& next) const; // next * this
};

/// (psi, psi') -> (psi, psi' + strength * M psi)
ChannelTransferMatrix delta_transfer(const ExchangeMatrix& exchange, double strength);

/// Exact propagator across a constant-potential slice of the given width
/// (negative widths give the inverse), identical in every channel.
ChannelTransferMatrix slice_transfer(double potential, double width, double energy,
                                     const MaterialParams& material);

/// The scalar 2x2 propagator behind slice_transfer, row-major
/// {{psi<-psi, psi<-psi'}, {psi'<-psi, psi'<-psi'}}.
std::array<cplx, 4> slice_propagator(double potential, double width, double energy,
                                     const MaterialParams& material);

/// Largest u(x0) for which the oracle agrees to run; beyond it the
/// cosh/sinh products lose every significant digit of the transmitted wave.
inline constexpr double kOracleMaxTunnelingArgument = 15.0;

struct OracleResult {
  ChannelAmplitudes r{};
  ChannelAmplitudes tau_edge{};
  ChannelAmplitudes t{};
  double k = 0.0;
  cplx q{};
  double flux_residual = 0.0;
};

/// Brute-force scattering solve: composes the delta and slice transfers
/// from x0+ back to 0-, imposes the incident/reflected form on the left and
/// the outgoing form on the right, and solves the 6x6 relation for r and
/// the transmitted amplitudes. Throws NotApplicable past
/// kOracleMaxTunnelingArgument.
OracleResult oracle_solve(const ScatteringProblem& problem, int slices);

} // namespace spinscat
