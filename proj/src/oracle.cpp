#include "spinscat/oracle.hpp"

#include <cmath>
#include <string>

#include "spinscat/errors.hpp"

namespace spinscat {

namespace {
constexpr cplx kI{0.0, 1.0};
}

SliceStack SliceStack::midpoint(const ScatteringProblem& p, int slices) {
  if (slices < 1) throw InvalidParameter("slice count must be at least 1");
  SliceStack s;
  s.width = p.separation / slices;
  s.potential.resize(slices);
  for (int i = 0; i < slices; ++i) {
    const double xm = (i + 0.5) * s.width;
    s.potential[i] = p.ramp_height * xm / p.separation;
  }
  return s;
}

ChannelTransferMatrix ChannelTransferMatrix::then(const ChannelTransferMatrix& next) const {
  return {next.m * m};
}

ChannelTransferMatrix delta_transfer(const ExchangeMatrix& exchange, double strength) {
  ChannelTransferMatrix t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.m(3 + i, j) = strength * exchange(i, j);
  return t;
}

std::array<cplx, 4> slice_propagator(double potential, double width, double energy,
                                     const MaterialParams& material) {
  const double kf = kinetic_factor(material);
  const double gap = energy - potential;
  if (gap > 0.0) {
    const double kk = std::sqrt(gap / kf);
    const double c = std::cos(kk * width), s = std::sin(kk * width);
    return {c, s / kk, -kk * s, c};
  }
  if (gap < 0.0) {
    const double kappa = std::sqrt(-gap / kf);
    const double c = std::cosh(kappa * width), s = std::sinh(kappa * width);
    return {c, s / kappa, kappa * s, c};
  }
  return {1.0, width, 0.0, 1.0};
}

ChannelTransferMatrix slice_transfer(double potential, double width, double energy,
                                     const MaterialParams& material) {
  const auto p = slice_propagator(potential, width, energy, material);
  ChannelTransferMatrix t;
  for (int j = 0; j < 3; ++j) {
    t.m(j, j) = p[0];
    t.m(j, 3 + j) = p[1];
    t.m(3 + j, j) = p[2];
    t.m(3 + j, 3 + j) = p[3];
  }
  return t;
}

OracleResult oracle_solve(const ScatteringProblem& p, int slices) {
  p.validate();
  const RampBasisParams ramp = ramp_params(p);
  if (!ramp.degenerate && ramp.u_at(p.separation) > kOracleMaxTunnelingArgument)
    throw NotApplicable("oracle_solve: u(x0) = " + std::to_string(ramp.u_at(p.separation)) +
                        " is beyond the trusted tunneling range");
  const SliceStack stack = SliceStack::midpoint(p, slices);
  const double g = delta_strength(p.coupling, p.material);

  // Slices are channel independent, so their (backward) product is a scalar
  // 2x2 propagator.
  std::array<cplx, 4> acc{1.0, 0.0, 0.0, 1.0};
  for (std::size_t i = stack.size(); i-- > 0;) {
    // Prepend slice i (walking from x0 toward 0): acc <- S_i^{-1} acc.
    const auto s = slice_propagator(stack.potential[i], -stack.width, p.energy, p.material);
    acc = {s[0] * acc[0] + s[1] * acc[2], s[0] * acc[1] + s[1] * acc[3],
           s[2] * acc[0] + s[3] * acc[2], s[2] * acc[1] + s[3] * acc[3]};
  }
  ChannelTransferMatrix ramp_back;
  for (int j = 0; j < 3; ++j) {
    ramp_back.m(j, j) = acc[0];
    ramp_back.m(j, 3 + j) = acc[1];
    ramp_back.m(3 + j, j) = acc[2];
    ramp_back.m(3 + j, 3 + j) = acc[3];
  }
  // State at 0- from state at x0+.
  const ChannelTransferMatrix back = delta_transfer(exchange_matrix(2, p.basis), -g)
                                         .then(ramp_back)
                                         .then(delta_transfer(exchange_matrix(1, p.basis), -g));

  OracleResult out;
  out.k = incident_wavenumber(p.energy, p.material);
  const double gap = p.energy - p.ramp_height;
  out.q = std::abs(gap) < kThresholdWindow ? cplx{0.0}
                                           : transmitted_wavenumber(p.energy, p.ramp_height,
                                                                    p.material);
  const double k = out.k;
  const cplx q = out.q;

  // Unknowns (r_0..2, tau_0..2). On the left psi = a + r, psi' = ik(a - r);
  // on the right psi = tau, psi' = iq tau.
  //   top:    Back_top [tau; iq tau] - r = a
  //   bottom: Back_bot [tau; iq tau] + ik r = ik a
  ComplexMatrix sys(6);
  ComplexVector rhs(6);
  const auto& a = p.incoming.amplitudes();
  for (int i = 0; i < 6; ++i) {
    for (int l = 0; l < 3; ++l)
      sys(i, 3 + l) = back.m(i, l) + back.m(i, 3 + l) * kI * q;
    const int j = i % 3;
    if (i < 3) {
      sys(i, j) = -1.0;
      rhs[i] = a[j];
    } else {
      sys(i, j) = kI * k;
      rhs[i] = kI * k * a[j];
    }
  }
  const ComplexVector x = lu_solve(sys, rhs);
  double refl = 0.0, trans = 0.0;
  const bool propagating = gap >= kThresholdWindow;
  for (int j = 0; j < 3; ++j) {
    out.r[j] = x[j];
    out.tau_edge[j] = x[3 + j];
    refl += std::norm(out.r[j]);
    if (propagating) {
      out.t[j] = std::sqrt(q.real() / k) * out.tau_edge[j] * std::exp(-kI * q * p.separation);
      trans += std::norm(out.t[j]);
    }
  }
  out.flux_residual = std::abs(refl + trans - 1.0);
  return out;
}

} // namespace spinscat
