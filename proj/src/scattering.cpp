#include "spinscat/scattering.hpp"

#include <cmath>
#include <string>

#include "spinscat/airy.hpp"
#include "spinscat/errors.hpp"

namespace spinscat {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(double v) { return std::isfinite(v); }

Regime regime_of(const ScatteringProblem& p) {
  const double gap = p.energy - p.ramp_height;
  if (std::abs(gap) < kThresholdWindow) return Regime::Threshold;
  return gap > 0.0 ? Regime::Propagating : Regime::Evanescent;
}

cplx outgoing_wavenumber(const ScatteringProblem& p) {
  if (regime_of(p) == Regime::Threshold) return 0.0;
  return transmitted_wavenumber(p.energy, p.ramp_height, p.material);
}

} // namespace

ScatteringProblem ScatteringProblem::from_lab_units(double energy_mev, double ramp_mev,
                                                    double separation_nm,
                                                    double coupling_ev_angstrom,
                                                    double mass_ratio) {
  ScatteringProblem p;
  p.energy = mev_to_ev(energy_mev);
  p.ramp_height = mev_to_ev(ramp_mev);
  p.separation = nm_to_angstrom(separation_nm);
  p.coupling = coupling_ev_angstrom;
  p.material.mass_ratio = mass_ratio;
  p.validate();
  return p;
}

void ScatteringProblem::validate() const {
  if (!(energy > 0.0) || !finite(energy))
    throw InvalidParameter("energy must be positive and finite");
  if (!(separation > 0.0) || !finite(separation))
    throw InvalidParameter("impurity separation must be positive and finite");
  if (!finite(ramp_height)) throw InvalidParameter("ramp height must be finite");
  if (!finite(coupling)) throw InvalidParameter("coupling must be finite");
  kinetic_factor(material); // throws on a bad mass ratio
}

RampBasisParams ramp_params(const ScatteringProblem& p) {
  RampBasisParams r;
  r.energy = p.energy;
  r.slope = p.ramp_height / p.separation;
  if (std::abs(p.ramp_height) < kRampDegeneracyThreshold) {
    r.degenerate = true;
    return r;
  }
  const double kf = kinetic_factor(p.material);
  r.alpha = std::cbrt(p.separation * p.separation /
                      (kf * p.ramp_height * p.ramp_height));
  return r;
}

double middle_bi_exponent(const ScatteringProblem& p) {
  const RampBasisParams ramp = ramp_params(p);
  if (ramp.degenerate) return 0.0;
  return airy_exponent(std::max(ramp.u_at(p.separation), 0.0));
}

namespace {

MiddleBasis middle_basis_impl(double x, const ScatteringProblem& p, const RampBasisParams& ramp,
                              double bi_exponent) {
  MiddleBasis m;
  m.bi_exponent = bi_exponent;
  if (ramp.degenerate) {
    const double k = incident_wavenumber(p.energy, p.material);
    const cplx fwd = std::exp(kI * k * x);
    const cplx bwd = std::exp(-kI * k * x);
    m.f1 = fwd;
    m.df1 = kI * k * fwd;
    m.f2 = bwd;
    m.df2 = -kI * k * bwd;
    return m;
  }
  const double u = ramp.u_at(x);
  const double d = ramp.du_dx();
  if (u < 0.0) {
    const AiryValues a = airy_eval(u);
    const double shrink = std::exp(-bi_exponent);
    m.f1 = a.ai;
    m.df1 = a.ai_prime * d;
    m.f2 = a.bi * shrink;
    m.df2 = a.bi_prime * d * shrink;
  } else {
    const ScaledAiryValues s = airy_eval_scaled(u);
    const double ai_factor = std::exp(-s.exponent);
    const double bi_factor = std::exp(s.exponent - bi_exponent);
    m.f1 = s.ai * ai_factor;
    m.df1 = s.ai_prime * d * ai_factor;
    m.f2 = s.bi * bi_factor;
    m.df2 = s.bi_prime * d * bi_factor;
  }
  return m;
}

} // namespace

MiddleBasis middle_basis(double x, const ScatteringProblem& p) {
  if (!(x >= 0.0 && x <= p.separation))
    throw InvalidParameter("middle_basis: x must lie on the ramp [0, x0]");
  return middle_basis_impl(x, p, ramp_params(p), middle_bi_exponent(p));
}

LinearSystem assemble_system(const ScatteringProblem& p) {
  return assemble_system(p, p.incoming.amplitudes());
}

LinearSystem assemble_system(const ScatteringProblem& p, const ChannelAmplitudes& a) {
  p.validate();
  const RampBasisParams ramp = ramp_params(p);
  const double bi_exponent = middle_bi_exponent(p);
  const MiddleBasis left = middle_basis_impl(0.0, p, ramp, bi_exponent);
  const MiddleBasis right = middle_basis_impl(p.separation, p, ramp, bi_exponent);
  const double k = incident_wavenumber(p.energy, p.material);
  const cplx q = outgoing_wavenumber(p);
  const double g = delta_strength(p.coupling, p.material);
  const ExchangeMatrix m1 = exchange_matrix(1, p.basis);
  const ExchangeMatrix m2 = exchange_matrix(2, p.basis);

  LinearSystem sys{ComplexMatrix(12), ComplexVector(12), bi_exponent};
  ComplexMatrix& A = sys.matrix;
  for (int j = 0; j < 3; ++j) {
    const std::size_t row = 4 * j;
    const std::size_t R = j, B = 3 + j, C = 6 + j, T = 9 + j;

    // a_j + r_j = b_j f1(0) + c_j f2(0)
    A(row, R) = 1.0;
    A(row, B) = -left.f1;
    A(row, C) = -left.f2;
    sys.rhs[row] = -a[j];

    // psi'(0+) - psi'(0-) = g (M1 psi(0))_j
    A(row + 1, B) = left.df1;
    A(row + 1, C) = left.df2;
    A(row + 1, R) += kI * k;
    cplx source = kI * k * a[j];
    for (int l = 0; l < 3; ++l) {
      A(row + 1, l) -= g * m1(j, l);
      source += g * m1(j, l) * a[l];
    }
    sys.rhs[row + 1] = source;

    // b_j f1(x0) + c_j f2(x0) = tau_edge_j
    A(row + 2, B) = right.f1;
    A(row + 2, C) = right.f2;
    A(row + 2, T) = -1.0;

    // psi'(x0+) - psi'(x0-) = g (M2 psi(x0))_j
    A(row + 3, T) += kI * q;
    A(row + 3, B) = -right.df1;
    A(row + 3, C) = -right.df2;
    for (int l = 0; l < 3; ++l) A(row + 3, 9 + l) -= g * m2(j, l);
  }
  return sys;
}

double WaveCoefficients::reflection_probability() const {
  double s = 0.0;
  for (const auto& z : r) s += std::norm(z);
  return s;
}

double WaveCoefficients::transmission_probability() const {
  double s = 0.0;
  for (const auto& z : t) s += std::norm(z);
  return s;
}

namespace {

const char* regime_name(Regime r) {
  switch (r) {
  case Regime::Propagating: return "propagating";
  case Regime::Threshold: return "threshold";
  case Regime::Evanescent: return "deep tunneling / evanescent";
  }
  return "?";
}

} // namespace

WaveCoefficients solve_amplitudes(const ScatteringProblem& p, const ChannelAmplitudes& a) {
  const LinearSystem sys = assemble_system(p, a);
  const Regime regime = regime_of(p);
  const LuFactorization lu(sys.matrix);
  const double cond = sys.matrix.norm_inf() * lu.inverse_norm_inf();
  if (!(cond <= kMaxCondition))
    throw IllConditioned(std::string("scattering system is ill-conditioned in the ") +
                             regime_name(regime) + " regime (condition estimate " +
                             std::to_string(cond) + ")",
                         cond);
  const ComplexVector x = lu.solve(sys.rhs);

  WaveCoefficients w;
  w.k = incident_wavenumber(p.energy, p.material);
  w.q = outgoing_wavenumber(p);
  w.regime = regime;
  w.condition = cond;
  w.basis = p.basis;
  w.incoming = a;
  const cplx back_phase = std::exp(-kI * w.q * p.separation);
  double incoming_norm = 0.0;
  double transmitted_flux = 0.0;
  for (int j = 0; j < 3; ++j) {
    w.r[j] = x[j];
    w.b[j] = {x[3 + j], 0.0};
    w.c[j] = {x[6 + j], -sys.bi_exponent};
    w.tau_edge[j] = x[9 + j];
    w.tau[j] = w.tau_edge[j] * back_phase;
    incoming_norm += std::norm(a[j]);
  }
  if (regime == Regime::Propagating) {
    const double ratio = w.q.real() / w.k;
    const double amp = std::sqrt(ratio);
    for (int j = 0; j < 3; ++j) {
      w.t[j] = amp * w.tau[j];
      transmitted_flux += ratio * std::norm(w.tau_edge[j]);
    }
  }
  w.flux_residual = std::abs(w.reflection_probability() + transmitted_flux - incoming_norm);
  return w;
}

WaveCoefficients solve(const ScatteringProblem& p) {
  return solve_amplitudes(p, p.incoming.amplitudes());
}

ChannelAmplitudes evaluate_wavefunction(const WaveCoefficients& w, const ScatteringProblem& p,
                                        double x) {
  ChannelAmplitudes psi{};
  if (x < 0.0) {
    const cplx fwd = std::exp(kI * w.k * x);
    const cplx bwd = std::exp(-kI * w.k * x);
    for (int j = 0; j < 3; ++j) psi[j] = w.incoming[j] * fwd + w.r[j] * bwd;
  } else if (x <= p.separation) {
    const MiddleBasis m = middle_basis(x, p);
    for (int j = 0; j < 3; ++j) psi[j] = w.b[j].mantissa * m.f1 + w.c[j].mantissa * m.f2;
  } else {
    const cplx phase = std::exp(kI * w.q * (x - p.separation));
    for (int j = 0; j < 3; ++j) psi[j] = w.tau_edge[j] * phase;
  }
  return psi;
}

ChannelAmplitudes evaluate_derivative(const WaveCoefficients& w, const ScatteringProblem& p,
                                      double x, bool from_right) {
  ChannelAmplitudes d{};
  const bool left_region = x < 0.0 || (x == 0.0 && !from_right);
  const bool right_region = x > p.separation || (x == p.separation && from_right);
  if (left_region) {
    const cplx fwd = std::exp(kI * w.k * x);
    const cplx bwd = std::exp(-kI * w.k * x);
    for (int j = 0; j < 3; ++j) d[j] = kI * w.k * (w.incoming[j] * fwd - w.r[j] * bwd);
  } else if (right_region) {
    const cplx phase = std::exp(kI * w.q * (x - p.separation));
    for (int j = 0; j < 3; ++j) d[j] = kI * w.q * w.tau_edge[j] * phase;
  } else {
    const MiddleBasis m = middle_basis(x, p);
    for (int j = 0; j < 3; ++j) d[j] = w.b[j].mantissa * m.df1 + w.c[j].mantissa * m.df2;
  }
  return d;
}

} // namespace spinscat
