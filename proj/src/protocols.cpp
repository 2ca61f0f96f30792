#include "spinscat/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinscat/errors.hpp"

namespace spinscat {

const char* to_string(Protocol p) {
  switch (p) {
  case Protocol::SpinCharge: return "spin_charge";
  case Protocol::Charge: return "charge";
  case Protocol::None: return "none";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
  case Outcome::Transmitted: return "transmitted";
  case Outcome::Reflected: return "reflected";
  case Outcome::Unconditioned: return "unconditioned";
  }
  return "?";
}

Protocol parse_protocol(const std::string& name) {
  if (name == "spin_charge") return Protocol::SpinCharge;
  if (name == "charge") return Protocol::Charge;
  if (name == "none") return Protocol::None;
  throw InvalidParameter("unknown protocol '" + name + "'");
}

ImpurityDensityMatrix::ImpurityDensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.size() != 4) throw InvalidParameter("impurity density matrix must be 4x4");
}

double ImpurityDensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double ImpurityDensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(m_).back(); }

void ImpurityDensityMatrix::validate() const {
  if (m_.hermiticity_defect() > 1e-12)
    throw InvalidParameter("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > 1e-10)
    throw InvalidParameter("density matrix trace " + std::to_string(trace()) + " != 1");
  if (min_eigenvalue() < -1e-10) throw InvalidParameter("density matrix is not PSD");
}

SpinFlipProjection spin_flip_projection(const SpinChannelBasis& basis,
                                        const ChannelAmplitudes& incoming) {
  std::optional<Spin> electron;
  for (int j = 0; j < 3; ++j) {
    if (incoming[j] == cplx{}) continue;
    if (electron && *electron != basis[j].electron)
      throw InvalidParameter("incoming spinor has no definite electron spin; "
                             "spin-flip post-selection is undefined");
    electron = basis[j].electron;
  }
  if (!electron) throw InvalidParameter("incoming spinor is zero");
  SpinFlipProjection proj;
  for (int j = 0; j < 3; ++j)
    (basis[j].electron == *electron ? proj.unflipped : proj.flipped).push_back(j);
  return proj;
}

namespace {

// Adds the impurity state left behind by the electron amplitudes `amp` on
// `channels`, traced over the electron spin: branches with different
// electron spin add incoherently.
void accumulate_branch(ComplexMatrix& rho, const SpinChannelBasis& basis,
                       const ChannelAmplitudes& amp, const std::vector<int>& channels) {
  for (Spin e : {Spin::Up, Spin::Down}) {
    std::array<cplx, 4> phi{};
    for (int j : channels)
      if (basis[j].electron == e) phi[basis[j].impurity_index()] += amp[j];
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) rho(i, k) += phi[i] * std::conj(phi[k]);
  }
}

double weight(const ChannelAmplitudes& amp, const std::vector<int>& channels) {
  double w = 0.0;
  for (int j : channels) w += std::norm(amp[j]);
  return w;
}

const ChannelAmplitudes& branch(const WaveCoefficients& w, Outcome outcome) {
  switch (outcome) {
  case Outcome::Transmitted: return w.t;
  case Outcome::Reflected: return w.r;
  case Outcome::Unconditioned: break;
  }
  throw InvalidParameter("outcome 'unconditioned' is only meaningful for the no-detection protocol");
}

ProtocolResult conditioned(Protocol protocol, const WaveCoefficients& w, Outcome outcome,
                           const std::vector<int>& channels) {
  const ChannelAmplitudes& amp = branch(w, outcome);
  ProtocolResult res;
  res.protocol = protocol;
  res.outcome = outcome;
  res.success_probability = std::clamp(weight(amp, channels), 0.0, 1.0);
  if (res.success_probability < kFeasibilityFloor) return res;
  ComplexMatrix rho(4);
  accumulate_branch(rho, w.basis, amp, channels);
  res.rho = ImpurityDensityMatrix((1.0 / weight(amp, channels)) * rho);
  res.feasible = true;
  res.concurrence = concurrence_wootters(res.rho);
  return res;
}

} // namespace

ProtocolResult protocol_spin_charge(const WaveCoefficients& w, Outcome outcome) {
  const SpinFlipProjection proj = spin_flip_projection(w.basis, w.incoming);
  return conditioned(Protocol::SpinCharge, w, outcome, proj.flipped);
}

ProtocolResult protocol_charge(const WaveCoefficients& w, Outcome outcome) {
  return conditioned(Protocol::Charge, w, outcome, {0, 1, 2});
}

ProtocolResult protocol_none(const WaveCoefficients& w) {
  ComplexMatrix rho(4);
  accumulate_branch(rho, w.basis, w.r, {0, 1, 2});
  accumulate_branch(rho, w.basis, w.t, {0, 1, 2});
  ProtocolResult res;
  res.protocol = Protocol::None;
  res.outcome = Outcome::Unconditioned;
  res.feasible = true;
  res.success_probability = 1.0;
  res.rho = ImpurityDensityMatrix(std::move(rho));
  res.concurrence = concurrence_wootters(res.rho);
  return res;
}

// The eigenvalues l_i of sqrt(sqrt(rho) rho~ sqrt(rho)) are the singular
// values of B = sqrt(rho~) sqrt(rho), and those are the non-negative
// eigenvalues of the Hermitian dilation [[0, B], [B^H, 0]]. Reading them off
// the dilation avoids square roots of rounding-level eigenvalues, which
// would otherwise put ~1e-8 noise into l_2 for pure and rank-deficient
// states.
double concurrence_wootters(const ImpurityDensityMatrix& rho) {
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  // sigma_y (x) sigma_y is real, antidiagonal: (-1, 1, 1, -1).
  static constexpr double kYY[4] = {-1.0, 1.0, 1.0, -1.0};
  ComplexMatrix root_tilde(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      root_tilde(i, j) = kYY[i] * kYY[j] * std::conj(root(3 - i, 3 - j));
  const ComplexMatrix b = root_tilde * root;
  ComplexMatrix dilation(8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = b(i, j);
      dilation(4 + j, i) = std::conj(b(i, j));
    }
  const std::vector<double> ev = hermitian_eigenvalues(dilation);
  double lambda[4];
  for (int i = 0; i < 4; ++i) lambda[i] = std::max(ev[i], 0.0);
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double concurrence_analytic(const ImpurityDensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  const double scale = std::max(std::abs(rho.trace()), 1e-300);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool allowed = (i == j && i < 3) || (i == 1 && j == 2) || (i == 2 && j == 1);
      if (!allowed && std::abs(m(i, j)) > 1e-14 * scale)
        throw FormMismatch("concurrence_analytic: entry (" + std::to_string(i) + "," +
                           std::to_string(j) + ") is outside the supported block form");
    }
  return std::clamp(2.0 * std::abs(m(1, 2)), 0.0, 1.0);
}

} // namespace spinscat
