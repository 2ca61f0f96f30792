#pragma once

#include <optional>
#include <vector>

#include "spinscat/linalg.hpp"
#include "spinscat/scattering.hpp"

namespace spinscat {

/// Post-selection applied to the scattered electron.
enum class Protocol { SpinCharge, Charge, None };
enum class Outcome { Transmitted, Reflected, Unconditioned };

const char* to_string(Protocol p);
const char* to_string(Outcome o);
Protocol parse_protocol(const std::string& name); // spin_charge | charge | none

/// State of the two impurity spins, basis |uu>, |ud>, |du>, |dd>
/// (impurity 1 (x) impurity 2).
class ImpurityDensityMatrix {
public:
  ImpurityDensityMatrix() : m_(4) {}
  /// Wraps without validation; call validate() to check the invariants.
  explicit ImpurityDensityMatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double purity() const; // Tr rho^2
  double min_eigenvalue() const;
  /// Throws InvalidParameter unless Hermitian, unit trace (1e-10) and PSD (-1e-10).
  void validate() const;

private:
  ComplexMatrix m_;
};

struct ProtocolResult {
  Protocol protocol = Protocol::None;
  Outcome outcome = Outcome::Unconditioned;
  bool feasible = false;
  /// Empty when the outcome cannot occur.
  std::optional<double> concurrence;
  double success_probability = 0.0;
  ImpurityDensityMatrix rho;
};

/// Channels whose electron spin differs from the incoming electron spin.
struct SpinFlipProjection {
  std::vector<int> flipped;
  std::vector<int> unflipped;
};

/// Throws InvalidParameter if the incoming state mixes electron spins.
SpinFlipProjection spin_flip_projection(const SpinChannelBasis& basis,
                                        const ChannelAmplitudes& incoming);

/// Probability below which an outcome is reported infeasible.
inline constexpr double kFeasibilityFloor = 1e-14;

/// Electron detected on one side with its spin flipped.
ProtocolResult protocol_spin_charge(const WaveCoefficients& coeffs, Outcome outcome);
/// Electron detected on one side, spin not measured.
ProtocolResult protocol_charge(const WaveCoefficients& coeffs, Outcome outcome);
/// No detection; reflected and transmitted branches mixed.
ProtocolResult protocol_none(const WaveCoefficients& coeffs);

/// max(0, l1 - l2 - l3 - l4) with l_i the eigenvalues of
/// sqrt(sqrt(rho) rho~ sqrt(rho)), rho~ = (sy x sy) rho* (sy x sy).
double concurrence_wootters(const ImpurityDensityMatrix& rho);

/// 2 |rho_{ud,du}| for states whose only nonzero entries are the |uu>, |ud>,
/// |du> populations and the |ud>-|du> coherence. Throws FormMismatch
/// otherwise.
double concurrence_analytic(const ImpurityDensityMatrix& rho);

} // namespace spinscat
