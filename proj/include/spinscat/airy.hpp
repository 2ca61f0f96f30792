#pragma once

namespace spinscat {

/// Ai, Bi and their derivatives at a real argument.
struct AiryValues {
  double ai = 0.0;
  double ai_prime = 0.0;
  double bi = 0.0;
  double bi_prime = 0.0;

  /// Ai Bi' - Ai' Bi, identically 1/pi.
  double wronskian() const { return ai * bi_prime - ai_prime * bi; }
};

/// Exponent-scaled values for u >= 0:
///   Ai = ai * exp(-exponent), Bi = bi * exp(+exponent), exponent = (2/3) u^{3/2}.
/// Derivatives carry the same factors.
struct ScaledAiryValues {
  double ai = 0.0;
  double ai_prime = 0.0;
  double bi = 0.0;
  double bi_prime = 0.0;
  double exponent = 0.0;

  double wronskian() const { return ai * bi_prime - ai_prime * bi; }
  /// Multiplies the factors back in; overflows past u ~ 100.
  AiryValues unscaled() const;
};

/// Largest positive argument accepted by airy_eval. Negative arguments are
/// unbounded (the functions oscillate with decaying amplitude there).
inline constexpr double kAiryMaxArgument = 30.0;

/// Throws RangeError for u > kAiryMaxArgument or non-finite u.
AiryValues airy_eval(double u);

/// Throws RangeError for u < 0 or non-finite u.
ScaledAiryValues airy_eval_scaled(double u);

/// (2/3) u^{3/2} for u >= 0, else 0.
double airy_exponent(double u);

struct OdeState {
  double y = 0.0;
  double dy = 0.0;
};

/// Integrates y'' = u y from u_from to u_to with an embedded Dormand-Prince
/// 5(4) pair under a relative local error tolerance. Independent of the
/// series/asymptotic evaluators; used to cross-check them.
/// Throws StepUnderflow if the controller cannot meet the tolerance.
OdeState ode_reference(double u_from, double u_to, OdeState initial,
                       double rel_tol = 1e-10);

namespace detail {

/// |u| at which the evaluators switch from the Maclaurin series to the
/// asymptotic expansions.
inline constexpr double kSeriesLimit = 8.0;

/// Maclaurin series evaluated in quad precision. Valid for any u, but the
/// term count grows like |u|^{3/2}; intended for |u| <= ~10.
AiryValues airy_maclaurin(double u);

/// Exponent-scaled asymptotic expansion for large positive u (u >= ~6).
ScaledAiryValues airy_asymptotic_positive(double u);

/// Modulus/phase asymptotic expansion for large negative u (u <= -6).
AiryValues airy_asymptotic_negative(double u);

/// Ai(0), -Ai'(0), computed from Gamma(1/3) and the reflection formula.
double airy_ai0();
double airy_minus_ai0_prime();

} // namespace detail

} // namespace spinscat
