#include "spinscat/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/float128.hpp>

#include "spinscat/errors.hpp"

namespace spinscat {

namespace {

using quad = boost::multiprecision::float128;

struct SeriesConstants {
  quad c1; // Ai(0)
  quad c2; // -Ai'(0)
  quad sqrt3;
};

// Gamma(2/3) follows from Gamma(1/3) by reflection:
// Gamma(1/3) Gamma(2/3) = pi / sin(pi/3) = 2 pi / sqrt(3).
SeriesConstants make_series_constants() {
  const quad three = 3;
  const quad pi = boost::math::constants::pi<quad>();
  const quad gamma13 = boost::math::tgamma(quad(1) / three);
  const quad sqrt3 = boost::multiprecision::sqrt(three);
  const quad gamma23 = 2 * pi / (sqrt3 * gamma13);
  SeriesConstants c;
  c.c1 = 1 / (boost::multiprecision::pow(three, quad(2) / three) * gamma23);
  c.c2 = 1 / (boost::multiprecision::cbrt(three) * gamma13);
  c.sqrt3 = sqrt3;
  return c;
}

const SeriesConstants& series_constants() {
  static const SeriesConstants c = make_series_constants();
  return c;
}

constexpr int kAsymptoticTerms = 64;

struct AsymptoticCoefficients {
  std::array<double, kAsymptoticTerms> u{};
  std::array<double, kAsymptoticTerms> v{};
};

AsymptoticCoefficients make_asymptotic_coefficients() {
  AsymptoticCoefficients c;
  c.u[0] = 1.0;
  c.v[0] = 1.0;
  for (int k = 1; k < kAsymptoticTerms; ++k) {
    const double kk = k;
    c.u[k] = c.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
             ((2 * kk - 1) * 216.0 * kk);
    c.v[k] = -c.u[k] * (6 * kk + 1) / (6 * kk - 1);
  }
  return c;
}

const AsymptoticCoefficients& asymptotic_coefficients() {
  static const AsymptoticCoefficients c = make_asymptotic_coefficients();
  return c;
}

// Sums coeff[k] * sign^k / zeta^k (optionally only even or odd k) up to the
// smallest term of the divergent series.
double asymptotic_sum(const std::array<double, kAsymptoticTerms>& coeff, double zeta,
                      int first, int stride, double sign_per_stride) {
  double sum = 0.0;
  double prev = INFINITY;
  double sign = 1.0;
  for (int k = first; k < kAsymptoticTerms; k += stride) {
    const double term = sign * coeff[k] / std::pow(zeta, k);
    if (std::abs(term) >= prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev <= 1e-18 * std::abs(sum)) break;
    sign *= sign_per_stride;
  }
  return sum;
}

void check_finite(double u) {
  if (!std::isfinite(u)) throw RangeError("Airy argument must be finite");
}

} // namespace

AiryValues ScaledAiryValues::unscaled() const {
  const double down = std::exp(-exponent);
  const double up = std::exp(exponent);
  return {ai * down, ai_prime * down, bi * up, bi_prime * up};
}

double airy_exponent(double u) { return u > 0.0 ? (2.0 / 3.0) * u * std::sqrt(u) : 0.0; }

namespace detail {

double airy_ai0() { return static_cast<double>(series_constants().c1); }
double airy_minus_ai0_prime() { return static_cast<double>(series_constants().c2); }

// Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g) with
//   f = sum 3^k (1/3)_k x^{3k} / (3k)!,  g = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!.
// Positive arguments cancel catastrophically in Ai (f, g ~ e^zeta while
// Ai ~ e^-zeta), hence the quad-precision accumulation.
AiryValues airy_maclaurin(double u) {
  const SeriesConstants& c = series_constants();
  const quad x = u;
  const quad x3 = x * x * x;

  quad f = 1, g = x;          // series values
  quad df = 0, dg = 1;        // derivative series
  quad tf = 1, tg = x;        // current terms of f, g
  quad tdf = x * x / 2;       // k = 1 term of f'
  quad tdg = x3 / 3;          // k = 1 term of g'
  df += tdf;
  dg += tdg;
  const quad tiny = 1e-34;
  for (int k = 1; k < 200; ++k) {
    const quad k3 = 3 * k;
    tf *= x3 / ((k3 - 1) * k3);
    tg *= x3 / (k3 * (k3 + 1));
    f += tf;
    g += tg;
    if (k >= 2) {
      tdf *= x3 / ((k3 - 1) * (k3 - 3));
      tdg *= x3 / (k3 * (k3 - 2));
      df += tdf;
      dg += tdg;
    }
    const quad scale = abs(f) + abs(g) + abs(df) + abs(dg);
    const quad last = abs(tf) + abs(tg) + abs(tdf) + abs(tdg);
    if (last <= tiny * scale && abs(x3) < (k3 + 3) * (k3 + 4)) break;
  }
  AiryValues out;
  out.ai = static_cast<double>(c.c1 * f - c.c2 * g);
  out.bi = static_cast<double>(c.sqrt3 * (c.c1 * f + c.c2 * g));
  out.ai_prime = static_cast<double>(c.c1 * df - c.c2 * dg);
  out.bi_prime = static_cast<double>(c.sqrt3 * (c.c1 * df + c.c2 * dg));
  return out;
}

ScaledAiryValues airy_asymptotic_positive(double u) {
  const auto& c = asymptotic_coefficients();
  const double zeta = airy_exponent(u);
  const double q = std::sqrt(std::sqrt(u)); // u^{1/4}
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  ScaledAiryValues out;
  out.exponent = zeta;
  out.ai = 0.5 * rpi / q * asymptotic_sum(c.u, zeta, 0, 1, -1.0);
  out.ai_prime = -0.5 * rpi * q * asymptotic_sum(c.v, zeta, 0, 1, -1.0);
  out.bi = rpi / q * asymptotic_sum(c.u, zeta, 0, 1, 1.0);
  out.bi_prime = rpi * q * asymptotic_sum(c.v, zeta, 0, 1, 1.0);
  return out;
}

AiryValues airy_asymptotic_negative(double u) {
  const auto& c = asymptotic_coefficients();
  const double z = -u;
  const double zeta = airy_exponent(z);
  const double q = std::sqrt(std::sqrt(z));
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  // Even/odd parts of the u_k and v_k series with alternating signs.
  const double pu = asymptotic_sum(c.u, zeta, 0, 2, -1.0);
  const double qu = asymptotic_sum(c.u, zeta, 1, 2, -1.0);
  const double pv = asymptotic_sum(c.v, zeta, 0, 2, -1.0);
  const double qv = asymptotic_sum(c.v, zeta, 1, 2, -1.0);
  const double phase = zeta - 0.25 * std::numbers::pi;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  AiryValues out;
  out.ai = rpi / q * (cs * pu + sn * qu);
  out.bi = rpi / q * (-sn * pu + cs * qu);
  out.ai_prime = rpi * q * (sn * pv - cs * qv);
  out.bi_prime = rpi * q * (cs * pv + sn * qv);
  return out;
}

} // namespace detail

AiryValues airy_eval(double u) {
  check_finite(u);
  if (u > kAiryMaxArgument)
    throw RangeError("airy_eval: argument " + std::to_string(u) +
                     " exceeds the unscaled range; use airy_eval_scaled");
  if (std::abs(u) <= detail::kSeriesLimit) return detail::airy_maclaurin(u);
  if (u > 0.0) return detail::airy_asymptotic_positive(u).unscaled();
  return detail::airy_asymptotic_negative(u);
}

ScaledAiryValues airy_eval_scaled(double u) {
  check_finite(u);
  if (u < 0.0) throw RangeError("airy_eval_scaled: argument must be non-negative");
  if (u > detail::kSeriesLimit) return detail::airy_asymptotic_positive(u);
  const AiryValues v = detail::airy_maclaurin(u);
  const double zeta = airy_exponent(u);
  const double up = std::exp(zeta);
  const double down = std::exp(-zeta);
  return {v.ai * up, v.ai_prime * up, v.bi * down, v.bi_prime * down, zeta};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct Vec2 {
  double y, dy;
};

inline Vec2 rhs(double u, Vec2 s) { return {s.dy, u * s.y}; }
inline Vec2 axpy(Vec2 s, double h, std::initializer_list<std::pair<double, Vec2>> ks) {
  for (const auto& [w, k] : ks) {
    s.y += h * w * k.y;
    s.dy += h * w * k.dy;
  }
  return s;
}

} // namespace

OdeState ode_reference(double u_from, double u_to, OdeState initial, double rel_tol) {
  if (!std::isfinite(u_from) || !std::isfinite(u_to))
    throw RangeError("ode_reference: interval must be finite");
  Vec2 s{initial.y, initial.dy};
  if (u_from == u_to || (s.y == 0.0 && s.dy == 0.0)) return initial;

  const double span = u_to - u_from;
  const double dir = span > 0 ? 1.0 : -1.0;
  double u = u_from;
  double h = dir * std::min(0.01, std::abs(span));
  const double h_min = 1e-13 * std::max(1.0, std::abs(span));
  Vec2 k1 = rhs(u, s);
  while (dir * (u_to - u) > 0.0) {
    if (dir * (u + h - u_to) > 0.0) h = u_to - u;
    const Vec2 k2 = rhs(u + c2 * h, axpy(s, h, {{a21, k1}}));
    const Vec2 k3 = rhs(u + c3 * h, axpy(s, h, {{a31, k1}, {a32, k2}}));
    const Vec2 k4 = rhs(u + c4 * h, axpy(s, h, {{a41, k1}, {a42, k2}, {a43, k3}}));
    const Vec2 k5 = rhs(u + c5 * h, axpy(s, h, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}}));
    const Vec2 k6 =
        rhs(u + h, axpy(s, h, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4}, {a65, k5}}));
    const Vec2 next = axpy(s, h, {{b1, k1}, {b3, k3}, {b4, k4}, {b5, k5}, {b6, k6}});
    const Vec2 k7 = rhs(u + h, next);
    const Vec2 err = axpy({0.0, 0.0}, h,
                          {{e1, k1}, {e3, k3}, {e4, k4}, {e5, k5}, {e6, k6}, {e7, k7}});
    // Error is measured against the size of the whole state so that nodes of
    // y (or y') do not stall the controller.
    const double size = std::max(std::hypot(s.y, s.dy), std::hypot(next.y, next.dy));
    const double ratio = std::hypot(err.y, err.dy) / (rel_tol * size + 1e-300);
    if (ratio <= 1.0) {
      u += h;
      s = next;
      k1 = k7;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < h_min && dir * (u_to - u) > h_min)
      throw StepUnderflow("ode_reference: step size underflow at u = " + std::to_string(u));
  }
  return {s.y, s.dy};
}

} // namespace spinscat
