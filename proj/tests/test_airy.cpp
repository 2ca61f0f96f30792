#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinscat/airy.hpp"
#include "spinscat/errors.hpp"

using namespace spinscat;
using doctest::Approx;

TEST_CASE("values at the origin") {
  const AiryValues v = airy_eval(0.0);
  CHECK(v.ai == Approx(0.3550280539).epsilon(1e-10));
  CHECK(v.bi == Approx(0.6149266274).epsilon(1e-10));
  CHECK(v.ai_prime == Approx(-0.2588194038).epsilon(1e-10));
  CHECK(v.bi_prime == Approx(0.4482883574).epsilon(1e-10));
}

TEST_CASE("first zero of Ai") {
  CHECK(std::abs(airy_eval(-2.33810741).ai) < 1e-8);
  // Bi's first zero, outside the series range check too
  CHECK(std::abs(airy_eval(-1.17371322).bi) < 1e-8);
}

TEST_CASE("reference values against tabulated digits") {
  // 30-digit reference values
  CHECK(airy_eval(1.0).ai == Approx(0.1352924163128814).epsilon(1e-13));
  CHECK(airy_eval(1.0).bi == Approx(1.207423594952871).epsilon(1e-13));
  CHECK(airy_eval(-5.0).ai == Approx(0.3507610090241142).epsilon(1e-12));
  CHECK(airy_eval(-5.0).bi == Approx(-0.1383691349016005).epsilon(1e-12));
  CHECK(airy_eval(10.0).ai == Approx(1.104753255289869e-10).epsilon(1e-12));
  CHECK(airy_eval(10.0).bi == Approx(455641153.5482251).epsilon(1e-12));
}

TEST_CASE("Wronskian on the unscaled range") {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = -60.0 + 90.0 * i / 9999.0;
    worst = std::max(worst, std::abs(airy_eval(u).wronskian() * std::numbers::pi - 1.0));
  }
  CHECK(worst <= 1e-10);
  CHECK(airy_eval(5.0).wronskian() == Approx(std::numbers::inv_pi).epsilon(1e-12));
}

TEST_CASE("scaled values") {
  const ScaledAiryValues z = airy_eval_scaled(0.0);
  const AiryValues v = airy_eval(0.0);
  CHECK(z.exponent == 0.0);
  CHECK(z.ai == Approx(v.ai).epsilon(1e-15));
  CHECK(z.bi_prime == Approx(v.bi_prime).epsilon(1e-15));

  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double u = 0.1 * i;
    const ScaledAiryValues s = airy_eval_scaled(u);
    worst = std::max(worst, std::abs(s.wronskian() * std::numbers::pi - 1.0));
    for (double m : {s.ai, s.bi, std::abs(s.ai_prime), s.bi_prime}) {
      CHECK(m >= 1e-3 * std::min(1.0, 1.0 / std::sqrt(std::sqrt(u + 1.0))) );
      CHECK(m <= 1e3);
    }
    if (u <= kAiryMaxArgument) {
      const AiryValues d = airy_eval(u), b = s.unscaled();
      CHECK(std::abs(b.ai / d.ai - 1.0) <= 1e-10);
      CHECK(std::abs(b.bi / d.bi - 1.0) <= 1e-10);
      CHECK(std::abs(b.ai_prime / d.ai_prime - 1.0) <= 1e-10);
      CHECK(std::abs(b.bi_prime / d.bi_prime - 1.0) <= 1e-10);
    }
  }
  CHECK(worst <= 1e-10);
  CHECK(airy_exponent(4.0) == Approx(16.0 / 3.0));
  CHECK(airy_exponent(-4.0) == 0.0);
}

TEST_CASE("range gates") {
  CHECK_THROWS_AS(airy_eval(30.5), RangeError);
  CHECK_THROWS_AS(airy_eval(NAN), RangeError);
  CHECK_THROWS_AS(airy_eval_scaled(-0.1), RangeError);
  CHECK_NOTHROW(airy_eval(-200.0));
}

TEST_CASE("series and asymptotic branches overlap") {
  // one-unit window around the switch point on both sides
  for (double u = detail::kSeriesLimit - 0.5; u <= detail::kSeriesLimit + 0.5; u += 0.05) {
    const AiryValues s = detail::airy_maclaurin(u);
    const AiryValues a = detail::airy_asymptotic_positive(u).unscaled();
    CHECK(std::abs(s.ai / a.ai - 1.0) <= 1e-9);
    CHECK(std::abs(s.bi / a.bi - 1.0) <= 1e-9);
    CHECK(std::abs(s.ai_prime / a.ai_prime - 1.0) <= 1e-9);
    CHECK(std::abs(s.bi_prime / a.bi_prime - 1.0) <= 1e-9);

    const AiryValues sn = detail::airy_maclaurin(-u);
    const AiryValues an = detail::airy_asymptotic_negative(-u);
    // oscillatory side: relative to the envelope
    const double env = std::sqrt(an.ai * an.ai + an.bi * an.bi);
    const double envp = std::sqrt(an.ai_prime * an.ai_prime + an.bi_prime * an.bi_prime);
    CHECK(std::abs(sn.ai - an.ai) <= 1e-9 * env);
    CHECK(std::abs(sn.bi - an.bi) <= 1e-9 * env);
    CHECK(std::abs(sn.ai_prime - an.ai_prime) <= 1e-9 * envp);
    CHECK(std::abs(sn.bi_prime - an.bi_prime) <= 1e-9 * envp);
  }
}

TEST_CASE("monotonicity for u > 0") {
  AiryValues prev = airy_eval(0.0);
  for (int i = 1; i <= 3000; ++i) {
    const AiryValues v = airy_eval(0.01 * i);
    CHECK(v.ai > 0.0);
    CHECK(v.ai < prev.ai);
    CHECK(v.bi > prev.bi);
    prev = v;
  }
}

TEST_CASE("ODE reference") {
  const AiryValues o = airy_eval(0.0);
  CHECK(ode_reference(0.0, 1.0, {o.ai, o.ai_prime}).y == Approx(0.1352924163).epsilon(1e-9));
  CHECK(std::abs(ode_reference(0.0, -5.0, {o.bi, o.bi_prime}).y - airy_eval(-5.0).bi) <= 1e-8);
  const OdeState z = ode_reference(0.0, 7.0, {0.0, 0.0});
  CHECK(z.y == 0.0);
  CHECK(z.dy == 0.0);
  const OdeState back = ode_reference(3.0, 3.0, {1.5, -2.0});
  CHECK(back.y == 1.5);
}

TEST_CASE("ODE agreement on [-40, 20]") {
  const AiryValues o = airy_eval(0.0);
  OdeState ai{o.ai, o.ai_prime}, bi{o.bi, o.bi_prime};
  double prev = 0.0, worst = 0.0;
  for (int i = 1; i <= 80; ++i) {
    const double u = -0.5 * i;
    ai = ode_reference(prev, u, ai, 1e-12);
    bi = ode_reference(prev, u, bi, 1e-12);
    prev = u;
    const AiryValues e = airy_eval(u);
    const double env = std::max(1.0, std::hypot(e.ai, e.bi));
    worst = std::max({worst, std::abs(ai.y - e.ai) / env, std::abs(bi.y - e.bi) / env});
  }
  bi = {o.bi, o.bi_prime};
  prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double u = 0.5 * i;
    bi = ode_reference(prev, u, bi, 1e-12);
    prev = u;
    worst = std::max(worst, std::abs(bi.y / airy_eval(u).bi - 1.0));
  }
  // Ai is recessive going forward; shoot it back from u = 20
  const AiryValues end = airy_eval(20.0);
  const OdeState at0 = ode_reference(20.0, 0.0, {end.ai, end.ai_prime}, 1e-12);
  worst = std::max(worst, std::abs(at0.y / o.ai - 1.0));
  CHECK(worst <= 1e-8);
}
