#include <doctest.h>

#include <cmath>
#include <random>

#include "spinscat/errors.hpp"
#include "spinscat/protocols.hpp"

using namespace spinscat;
using doctest::Approx;

namespace {

const double kS = std::sqrt(0.5);

WaveCoefficients with_amplitudes(ChannelAmplitudes r, ChannelAmplitudes t) {
  WaveCoefficients w;
  w.r = r;
  w.t = t;
  w.incoming = {0.0, 0.0, 1.0};
  w.regime = Regime::Propagating;
  return w;
}

ImpurityDensityMatrix pure(const std::array<cplx, 4>& psi) {
  ComplexMatrix m(4);
  double n = 0.0;
  for (const cplx& z : psi) n += std::norm(z);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]) / n;
  return ImpurityDensityMatrix(m);
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

} // namespace

TEST_CASE("Wootters concurrence on textbook states") {
  CHECK(concurrence_wootters(pure({kS, 0, 0, kS})) == Approx(1.0).epsilon(1e-12));
  CHECK(concurrence_wootters(pure({0, kS, -kS, 0})) == Approx(1.0).epsilon(1e-12));
  CHECK(concurrence_wootters(pure({1, 0, 0, 0})) == 0.0);
  // product of two arbitrary qubits
  const cplx a0(0.6, 0.1), a1(0.2, -0.5), b0(0.3, 0.3), b1(-0.7, 0.2);
  CHECK(concurrence_wootters(pure({a0 * b0, a0 * b1, a1 * b0, a1 * b1})) <= 1e-12);

  // Werner: p |Psi-><Psi-| + (1 - p) I / 4 -> max(0, (3p - 1) / 2)
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    ComplexMatrix m = cplx(p) * pure({0, kS, -kS, 0}).matrix();
    for (int i = 0; i < 4; ++i) m(i, i) += (1.0 - p) / 4.0;
    const ImpurityDensityMatrix rho(m);
    CHECK_NOTHROW(rho.validate());
    CHECK(concurrence_wootters(rho) == Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-12));
  }
}

TEST_CASE("pure-state concurrence equals 2|ad - bc|") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<cplx, 4> psi;
    double n = 0.0;
    for (auto& z : psi) z = {g(rng), g(rng)}, n += std::norm(z);
    const double want = 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]) / n;
    CHECK(concurrence_wootters(pure(psi)) == Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(pure({1, 2, 3, 4}).validate());
  ComplexMatrix m = ComplexMatrix::identity(4);
  CHECK_THROWS_AS(ImpurityDensityMatrix(m).validate(), InvalidParameter); // trace 4
  m = cplx(0.25) * m;
  m(0, 1) = cplx(0, 0.1);
  CHECK_THROWS_AS(ImpurityDensityMatrix(m).validate(), InvalidParameter); // not Hermitian
  const std::vector<cplx> d{0.6, 0.6, -0.2, 0.0};
  CHECK_THROWS_AS(ImpurityDensityMatrix(ComplexMatrix::diagonal(d)).validate(), InvalidParameter);
  CHECK_THROWS_AS(ImpurityDensityMatrix(ComplexMatrix(3)), InvalidParameter);
  CHECK_THROWS_AS(concurrence_wootters(ImpurityDensityMatrix(ComplexMatrix::diagonal(d))),
                  NotPositiveSemidefinite);
}

TEST_CASE("analytic form") {
  const std::vector<cplx> d{0.5, 0.25, 0.25, 0.0};
  CHECK(concurrence_analytic(ImpurityDensityMatrix(ComplexMatrix::diagonal(d))) == 0.0);
  CHECK(concurrence_analytic(pure({0, 1, 1, 0})) == Approx(1.0));
  CHECK_THROWS_AS(concurrence_analytic(pure({1, 0, 0, 1})), FormMismatch);
  CHECK_THROWS_AS(concurrence_analytic(pure({0, 0, 0, 1})), FormMismatch);
}

TEST_CASE("spin flip projection") {
  const SpinFlipProjection p = spin_flip_projection(SpinChannelBasis::plus_half(), {0, 0, 1});
  CHECK(p.flipped == std::vector<int>{0, 1});
  CHECK(p.unflipped == std::vector<int>{2});
  const SpinFlipProjection q = spin_flip_projection(SpinChannelBasis::plus_half(), {1, 0, 0});
  CHECK(q.flipped == std::vector<int>{2});
  CHECK_THROWS_AS(spin_flip_projection(SpinChannelBasis::plus_half(), {kS, 0, kS}), InvalidParameter);
}

TEST_CASE("spin + charge detection") {
  const ProtocolResult bell = protocol_spin_charge(with_amplitudes({}, {kS, kS, 0}), Outcome::Transmitted);
  CHECK(bell.feasible);
  CHECK(*bell.concurrence == Approx(1.0).epsilon(1e-12));
  CHECK(bell.success_probability == Approx(1.0));

  const ProtocolResult single =
      protocol_spin_charge(with_amplitudes({}, {cplx(0.3, 0.2), 0, 0.5}), Outcome::Transmitted);
  CHECK(*single.concurrence <= 1e-12);

  // general t: C = 2 |t1 t2| / P, pure state in the |ud>, |du> block
  const ChannelAmplitudes t{cplx(0.1, 0.3), cplx(-0.2, 0.05), cplx(0.4, 0.0)};
  const ProtocolResult r = protocol_spin_charge(with_amplitudes({}, t), Outcome::Transmitted);
  const double p = std::norm(t[0]) + std::norm(t[1]);
  CHECK(r.success_probability == Approx(p));
  CHECK(*r.concurrence == Approx(2 * std::abs(t[0] * std::conj(t[1])) / p).epsilon(1e-12));
  CHECK(r.rho.purity() == Approx(1.0).epsilon(1e-12));
  CHECK(r.rho(0, 0) == cplx(0.0));
  CHECK(r.rho(3, 3) == cplx(0.0));
  CHECK(std::abs(r.rho(1, 2) - t[0] * std::conj(t[1]) / p) <= 1e-15);

  const ProtocolResult none = protocol_spin_charge(with_amplitudes({0, 0, 1}, {}), Outcome::Transmitted);
  CHECK_FALSE(none.feasible);
  CHECK_FALSE(none.concurrence.has_value());
  CHECK_THROWS_AS(protocol_spin_charge(with_amplitudes({}, t), Outcome::Unconditioned), InvalidParameter);
}

TEST_CASE("charge detection") {
  CHECK(*protocol_charge(with_amplitudes({}, {kS, kS, 0}), Outcome::Transmitted).concurrence ==
        Approx(1.0));
  const ProtocolResult half = protocol_charge(with_amplitudes({}, {0.5, 0.5, kS}), Outcome::Transmitted);
  CHECK(*half.concurrence == Approx(0.5).epsilon(1e-12));
  CHECK(half.rho(0, 0).real() == Approx(0.5));
  CHECK_THROWS_AS(protocol_charge(with_amplitudes({}, {}), Outcome::Unconditioned), InvalidParameter);
}

TEST_CASE("no detection") {
  const ProtocolResult r = protocol_none(with_amplitudes({kS, -kS, 0}, {}));
  CHECK(*r.concurrence == Approx(1.0).epsilon(1e-12));
  CHECK(r.success_probability == 1.0);
  CHECK(*protocol_none(with_amplitudes({0, 0, 0.6}, {0, 0, 0.8})).concurrence == 0.0);
}

TEST_CASE("protocols on solved configurations") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> v0(-100.0, 400.0), j(0.5, 6.0);
  const double x0s[] = {6.0, 10.0, 100.0};
  for (int trial = 0; trial < 60; ++trial) {
    const ScatteringProblem p =
        ScatteringProblem::from_lab_units(100.0, v0(rng), x0s[trial % 3], j(rng));
    const WaveCoefficients w = solve(p);

    const ProtocolResult ct = protocol_charge(w, Outcome::Transmitted);
    const ProtocolResult cr = protocol_charge(w, Outcome::Reflected);
    const ProtocolResult nd = protocol_none(w);
    CHECK(ct.success_probability + cr.success_probability == Approx(1.0).epsilon(1e-8));

    // rho_none = P_t rho_T + P_r rho_R
    ComplexMatrix mix = cplx(cr.success_probability) * cr.rho.matrix();
    if (ct.feasible) mix = mix + cplx(ct.success_probability) * ct.rho.matrix();
    CHECK(max_abs(mix - nd.rho.matrix()) <= 1e-12);

    std::vector<ProtocolResult> all{ct, cr, nd, protocol_spin_charge(w, Outcome::Transmitted),
                                    protocol_spin_charge(w, Outcome::Reflected)};
    for (const ProtocolResult& r : all) {
      if (!r.feasible) continue;
      CHECK_NOTHROW(r.rho.validate());
      CHECK(*r.concurrence >= 0.0);
      CHECK(*r.concurrence <= 1.0);
      CHECK(r.success_probability <= 1.0);
      CHECK(std::abs(concurrence_analytic(r.rho) - *r.concurrence) <= 1e-10);
    }
    for (Outcome o : {Outcome::Transmitted, Outcome::Reflected}) {
      const ProtocolResult sc = protocol_spin_charge(w, o);
      if (!sc.feasible) continue;
      CHECK(sc.rho.purity() == Approx(1.0).epsilon(1e-10));
      CHECK(*sc.concurrence >= *protocol_charge(w, o).concurrence);
    }
    if (w.regime != Regime::Propagating) {
      CHECK_FALSE(ct.feasible);
      CHECK(cr.success_probability == Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("J = 0 produces no entanglement") {
  const WaveCoefficients w = solve(ScatteringProblem::from_lab_units(100, 50, 6, 0));
  CHECK(*protocol_none(w).concurrence == 0.0);
  CHECK_FALSE(protocol_spin_charge(w, Outcome::Transmitted).feasible);
}

TEST_CASE("near-unit entanglement at the 6 nm optimum") {
  // the optimum of C_none in the effective reflection region
  const WaveCoefficients w = solve(ScatteringProblem::from_lab_units(100, 140.789, 6, 4));
  CHECK(*protocol_none(w).concurrence == Approx(0.98990).epsilon(1e-4));
  CHECK(*protocol_spin_charge(w, Outcome::Reflected).concurrence == Approx(0.99441).epsilon(1e-4));
}
