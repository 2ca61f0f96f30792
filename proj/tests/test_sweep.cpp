#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spinscat/errors.hpp"
#include "spinscat/io.hpp"
#include "spinscat/sweep.hpp"

using namespace spinscat;
using doctest::Approx;

namespace {

SweepSpec reference_spec(double x0_nm, int points = 401) {
  SweepSpec s;
  s.base = ScatteringProblem::from_lab_units(100.0, 0.0, x0_nm, 4.0);
  s.start = -100.0;
  s.stop = 400.0;
  s.points = points;
  return s;
}

std::string to_csv(const std::vector<SweepRow>& rows, bool dump = false) {
  std::ostringstream s;
  write_csv(s, rows, SweptParameter::RampHeight, dump);
  return s.str();
}

} // namespace

TEST_CASE("spec validation and grid") {
  SweepSpec s = reference_spec(6.0, 2001);
  CHECK_NOTHROW(s.validate());
  CHECK(s.value_at(0) == -100.0);
  CHECK(s.value_at(2000) == 400.0);
  CHECK(s.value_at(800) == 100.0);
  CHECK(s.problem_at(800).ramp_height == Approx(0.1));
  s.points = 1;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
  s.points = 10;
  s.stop = s.start;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);

  SweepSpec x = reference_spec(6.0, 5);
  x.parameter = SweptParameter::Separation;
  x.start = 2.0, x.stop = 10.0;
  CHECK(x.problem_at(4).separation == Approx(100.0));
  x.start = -1.0;
  CHECK_THROWS_AS(x.validate(), InvalidParameter);
}

TEST_CASE("sweep rows") {
  const auto rows = run_sweep(reference_spec(6.0, 201));
  REQUIRE(rows.size() == 201);
  for (const SweepRow& r : rows) {
    REQUIRE(r.ok);
    CHECK(r.p_refl + r.p_trans == Approx(1.0).epsilon(1e-8));
    for (const auto& c : {r.c_sc_t, r.c_sc_r, r.c_c_t, r.c_c_r, r.c_none})
      if (c) CHECK((*c >= 0.0 && *c <= 1.0));
    if (r.value > 100.0 + 1e-6) {
      CHECK(r.p_refl == Approx(1.0).epsilon(1e-8));
      CHECK_FALSE(r.c_sc_t.has_value());
      CHECK_FALSE(r.p_sc_t.has_value());
      CHECK_FALSE(r.c_c_t.has_value());
    } else if (r.value < 100.0 - 1e-6) {
      CHECK(r.c_c_t.has_value());
    }
  }
}

TEST_CASE("J = 0 sweep has no entanglement") {
  SweepSpec s = reference_spec(10.0, 101);
  s.base.coupling = 0.0;
  for (const SweepRow& r : run_sweep(s)) {
    CHECK(*r.c_none == 0.0);
    CHECK_FALSE(r.c_sc_r.has_value());
  }
}

TEST_CASE("protocol selection leaves other columns empty") {
  SweepSpec s = reference_spec(6.0, 11);
  s.protocols = {Protocol::None};
  for (const SweepRow& r : run_sweep(s)) {
    CHECK(r.c_none.has_value());
    CHECK_FALSE(r.c_c_r.has_value());
    CHECK_FALSE(r.c_sc_r.has_value());
  }
}

TEST_CASE("parallel and serial sweeps agree bit for bit") {
  const SweepSpec s = reference_spec(100.0, 777);
  const auto ref = run_sweep_serial(s);
  for (int w : {1, 2, 3, 8, 0}) {
    const auto rows = run_sweep(s, w);
    CHECK(rows == ref);
    CHECK(to_csv(rows, true) == to_csv(ref, true));
  }
}

TEST_CASE("sweeps over other parameters") {
  SweepSpec s = reference_spec(6.0, 21);
  s.base.ramp_height = mev_to_ev(50.0);
  s.parameter = SweptParameter::Coupling;
  s.start = 0.0, s.stop = 8.0;
  const auto rows = run_sweep(s);
  CHECK(*rows.front().c_none == 0.0);
  CHECK(*rows.back().c_none > 0.0);
  std::ostringstream out;
  write_csv(out, rows, s.parameter);
  CHECK(out.str().rfind("j_ev_angstrom,p_refl,", 0) == 0);
}

TEST_CASE("unit concurrence landmark") {
  const ScatteringProblem base6 = ScatteringProblem::from_lab_units(100.0, 0.0, 6.0, 4.0);
  const UnitConcurrence u = find_unit_concurrence(base6, 100.0, 250.0);
  // location sits where expected; the peak itself stays just under 0.99
  CHECK(u.v0_mev >= 110.0);
  CHECK(u.v0_mev <= 170.0);
  CHECK(u.max == Approx(0.98990).epsilon(1e-4));
  CHECK_FALSE(u.found);
  CHECK(find_unit_concurrence(base6, 100.0, 250.0, 0.5, 0.98).found);

  ScatteringProblem free = base6;
  free.coupling = 0.0;
  CHECK_FALSE(find_unit_concurrence(free, 100.0, 250.0).found);

  // 10 nm, pinned after the first verified run
  const UnitConcurrence u10 =
      find_unit_concurrence(ScatteringProblem::from_lab_units(100.0, 0.0, 10.0, 4.0), 100.0, 250.0);
  CHECK(u10.v0_mev == Approx(147.3146).epsilon(1e-5));
  CHECK(u10.max == Approx(0.5700353).epsilon(1e-6));
  CHECK_FALSE(u10.found);
}

TEST_CASE("effective reflection edge") {
  const double want[] = {364.0, 267.0, 141.0};
  const double x0s[] = {6.0, 10.0, 100.0};
  for (int i = 0; i < 3; ++i) {
    const ReflectionEdge e =
        effective_reflection_edge(ScatteringProblem::from_lab_units(100.0, 0.0, x0s[i], 4.0));
    CHECK(e.found);
    CHECK(e.v_max_mev > 100.0);
    CHECK(e.v_max_mev == Approx(want[i]).epsilon(0.01));
    CHECK(e.delta_v_mev == Approx(e.v_max_mev - 100.0));
  }
  // the stricter C_R >= 0.1 reading narrows the region, 6 nm to about 238 meV
  const ReflectionEdge strict =
      effective_reflection_edge(ScatteringProblem::from_lab_units(100.0, 0.0, 6.0, 4.0), 0.1);
  CHECK(strict.v_max_mev == Approx(238.0).epsilon(0.01));
  const ReflectionEdge none =
      effective_reflection_edge(ScatteringProblem::from_lab_units(100.0, 0.0, 6.0, 0.0));
  CHECK_FALSE(none.found);
  CHECK(none.delta_v_mev == 0.0);
}
