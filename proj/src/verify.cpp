#include "spinscat/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "spinscat/airy.hpp"
#include "spinscat/errors.hpp"
#include "spinscat/io.hpp"
#include "spinscat/oracle.hpp"
#include "spinscat/protocols.hpp"
#include "spinscat/sweep.hpp"

namespace spinscat {

namespace {

constexpr double kEpsMev = 100.0;
constexpr double kX0s[] = {6.0, 10.0, 100.0};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

template <class F>
CheckResult timed(int id, std::string name, F&& body, double limit_seconds = 0.0) {
  CheckResult res;
  res.id = id;
  res.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(res);
  } catch (const std::exception& e) {
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0.0 && res.seconds > limit_seconds) {
    res.passed = false;
    res.detail += ", over the " + std::to_string(static_cast<int>(limit_seconds)) + " s budget";
  }
  return res;
}

SweepSpec reference_grid(double x0_nm) {
  SweepSpec spec;
  spec.base = reference_problem(x0_nm);
  spec.start = -100.0;
  spec.stop = 400.0;
  spec.points = 2001;
  return spec;
}

// Every solved point of the three reference grids, for the density-matrix checks.
void for_each_grid_solution(const std::function<void(const WaveCoefficients&, double)>& fn) {
  for (double x0 : kX0s) {
    const SweepSpec spec = reference_grid(x0);
    std::vector<WaveCoefficients> sols(spec.points);
    std::vector<char> ok(spec.points, 0);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < spec.points; ++i) {
      try {
        sols[i] = solve(spec.problem_at(i));
        ok[i] = 1;
      } catch (const NumericalError&) {
      }
    }
    for (int i = 0; i < spec.points; ++i)
      if (ok[i]) fn(sols[i], spec.value_at(i));
  }
}

} // namespace

ScatteringProblem reference_problem(double x0_nm) {
  return ScatteringProblem::from_lab_units(kEpsMev, 0.0, x0_nm, 4.0, 0.067);
}

std::vector<ScatteringProblem> oracle_sample() {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> v0(-50.0, 200.0);
  std::uniform_int_distribution<int> pick(0, 2);
  constexpr double js[] = {0.0, 2.0, 4.0};
  std::vector<ScatteringProblem> out;
  for (int i = 0; i < 20; ++i) {
    const double v = v0(rng);
    const double x0 = kX0s[pick(rng)];
    const double j = js[pick(rng)];
    out.push_back(ScatteringProblem::from_lab_units(kEpsMev, v, x0, j, 0.067));
  }
  return out;
}

double oracle_deviation(const ScatteringProblem& problem, int slices) {
  const WaveCoefficients w = solve(problem);
  const OracleResult o = oracle_solve(problem, slices);
  double dev = 0.0;
  for (int j = 0; j < 3; ++j) {
    dev = std::max(dev, std::abs(w.r[j] - o.r[j]));
    dev = std::max(dev, std::abs(w.t[j] - o.t[j]));
    dev = std::max(dev, std::abs(w.tau_edge[j] - o.tau_edge[j]));
  }
  return dev;
}

CheckResult check_flux_conservation() {
  return timed(1, "flux conservation", [](CheckResult& res) {
    double worst = 0.0;
    int rejected = 0, solved = 0;
    for (double x0 : kX0s)
      for (const SweepRow& row : run_sweep(reference_grid(x0))) {
        if (!row.ok) {
          ++rejected;
          continue;
        }
        ++solved;
        worst = std::max(worst, row.flux_residual);
      }
    res.detail = std::to_string(solved) + " solves, max residual " + sci(worst) + ", " +
                 std::to_string(rejected) + " rejected";
    res.passed = worst <= 1e-8;
  }, 5.0);
}

CheckResult check_oracle_equivalence() {
  return timed(2, "oracle equivalence", [](CheckResult& res) {
    const auto sample = oracle_sample();
    std::vector<double> dev(sample.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < static_cast<int>(sample.size()); ++i)
      dev[i] = oracle_deviation(sample[i], 8192);
    double worst = 0.0;
    for (double d : dev) worst = std::max(worst, d);
    res.detail = "20 configurations, N = 8192, max deviation " + sci(worst);
    res.passed = worst <= 1e-6;
  }, 10.0);
}

CheckResult check_unit_concurrence() {
  return timed(3, "unit concurrence near 140 meV", [](CheckResult& res) {
    const ScatteringProblem base = reference_problem(6.0);
    const UnitConcurrence u = find_unit_concurrence(base, 100.0, 250.0, 0.5, 0.99);
    ScatteringProblem at = base;
    at.ramp_height = mev_to_ev(u.v0_mev);
    const WaveCoefficients w = solve(at);
    const ProtocolResult p1 = protocol_spin_charge(w, Outcome::Reflected);
    const ProtocolResult p2 = protocol_charge(w, Outcome::Reflected);
    const double c1 = p1.feasible ? *p1.concurrence : 0.0;
    const double c2 = p2.feasible ? *p2.concurrence : 0.0;
    std::ostringstream d;
    d.precision(6);
    d << "max C_none " << u.max << " at V0 = " << u.v0_mev << " meV; C_sc,R " << c1
      << ", C_c,R " << c2;
    res.detail = d.str();
    res.passed = u.max >= 0.99 && u.v0_mev >= 110.0 && u.v0_mev <= 170.0 && c1 >= 0.99 && c2 >= 0.99;
  });
}

CheckResult check_reflection_edges() {
  return timed(4, "effective reflection edges", [](CheckResult& res) {
    constexpr double expected[] = {350.0, 300.0, 140.0};
    bool pass = true;
    std::ostringstream d;
    for (int i = 0; i < 3; ++i) {
      const ReflectionEdge e = effective_reflection_edge(reference_problem(kX0s[i]));
      const bool ok = e.found && std::abs(e.v_max_mev - expected[i]) <= 0.2 * expected[i];
      pass = pass && ok;
      d << (i ? "; " : "") << "x0 " << kX0s[i] << " nm: V_max " << e.v_max_mev << " (want "
        << expected[i] << ")";
    }
    res.detail = d.str();
    res.passed = pass;
  });
}

CheckResult check_total_reflection() {
  return timed(5, "total reflection above eps", [](CheckResult& res) {
    int above = 0, bad = 0, below_infeasible = 0;
    double worst = 0.0;
    for (double x0 : kX0s)
      for (const SweepRow& row : run_sweep(reference_grid(x0))) {
        if (!row.ok) continue;
        const double gap_mev = row.value - kEpsMev;
        if (gap_mev > ev_to_mev(kThresholdWindow)) {
          ++above;
          worst = std::max(worst, std::abs(row.p_refl - 1.0));
          if (std::abs(row.p_refl - 1.0) > 1e-8 || row.transmitted_feasible || row.c_sc_t ||
              row.p_sc_t || row.c_c_t)
            ++bad;
        } else if (gap_mev < -ev_to_mev(kThresholdWindow)) {
          if (!row.transmitted_feasible) ++below_infeasible;
        } else if (row.transmitted_feasible) {
          ++bad; // at eps itself the transmitted branch must already be gone
        }
      }
    res.detail = std::to_string(above) + " rows above eps, max |p_refl - 1| " + sci(worst) + ", " +
                 std::to_string(bad) + " violations, " + std::to_string(below_infeasible) +
                 " infeasible rows below eps";
    res.passed = bad == 0 && below_infeasible == 0;
  });
}

CheckResult check_concurrence_cross_validation() {
  return timed(6, "analytic vs Wootters concurrence", [](CheckResult& res) {
    double worst = 0.0, purity = 0.0;
    long matrices = 0;
    for_each_grid_solution([&](const WaveCoefficients& w, double) {
      std::vector<ProtocolResult> results{protocol_none(w)};
      for (Outcome o : {Outcome::Transmitted, Outcome::Reflected}) {
        const ProtocolResult sc = protocol_spin_charge(w, o);
        results.push_back(sc);
        results.push_back(protocol_charge(w, o));
        if (sc.feasible) purity = std::max(purity, std::abs(sc.rho.purity() - 1.0));
      }
      for (const ProtocolResult& r : results) {
        if (!r.feasible) continue;
        ++matrices;
        worst = std::max(worst, std::abs(concurrence_analytic(r.rho) - concurrence_wootters(r.rho)));
      }
    });
    res.detail = std::to_string(matrices) + " density matrices, max |analytic - Wootters| " +
                 sci(worst) + ", max |Tr rho^2 - 1| " + sci(purity);
    res.passed = worst <= 1e-10 && purity <= 1e-10;
  });
}

CheckResult check_protocol_dominance() {
  return timed(7, "protocol dominance", [](CheckResult& res) {
    long compared = 0, violations = 0;
    double worst = 0.0;
    for_each_grid_solution([&](const WaveCoefficients& w, double) {
      for (Outcome o : {Outcome::Transmitted, Outcome::Reflected}) {
        const ProtocolResult sc = protocol_spin_charge(w, o);
        if (!sc.feasible) continue;
        const ProtocolResult ch = protocol_charge(w, o);
        ++compared;
        const double gap = *ch.concurrence - *sc.concurrence;
        worst = std::max(worst, gap);
        if (gap > 0.0) ++violations;
      }
    });
    res.detail = std::to_string(compared) + " comparisons, " + std::to_string(violations) +
                 " with C_charge > C_spin_charge (max excess " + sci(worst) + ")";
    res.passed = violations == 0;
  });
}

CheckResult check_foundations() {
  return timed(8, "spin algebra and Airy foundations", [](CheckResult& res) {
    bool exact = true;
    double eig_err = 0.0;
    for (const SpinChannelBasis& b : {SpinChannelBasis::plus_half(), SpinChannelBasis::minus_half()})
      for (int i : {1, 2}) {
        exact = exact && exchange_matrix(i, b).entries == full_space_oracle(i, b).projected();
        ComplexMatrix m(3);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) m(r, c) = exchange_matrix(i, b)(r, c);
        const auto ev = hermitian_eigenvalues(m);
        eig_err = std::max({eig_err, std::abs(ev[0] - 0.25), std::abs(ev[1] - 0.25),
                            std::abs(ev[2] + 0.75)});
      }

    double wr = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double u = -60.0 + 90.0 * i / 9999.0;
      wr = std::max(wr, std::abs(airy_eval(u).wronskian() - std::numbers::inv_pi));
    }

    // Negative side: integrate outward from the origin. Errors are measured
    // against the oscillation envelope, since Ai and Bi have zeros there.
    double ode = 0.0;
    const AiryValues origin = airy_eval(0.0);
    OdeState ai{origin.ai, origin.ai_prime}, bi{origin.bi, origin.bi_prime};
    double u_prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
      const double u = -0.1 * i;
      ai = ode_reference(u_prev, u, ai, 1e-12);
      bi = ode_reference(u_prev, u, bi, 1e-12);
      u_prev = u;
      const AiryValues e = airy_eval(u);
      const double env = std::max(1.0, std::sqrt(e.ai * e.ai + e.bi * e.bi));
      ode = std::max({ode, std::abs(ai.y - e.ai) / env, std::abs(bi.y - e.bi) / env});
    }
    // Positive side: Bi forward (dominant), Ai backward from u = 20 (dominant
    // in that direction), both relative.
    bi = {origin.bi, origin.bi_prime};
    const AiryValues end = airy_eval(20.0);
    ai = {end.ai, end.ai_prime};
    u_prev = 0.0;
    double ua_prev = 20.0;
    for (int i = 1; i <= 200; ++i) {
      const double u = 0.1 * i, ua = 20.0 - 0.1 * i;
      bi = ode_reference(u_prev, u, bi, 1e-12);
      ai = ode_reference(ua_prev, ua, ai, 1e-12);
      u_prev = u, ua_prev = ua;
      ode = std::max({ode, std::abs(bi.y / airy_eval(u).bi - 1.0),
                      std::abs(ai.y / airy_eval(ua).ai - 1.0)});
    }
    res.detail = std::string("exchange == projection: ") + (exact ? "yes" : "no") +
                 ", eigenvalue error " + sci(eig_err) + ", Wronskian error " + sci(wr) +
                 ", ODE error " + sci(ode);
    res.passed = exact && eig_err <= 1e-14 && wr <= 1e-10 && ode <= 1e-8;
  });
}

CheckResult check_mirror_symmetry() {
  return timed(9, "mirror subspace symmetry", [](CheckResult& res) {
    double worst = 0.0;
    int cases = 0;
    for (ScatteringProblem p : oracle_sample()) {
      for (double v0 : {p.ramp_height, mev_to_ev(150.0), mev_to_ev(300.0)}) {
        p.ramp_height = v0;
        const WaveCoefficients a = solve(p);
        ScatteringProblem m = p;
        m.basis = mirror_basis(p.basis);
        const WaveCoefficients b = solve(m);
        ++cases;
        for (int j = 0; j < 3; ++j)
          worst = std::max({worst, std::abs(a.r[j] - b.r[j]), std::abs(a.t[j] - b.t[j]),
                            std::abs(a.tau_edge[j] - b.tau_edge[j]),
                            std::abs(a.b[j].value() - b.b[j].value()),
                            std::abs(a.c[j].value() - b.c[j].value())});
      }
    }
    res.detail = std::to_string(cases) + " configurations, max amplitude difference " + sci(worst);
    res.passed = worst <= 1e-12;
  });
}

CheckResult check_determinism(const std::string& cli) {
  return timed(10, "determinism", [&](CheckResult& res) {
    SweepSpec spec = reference_grid(100.0);
    auto csv = [&](const std::vector<SweepRow>& rows) {
      std::ostringstream s;
      write_csv(s, rows, spec.parameter, true);
      return s.str();
    };
    const std::string ref = csv(run_sweep_serial(spec));
    bool same = true;
    for (int workers : {1, 2, 4, 0}) {
      same = same && csv(run_sweep(spec, workers)) == ref;
      same = same && csv(run_sweep(spec, workers)) == ref;
    }
    res.detail = std::string("library sweeps over 1/2/4/default workers ") +
                 (same ? "identical" : "differ");
    if (!cli.empty()) {
      bool cli_same = true;
      std::string first;
      for (int run = 0; run < 3; ++run) {
        const std::string out = "determinism_run" + std::to_string(run) + ".csv";
        const std::string cmd = cli + " sweep --x0-nm 100 --v0-points 2001 --workers " +
                                std::to_string(run + 1) + " --output-csv " + out + " > /dev/null";
        if (std::system(cmd.c_str()) != 0) throw IoError("CLI run failed: " + cmd);
        std::ifstream f(out, std::ios::binary);
        std::stringstream buf;
        buf << f.rdbuf();
        if (run == 0)
          first = buf.str();
        else
          cli_same = cli_same && buf.str() == first && !first.empty();
        std::remove(out.c_str());
      }
      res.detail += std::string("; CLI CSV over 3 runs ") + (cli_same ? "byte-identical" : "differ");
      same = same && cli_same;
    }
    res.passed = same;
  });
}

std::vector<CheckResult> run_all_checks(const std::string& cli) {
  return {check_flux_conservation(),   check_oracle_equivalence(),
          check_unit_concurrence(),    check_reflection_edges(),
          check_total_reflection(),    check_concurrence_cross_validation(),
          check_protocol_dominance(),  check_foundations(),
          check_mirror_symmetry(),     check_determinism(cli)};
}

} // namespace spinscat
