// Command-line front end: sweep, landmarks, verify.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinscat/errors.hpp"
#include "spinscat/io.hpp"
#include "spinscat/sweep.hpp"
#include "spinscat/verify.hpp"

using namespace spinscat;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kIo = 3 };

// Flags share their names with the config keys, dashes for underscores.
struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    for (char& c : flag)
      if (c == '_') c = '-';
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }

  void add_physical(CLI::App* app) {
    app->add_option("-c,--config", config_path, "key = value configuration file");
    add(app, "epsilon_mev", "electron energy (meV)");
    add(app, "j_ev_angstrom", "exchange coupling J (eV*angstrom)");
    add(app, "x0_nm", "impurity separation (nm)");
    add(app, "mass_ratio", "effective mass m*/m_e");
    add(app, "v0_mev", "fixed ramp height when sweeping another parameter (meV)");
  }

  ConfigMap merged() const {
    ConfigMap m = config_path.empty() ? ConfigMap{} : load_config(config_path);
    for (const auto& [k, v] : values) m[k] = v;
    return m;
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw InvalidParameter("empty list '" + s + "'");
  return out;
}

int run_sweep_command(const Overrides& o, int workers) {
  SweepSpec spec;
  apply_config(spec, o.merged());
  spec.validate();
  const std::vector<SweepRow> rows = run_sweep(spec, workers);

  if (spec.output_csv.empty() || spec.output_csv == "-")
    write_csv(std::cout, rows, spec.parameter, spec.dump_amplitudes);
  else
    emit_csv(rows, spec.output_csv, spec.parameter, spec.dump_amplitudes);
  if (!spec.output_svg.empty()) {
    std::string label = column_name(spec.parameter);
    emit_svg_plot(rows, default_series(spec.protocols), spec.output_svg, label);
  }

  int rejected = 0;
  for (const SweepRow& r : rows) rejected += !r.ok;
  if (rejected > 0) {
    std::cerr << "warning: " << rejected << " of " << rows.size()
              << " points rejected as ill-conditioned\n";
    return kNumerical;
  }
  return kOk;
}

int run_landmarks_command(const Overrides& o, const std::string& separations, double threshold,
                          double lo, double hi, double scan_stop, const std::string& output) {
  SweepSpec spec;
  apply_config(spec, o.merged());
  std::vector<double> x0s = separations.empty()
                                ? std::vector<double>{angstrom_to_nm(spec.base.separation)}
                                : parse_list(separations);
  std::ostringstream csv;
  csv << "x0_nm,unit_found,unit_v0_mev,unit_c_none,edge_found,v_max_mev,delta_v_mev\n";
  for (double x0 : x0s) {
    ScatteringProblem p = spec.base;
    p.separation = nm_to_angstrom(x0);
    p.validate();
    const UnitConcurrence u = find_unit_concurrence(p, lo, hi);
    const ReflectionEdge e = effective_reflection_edge(p, threshold, scan_stop);
    csv << format_double(x0) << ',' << (u.found ? 1 : 0) << ',' << format_double(u.v0_mev) << ','
        << format_double(u.max) << ',' << (e.found ? 1 : 0) << ',' << format_double(e.v_max_mev)
        << ',' << format_double(e.delta_v_mev) << '\n';
  }
  if (output.empty() || output == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!(f << csv.str())) throw IoError("cannot write '" + output + "'");
  }
  return kOk;
}

int run_verify_command(bool quick) {
  std::vector<CheckResult> results;
  if (quick)
    results = {check_oracle_equivalence(), check_foundations(), check_mirror_symmetry()};
  else
    results = run_all_checks();
  bool all = true;
  for (const CheckResult& r : results) {
    std::printf("%-4s [%2d] %-34s %6.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    all = all && r.passed;
  }
  return all ? kOk : kNumerical;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-resolved scattering off two magnetic impurities on a potential ramp"};
  app.require_subcommand(1);

  Overrides sweep_o;
  int workers = 0;
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and write CSV / SVG");
  sweep_o.add_physical(sweep);
  sweep_o.add(sweep, "v0_mev_start", "grid start (meV)");
  sweep_o.add(sweep, "v0_mev_stop", "grid stop (meV)");
  sweep_o.add(sweep, "v0_points", "grid points, inclusive");
  sweep_o.add(sweep, "sweep_parameter", "v0 | x0 | epsilon | j");
  sweep_o.add(sweep, "sweep_start", "grid start in the swept parameter's unit");
  sweep_o.add(sweep, "sweep_stop", "grid stop");
  sweep_o.add(sweep, "sweep_points", "grid points");
  sweep_o.add(sweep, "protocols", "comma list of spin_charge,charge,none");
  sweep_o.add(sweep, "output_csv", "CSV path, '-' for stdout");
  sweep_o.add(sweep, "output_svg", "SVG plot path");
  sweep->add_flag_function(
      "--dump-amplitudes{true}",
      [&](std::int64_t) { sweep_o.values["dump_amplitudes"] = "true"; },
      "append Re/Im of r_j and t_j");
  sweep->add_option("-w,--workers", workers, "threads, 0 = OpenMP default");

  Overrides land_o;
  std::string separations, land_out;
  double threshold = kDefaultEdgeThreshold, lo = 100.0, hi = 250.0, scan_stop = 1000.0;
  auto* land = app.add_subcommand("landmarks", "unit-concurrence points and reflection edges");
  land_o.add_physical(land);
  land->add_option("--separations", separations, "comma list of x0 values (nm)");
  land->add_option("--edge-threshold", threshold, "C_R level defining the reflection edge")
      ->capture_default_str();
  land->add_option("--unit-lo", lo, "unit-concurrence scan start (meV)")->capture_default_str();
  land->add_option("--unit-hi", hi, "unit-concurrence scan stop (meV)")->capture_default_str();
  land->add_option("--edge-stop", scan_stop, "reflection-edge scan stop (meV)")->capture_default_str();
  land->add_option("-o,--output", land_out, "CSV path, '-' for stdout");

  bool quick = false;
  auto* verify = app.add_subcommand("verify", "oracle-equivalence and invariant checks");
  verify->add_flag("--quick", quick, "oracle, foundations and mirror checks only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sweep) return run_sweep_command(sweep_o, workers);
    if (*land) return run_landmarks_command(land_o, separations, threshold, lo, hi, scan_stop, land_out);
    if (*verify) return run_verify_command(quick);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
