#include "spinscat/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "spinscat/errors.hpp"

namespace spinscat {

namespace {

constexpr const char* kValueColumns =
    "p_refl,p_trans,c_sc_t,p_sc_t,c_sc_r,p_sc_r,c_c_t,c_c_r,c_none,flux_residual";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw InvalidParameter("cannot parse '" + s + "' as a number for " + what);
  return v;
}

std::optional<double> parse_optional(const std::string& s, const std::string& what) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, what);
}

void put(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << format_double(*v);
}

} // namespace

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string csv_header(SweptParameter parameter, bool dump_amplitudes) {
  std::string h = column_name(parameter) + "," + kValueColumns;
  if (dump_amplitudes)
    for (const char* name : {"r", "t"})
      for (int j = 1; j <= 3; ++j)
        h += std::string(",re_") + name + std::to_string(j) + ",im_" + name + std::to_string(j);
  return h;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, SweptParameter parameter,
               bool dump_amplitudes) {
  out << csv_header(parameter, dump_amplitudes) << '\n';
  for (const SweepRow& row : rows) {
    out << format_double(row.value);
    if (!row.ok) {
      // rejected solve: values left empty, flux marked nan
      out << ",,,,,,,,,,nan";
      if (dump_amplitudes) out << std::string(12, ',');
      out << '\n';
      continue;
    }
    out << ',' << format_double(row.p_refl) << ',' << format_double(row.p_trans);
    put(out, row.c_sc_t);
    put(out, row.p_sc_t);
    put(out, row.c_sc_r);
    put(out, row.p_sc_r);
    put(out, row.c_c_t);
    put(out, row.c_c_r);
    put(out, row.c_none);
    out << ',' << format_double(row.flux_residual);
    if (dump_amplitudes)
      for (const auto* amp : {&row.r, &row.t})
        for (const cplx& z : *amp) out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    out << '\n';
  }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, SweptParameter parameter,
              bool dump_amplitudes) {
  if (rows.empty()) throw InvalidParameter("emit_csv: no rows");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_csv(f, rows, parameter, dump_amplitudes);
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::vector<SweepRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameter("empty CSV");
  const std::vector<std::string> header = split(line, ',');
  const bool dump = header.size() == 23;
  if (header.size() != 11 && !dump) throw InvalidParameter("unexpected CSV header: " + line);

  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != header.size())
      throw InvalidParameter("CSV line " + std::to_string(lineno) + " has " +
                             std::to_string(f.size()) + " fields");
    const std::string where = "line " + std::to_string(lineno);
    SweepRow row;
    row.value = parse_double(f[0], where);
    if (f[10] == "nan") {
      row.error = "rejected";
      rows.push_back(row);
      continue;
    }
    row.ok = true;
    row.p_refl = parse_double(f[1], where);
    row.p_trans = parse_double(f[2], where);
    row.c_sc_t = parse_optional(f[3], where);
    row.p_sc_t = parse_optional(f[4], where);
    row.c_sc_r = parse_optional(f[5], where);
    row.p_sc_r = parse_optional(f[6], where);
    row.c_c_t = parse_optional(f[7], where);
    row.c_c_r = parse_optional(f[8], where);
    row.c_none = parse_optional(f[9], where);
    row.flux_residual = parse_double(f[10], where);
    row.transmitted_feasible = row.p_trans >= kFeasibilityFloor;
    row.reflected_feasible = row.p_refl >= kFeasibilityFloor;
    if (dump)
      for (int j = 0; j < 3; ++j) {
        row.r[j] = {parse_double(f[11 + 2 * j], where), parse_double(f[12 + 2 * j], where)};
        row.t[j] = {parse_double(f[17 + 2 * j], where), parse_double(f[18 + 2 * j], where)};
      }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  return parse_csv(f);
}

// ---- SVG ----

namespace {

std::optional<double> series_value(const SweepRow& row, const std::string& name) {
  if (!row.ok) return std::nullopt;
  if (name == "c_sc_t") return row.c_sc_t;
  if (name == "p_sc_t") return row.p_sc_t;
  if (name == "c_sc_r") return row.c_sc_r;
  if (name == "p_sc_r") return row.p_sc_r;
  if (name == "c_c_t") return row.c_c_t;
  if (name == "c_c_r") return row.c_c_r;
  if (name == "c_none") return row.c_none;
  if (name == "p_refl") return row.p_refl;
  if (name == "p_trans") return row.transmitted_feasible ? std::optional(row.p_trans) : std::nullopt;
  throw InvalidParameter("unknown plot series '" + name + "'");
}

// 1-2-5 tick spacing giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

std::string fmt(double v, int precision = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

} // namespace

std::vector<std::string> default_series(const std::vector<Protocol>& protocols) {
  std::vector<std::string> out;
  for (Protocol p : protocols) switch (p) {
    case Protocol::SpinCharge: out.insert(out.end(), {"c_sc_t", "c_sc_r"}); break;
    case Protocol::Charge: out.insert(out.end(), {"c_c_t", "c_c_r"}); break;
    case Protocol::None: out.push_back("c_none"); break;
    }
  return out;
}

std::string render_svg(const std::vector<SweepRow>& rows, const std::vector<std::string>& series,
                       const std::string& x_label) {
  constexpr double W = 800, H = 500, L = 70, R = 170, T = 30, B = 60;
  const double pw = W - L - R, ph = H - T - B;
  if (rows.size() < 2 || series.empty()) throw InvalidParameter("plot needs rows and series");

  double xmin = rows.front().value, xmax = rows.front().value;
  for (const SweepRow& row : rows) xmin = std::min(xmin, row.value), xmax = std::max(xmax, row.value);
  if (!(xmax > xmin)) throw InvalidParameter("plot x range is empty");

  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return T + (1.0 - std::clamp(y, 0.0, 1.0)) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double xs = nice_step(xmax - xmin, 8);
  svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-9 * xs; x += xs)
    svg << "<line x1=\"" << fmt(sx(x)) << "\" y1=\"" << T << "\" x2=\"" << fmt(sx(x)) << "\" y2=\""
        << T + ph << "\"/>\n";
  for (int i = 0; i <= 5; ++i)
    svg << "<line x1=\"" << L << "\" y1=\"" << fmt(sy(0.2 * i)) << "\" x2=\"" << L + pw
        << "\" y2=\"" << fmt(sy(0.2 * i)) << "\"/>\n";
  svg << "</g>\n";
  svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-9 * xs; x += xs)
    svg << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << T + ph + 18
        << "\" text-anchor=\"middle\">" << tick_label(x) << "</text>\n";
  for (int i = 0; i <= 5; ++i)
    svg << "<text x=\"" << L - 8 << "\" y=\"" << fmt(sy(0.2 * i) + 4)
        << "\" text-anchor=\"end\">" << tick_label(0.2 * i) << "</text>\n";
  svg << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << T + ph / 2 << ")\">concurrence / probability</text>\n";

  bool any = false;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    std::vector<std::vector<std::pair<double, double>>> pieces(1);
    for (const SweepRow& row : rows) {
      const auto y = series_value(row, series[s]);
      if (y && std::isfinite(*y)) {
        pieces.back().emplace_back(sx(row.value), sy(*y));
      } else if (!pieces.back().empty()) {
        pieces.emplace_back();
      }
    }
    for (const auto& piece : pieces) {
      if (piece.empty()) continue;
      any = true;
      svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < piece.size(); ++i)
        svg << (i ? " " : "") << fmt(piece[i].first) << ',' << fmt(piece[i].second);
      svg << "\"/>\n";
    }
    const double ly = T + 10 + 20.0 * s;
    svg << "<line x1=\"" << L + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 45
        << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << L + pw + 52 << "\" y=\"" << ly + 4 << "\">" << series[s] << "</text>\n";
  }
  if (!any) throw InvalidParameter("plot: no finite data in the selected series");
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg_plot(const std::vector<SweepRow>& rows, const std::vector<std::string>& series,
                   const std::string& path, const std::string& x_label) {
  const std::string doc = render_svg(rows, series, x_label);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << doc;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

// ---- config ----

ConfigMap parse_config(std::istream& in) {
  ConfigMap out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidParameter("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config '" + path + "'");
  return parse_config(f);
}

namespace {

bool parse_bool(const std::string& s, const std::string& key) {
  std::string v = s;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidParameter(key + ": expected a boolean, got '" + s + "'");
}

int parse_int(const std::string& s, const std::string& key) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidParameter(key + ": expected an integer, got '" + s + "'");
  return v;
}

} // namespace

void apply_config(SweepSpec& spec, const ConfigMap& config) {
  // physical parameters first so mass_ratio order does not matter
  double eps_mev = ev_to_mev(spec.base.energy);
  double j = spec.base.coupling;
  double x0_nm = angstrom_to_nm(spec.base.separation);
  double v0_mev = ev_to_mev(spec.base.ramp_height);
  double mass = spec.base.material.mass_ratio;
  for (const auto& [key, value] : config) {
    auto num = [&] { return parse_double(value, key); };
    if (key == "epsilon_mev") eps_mev = num();
    else if (key == "j_ev_angstrom") j = num();
    else if (key == "x0_nm") x0_nm = num();
    else if (key == "v0_mev") v0_mev = num();
    else if (key == "mass_ratio") mass = num();
    else if (key == "v0_mev_start" || key == "sweep_start") spec.start = num();
    else if (key == "v0_mev_stop" || key == "sweep_stop") spec.stop = num();
    else if (key == "v0_points" || key == "sweep_points") spec.points = parse_int(value, key);
    else if (key == "sweep_parameter") spec.parameter = parse_swept_parameter(value);
    else if (key == "protocols") {
      spec.protocols.clear();
      for (const std::string& name : split(value, ','))
        if (!trim(name).empty()) spec.protocols.push_back(parse_protocol(trim(name)));
    } else if (key == "output_csv") spec.output_csv = value;
    else if (key == "output_svg") spec.output_svg = value;
    else if (key == "dump_amplitudes") spec.dump_amplitudes = parse_bool(value, key);
    else throw InvalidParameter("unknown config key '" + key + "'");
  }
  const IncomingSpinor incoming = spec.base.incoming;
  const SpinChannelBasis basis = spec.base.basis;
  spec.base = ScatteringProblem::from_lab_units(eps_mev, v0_mev, x0_nm, j, mass);
  spec.base.incoming = incoming;
  spec.base.basis = basis;
}

} // namespace spinscat
