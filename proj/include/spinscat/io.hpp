#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinscat/sweep.hpp"

namespace spinscat {

/// Column header without the amplitude dump. The first column follows the
/// swept parameter.
std::string csv_header(SweptParameter parameter, bool dump_amplitudes);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               SweptParameter parameter = SweptParameter::RampHeight,
               bool dump_amplitudes = false);
/// Throws IoError naming the path.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path,
              SweptParameter parameter = SweptParameter::RampHeight,
              bool dump_amplitudes = false);

/// Reads back what write_csv produced. Doubles round-trip exactly.
std::vector<SweepRow> parse_csv(std::istream& in);
std::vector<SweepRow> read_csv(const std::string& path);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// Series names: c_sc_t, p_sc_t, c_sc_r, p_sc_r, c_c_t, c_c_r, c_none,
/// p_refl, p_trans.
std::string render_svg(const std::vector<SweepRow>& rows, const std::vector<std::string>& series,
                       const std::string& x_label = "V0 (meV)");
void emit_svg_plot(const std::vector<SweepRow>& rows, const std::vector<std::string>& series,
                   const std::string& path, const std::string& x_label = "V0 (meV)");
/// Series drawn by default for a protocol selection.
std::vector<std::string> default_series(const std::vector<Protocol>& protocols);

/// `key = value` lines, `#` starts a comment. Throws InvalidParameter on
/// malformed lines, IoError when the file cannot be read.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_config(std::istream& in);
ConfigMap load_config(const std::string& path);

/// Applies recognised keys on top of `spec`. Unknown keys are rejected.
void apply_config(SweepSpec& spec, const ConfigMap& config);

} // namespace spinscat
