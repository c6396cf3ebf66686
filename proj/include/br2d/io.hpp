#pragma once

// JSON documents and CSV tables for the report types. JSON is canonical;
// CSV rows are projections of the same records.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "br2d/certificate.hpp"
#include "br2d/grid.hpp"
#include "br2d/identities.hpp"
#include "br2d/spectral.hpp"
#include "br2d/unbounded.hpp"
#include "br2d/version.hpp"

namespace br2d::io {

using json = nlohmann::json;

/// Rounds every floating value in `doc` to `digits` significant digits.
inline void round_numbers(json& doc, int digits) {
  if (digits >= 17) return;
  if (doc.is_number_float()) {
    const double v = doc.get<double>();
    if (!std::isfinite(v)) return;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    doc = std::stod(buf);
    return;
  }
  if (doc.is_structured()) {
    for (auto& item : doc) round_numbers(item, digits);
  }
}

/// Non-finite doubles become null in JSON; keep them readable instead.
inline json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json to_json(const GridSpec& g) {
  return {{"n", g.n}, {"map_kind", to_string(g.map_kind)}, {"p_max", g.p_max}, {"scale", g.scale},
          {"grading", g.grading}};
}

inline json to_json(const SpectralReport& r, bool with_vector = false) {
  json j = {{"delta", r.delta},           {"k", r.k},
            {"n", r.n},                   {"p_max", r.grid.p_max},
            {"grid", to_json(r.grid)},    {"lambda_min", r.lambda_min},
            {"residual", r.residual},     {"matrix_norm", r.matrix_norm},
            {"edge_mass", r.edge_mass}};
  if (with_vector) j["eigenvector"] = r.eigenvector;
  return j;
}

inline json to_json(const cert::CertificateReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"value", number(c.value)}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return {{"name", r.name},
          {"coefficients", r.coefficients},
          {"signs", r.signs},
          {"min_value", number(r.min_value)},
          {"domain", {r.domain_lo, r.domain_hi}},
          {"pass", r.pass},
          {"checks", checks},
          {"notes", r.notes}};
}

inline json to_json(const unbounded::DivergenceRow& r) {
  return {{"a", r.a},
          {"b", r.b},
          {"delta", r.delta},
          {"form_value", r.form_value},
          {"norm_sq", r.norm_sq},
          {"log_ratio", r.log_ratio},
          {"kinetic", r.kinetic},
          {"potential", r.potential}};
}

inline json to_json(const unbounded::DivergenceDemo& d) {
  json rows = json::array();
  for (const auto& r : d.rows) rows.push_back(to_json(r));
  return {{"delta", d.delta},
          {"a", d.a},
          {"rows", rows},
          {"slope", d.slope},
          {"predicted_slope", d.predicted_slope},
          {"strictly_decreasing", d.strictly_decreasing},
          {"norms_bounded", d.norms_bounded},
          {"all_negative", d.all_negative}};
}

inline json to_json(const unbounded::INuResult& r) {
  return {{"nu", r.nu},
          {"quadrature", r.quadrature},
          {"closed_form", r.closed_form},
          {"rel_error", r.rel_error},
          {"lower_half", r.lower_half},
          {"upper_half", r.upper_half},
          {"half_asymmetry", r.half_asymmetry}};
}

inline json to_json(const unbounded::MonotonicityResult& r) {
  return {{"nu", r.nu},
          {"alpha", r.alpha},
          {"n_points", r.n_points},
          {"within_hypothesis", r.within_hypothesis},
          {"increasing", r.increasing},
          {"violations", r.violations},
          {"first_violation", r.first_violation}};
}

inline json to_json(const unbounded::WindowEstimate& w) {
  return {{"a", w.window.a},
          {"b", w.window.b},
          {"nu", w.nu},
          {"i_nu", w.i_nu},
          {"window_integral", w.window_integral},
          {"tail_low", w.tail_low},
          {"tail_high", w.tail_high},
          {"lower_bound", w.lower_bound},
          {"decomposition_defect", w.decomposition_defect},
          {"tails_bounded", w.tails_bounded},
          {"inequality_holds", w.inequality_holds}};
}

inline json to_json(const ident::IdentityReport& r) {
  json j = {{"name", r.name},
            {"parameters", r.parameters},
            {"lhs", number(r.lhs.real())},
            {"rhs", number(r.rhs.real())},
            {"rel_error", number(r.rel_error)},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
  if (r.lhs.imag() != 0.0 || r.rhs.imag() != 0.0) {
    j["lhs_imag"] = r.lhs.imag();
    j["rhs_imag"] = r.rhs.imag();
  }
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  j["extras"] = extras;
  return j;
}

/// Envelope shared by every CLI document.
inline json document(const std::string& command, json config, json tolerances, json results) {
  return {{"command", command},
          {"version", std::string(version)},
          {"config", std::move(config)},
          {"tolerances", std::move(tolerances)},
          {"results", std::move(results)}};
}

// ---------------------------------------------------------------------------
// CSV

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision) : out_(out) { out_.precision(precision); }

  /// Provenance lines prefixed by '#'.
  void comment(const std::string& line) { out_ << "# " << line << '\n'; }

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
    out_ << '\n';
  }

  template <class... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << values, first = false), ...);
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

inline void write_spectral_csv(std::ostream& out, const std::vector<SpectralReport>& rows, int precision) {
  CsvWriter w(out, precision);
  w.header({"delta", "k", "n", "p_max", "lambda_min", "residual"});
  for (const auto& r : rows) w.row(r.delta, r.k, r.n, r.grid.p_max, r.lambda_min, r.residual);
}

inline void write_divergence_csv(std::ostream& out, const std::vector<unbounded::DivergenceRow>& rows, int precision) {
  CsvWriter w(out, precision);
  w.header({"a", "b", "delta", "form_value", "norm_sq", "log_ratio"});
  for (const auto& r : rows) w.row(r.a, r.b, r.delta, r.form_value, r.norm_sq, r.log_ratio);
}

}  // namespace br2d::io
