// br2d: batch entry points for the critical coupling, channel spectra, the
// verification suites, the divergence demonstration and kernel evaluation.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "br2d.hpp"
#include "br2d/io.hpp"

namespace {

using br2d::io::json;

constexpr int exit_ok = 0;
constexpr int exit_check = 1;
constexpr int exit_config = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "json";
  std::string path;
  int precision = 17;
};

/// Writes to --output, else to $BR2D_OUTPUT_DIR/<command>.<format>, else stdout.
class Sink {
 public:
  Sink(const OutputOptions& opt, const std::string& command) {
    std::string target = opt.path;
    if (target.empty()) {
      if (const char* dir = std::getenv("BR2D_OUTPUT_DIR"); dir && *dir) {
        target = (std::filesystem::path(dir) / (command + "." + opt.format)).string();
      }
    }
    if (!target.empty()) {
      const auto parent = std::filesystem::path(target).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);
      file_.open(target);
      if (!file_) throw ConfigError("cannot open output file " + target);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const OutputOptions& opt, const std::string& command, json doc) {
  br2d::io::round_numbers(doc, opt.precision);
  Sink sink(opt, command);
  sink.stream() << doc.dump(2) << '\n';
}

/// CSV documents carry the same envelope as '#' lines above the table.
void emit_csv(const OutputOptions& opt, const std::string& command, const json& config, const json& tolerances,
              const std::function<void(std::ostream&)>& table) {
  Sink sink(opt, command);
  std::ostream& out = sink.stream();
  out << "# command=" << command << " version=" << br2d::version << '\n';
  out << "# config=" << config.dump() << '\n';
  out << "# tolerances=" << tolerances.dump() << '\n';
  table(out);
}

/// "0.5x" or "0.5".
double parse_scale(const std::string& text) {
  std::string s = text;
  if (!s.empty() && (s.back() == 'x' || s.back() == 'X')) s.pop_back();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0.0)) throw ConfigError("--strict-tol expects a positive factor such as 0.5x");
  return v;
}

// ---------------------------------------------------------------------------
// critical

int cmd_critical(const OutputOptions& out) {
  const auto cc = br2d::cert::critical_coupling();
  const json config = {{"format", out.format}, {"precision", out.precision}};
  const json tol = json::object();
  if (out.format == "csv") {
    emit_csv(out, "critical", config, tol, [&](std::ostream& os) {
      br2d::io::CsvWriter w(os, out.precision);
      w.header({"delta_c", "floor"});
      w.row(cc.delta_c, cc.floor);
    });
  } else {
    emit_json(out, "critical", br2d::io::document("critical", config, tol,
                                                  {{"delta_c", cc.delta_c}, {"floor", cc.floor}}));
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOptions {
  std::vector<double> deltas;
  bool delta_c = false;
  std::vector<int> channels{0};
  std::size_t n = 400;
  double p_max = 1e4;
  std::string map = "rational";
  bool assert_floor = false;
  double floor_tol = 0.02;
  unsigned threads = 1;
};

int cmd_spectrum(SpectrumOptions opt, const OutputOptions& out) {
  const auto cc = br2d::cert::critical_coupling();
  if (opt.delta_c) opt.deltas.push_back(cc.delta_c);
  if (opt.deltas.empty()) throw ConfigError("spectrum: give --delta and/or --delta-c");
  for (double d : opt.deltas) {
    if (!(d >= 0.0)) throw ConfigError("spectrum: couplings must be >= 0");
  }
  br2d::GridSpec spec;
  spec.n = opt.n;
  spec.p_max = opt.p_max;
  try {
    spec.map_kind = br2d::map_kind_from_string(opt.map);
  } catch (const br2d::PreconditionError& e) {
    throw ConfigError(e.what());
  }
  auto grid = std::make_shared<const br2d::RadialGrid>(br2d::build_radial_grid(spec));
  std::vector<br2d::Channel> chans;
  for (int k : opt.channels) chans.push_back({k});
  const auto kernels = br2d::assemble_kernels(grid, chans, opt.threads);

  std::vector<br2d::SpectralReport> rows;
  json results = json::array();
  bool ok = true;
  for (const auto& kernel : kernels) {
    for (const auto& r : br2d::delta_sweep(kernel, opt.deltas)) {
      json j = br2d::io::to_json(r);
      // The floor is claimed only up to the critical coupling.
      const bool checked = opt.assert_floor && r.delta <= cc.delta_c;
      const double floor = 1.0 - 2.0 * r.delta;
      j["floor"] = floor;
      j["floor_checked"] = checked;
      if (checked) {
        const bool pass = r.lambda_min >= floor - opt.floor_tol;
        j["floor_pass"] = pass;
        ok = ok && pass;
      }
      rows.push_back(r);
      results.push_back(j);
    }
  }
  const json config = {{"deltas", opt.deltas},   {"channels", opt.channels}, {"grid", br2d::io::to_json(spec)},
                       {"assert_floor", opt.assert_floor}, {"threads", opt.threads}};
  const json tol = {{"floor_tolerance", opt.floor_tol}, {"eigen_residual_relative", 1e-8},
                    {"diagonal_cell_rel_tol", 1e-8}};
  if (out.format == "csv") {
    emit_csv(out, "spectrum", config, tol,
             [&](std::ostream& os) { br2d::io::write_spectral_csv(os, rows, out.precision); });
  } else {
    json self_test = {{"exp_decay", grid->self_test.exp_decay},
                      {"gaussian_moment", grid->self_test.gaussian_moment},
                      {"inverse_sqrt", grid->self_test.inverse_sqrt}};
    emit_json(out, "spectrum",
              br2d::io::document("spectrum", config, tol, {{"rows", results}, {"grid_self_test", self_test}}));
  }
  return ok ? exit_ok : exit_check;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteItem {
  std::string suite;
  std::string name;
  bool pass = false;
  json detail;
};

std::vector<SuiteItem> identities_suite(double scale) {
  std::vector<SuiteItem> items;
  for (const auto& r : br2d::ident::identity_suite(scale)) {
    items.push_back({"identities", r.name, r.pass, br2d::io::to_json(r)});
  }
  return items;
}

std::vector<SuiteItem> certificates_suite(double scale) {
  std::vector<SuiteItem> items;
  for (const auto& r : br2d::cert::certificate_suite(scale)) {
    items.push_back({"certificates", r.name, r.pass, br2d::io::to_json(r)});
  }
  // Reduction to the critical coupling on a modest grid; exact algebra.
  const auto cc = br2d::cert::critical_coupling();
  auto grid = std::make_shared<const br2d::RadialGrid>(br2d::build_radial_grid(100, br2d::MapKind::rational, 1e4));
  const auto kernel = br2d::assemble_kernel(grid, {0});
  const auto at_c = br2d::form_from_kernel(kernel, cc.delta_c);
  for (double d : {0.0, 0.5 * cc.delta_c, cc.delta_c}) {
    const auto res = br2d::cert::scaling_reduction_check(d, br2d::form_from_kernel(kernel, d), at_c, 100);
    const double tol = 1e-12 * scale;
    items.push_back({"certificates", "scaling_reduction",
                     res.identity_defect <= tol && res.inequality_violation <= tol,
                     {{"delta", d},
                      {"identity_defect", res.identity_defect},
                      {"inequality_violation", res.inequality_violation},
                      {"samples", res.samples},
                      {"tolerance", tol}}});
  }
  return items;
}

std::vector<SuiteItem> lemmas_suite(double scale) {
  namespace ub = br2d::unbounded;
  std::vector<SuiteItem> items;
  for (double nu : {-0.5, 0.5}) {
    const auto r = ub::i_nu_constant(nu);
    items.push_back({"lemmas", "i_nu_constant", r.rel_error <= 1e-6 * scale && r.half_asymmetry <= 1e-8 * scale,
                     br2d::io::to_json(r)});
  }
  for (double nu : {-0.5, 0.5}) {
    const auto m = ub::lemma_monotonicity_check(nu, -0.5, 1000);
    items.push_back({"lemmas", "monotonicity", m.increasing, br2d::io::to_json(m)});
  }
  {
    // Outside the hypothesis: reported, never asserted.
    const auto m = ub::lemma_monotonicity_check(-0.5, -0.9, 1000);
    json j = br2d::io::to_json(m);
    j["asserted"] = false;
    items.push_back({"lemmas", "monotonicity_exploration", true, j});
  }
  for (const auto& w : ub::random_window_checks(20)) {
    const bool pass = w.tails_bounded && w.inequality_holds && w.decomposition_defect <= 1e-8 * scale;
    items.push_back({"lemmas", "window_estimate", pass, br2d::io::to_json(w)});
  }
  {
    const auto r = ub::trial_form_value({2.0, 20.0}, 0.0);
    const double l10 = std::log(10.0);
    items.push_back({"lemmas", "kinetic_window_bracket", r.form_value >= l10 && r.form_value <= l10 + 1.0,
                     br2d::io::to_json(r)});
  }
  {
    const double m = ub::beta2_window_minimum({50.0, 5e3});
    items.push_back({"lemmas", "beta2_window_minimum", m >= 0.5 - 1.0 / 50.0 && m >= 0.48,
                     {{"a", 50.0}, {"value", m}, {"bound", 0.5 - 1.0 / 50.0}}});
  }
  const auto cc = br2d::cert::critical_coupling();
  for (double d : {0.2, cc.delta_c}) {
    for (auto w : {ub::TrialWindow{2.0, 20.0}, ub::TrialWindow{1.5, 100.0}, ub::TrialWindow{50.0, 5e3}}) {
      const auto r = ub::trial_form_value(w, d);
      json j = br2d::io::to_json(r);
      j["floor_times_norm"] = (1.0 - 2.0 * d) * r.norm_sq;
      items.push_back({"lemmas", "subcritical_trial_floor", r.form_value >= (1.0 - 2.0 * d) * r.norm_sq, j});
    }
  }
  return items;
}

int cmd_verify(const std::string& suite, const std::string& strict, const OutputOptions& out) {
  const double scale = strict.empty() ? 1.0 : parse_scale(strict);
  std::vector<SuiteItem> items;
  auto append = [&](std::vector<SuiteItem> more) {
    for (auto& it : more) items.push_back(std::move(it));
  };
  if (suite == "identities" || suite == "all") append(identities_suite(scale));
  if (suite == "certificates" || suite == "all") append(certificates_suite(scale));
  if (suite == "lemmas" || suite == "all") append(lemmas_suite(scale));
  bool ok = true;
  std::size_t failed = 0;
  json reports = json::array();
  for (const auto& it : items) {
    ok = ok && it.pass;
    failed += it.pass ? 0 : 1;
    reports.push_back({{"suite", it.suite}, {"name", it.name}, {"pass", it.pass}, {"report", it.detail}});
  }
  const json config = {{"suite", suite}, {"tolerance_scale", scale}};
  const json tol = {{"scale", scale},
                    {"angular_orthogonality", 1e-8 * scale},
                    {"sine_vanishing_abs", 1e-10 * scale},
                    {"angular_to_legendre", 1e-8 * scale},
                    {"hankel", 1e-5 * scale},
                    {"i_k_transform", 1e-6 * scale},
                    {"q_recurrence", 1e-9 * scale},
                    {"partial_wave_reconstruction", 1e-3 * scale},
                    {"f_equality_at_one", 1e-10 * scale},
                    {"scaling_reduction", 1e-12 * scale},
                    {"i_nu", 1e-6 * scale}};
  if (out.format == "csv") {
    emit_csv(out, "verify", config, tol, [&](std::ostream& os) {
      br2d::io::CsvWriter w(os, out.precision);
      w.header({"suite", "name", "pass"});
      for (const auto& it : items) w.row(it.suite, it.name, it.pass ? "true" : "false");
    });
  } else {
    emit_json(out, "verify",
              br2d::io::document("verify", config, tol,
                                 {{"pass", ok}, {"total", items.size()}, {"failed", failed}, {"reports", reports}}));
  }
  return ok ? exit_ok : exit_check;
}

// ---------------------------------------------------------------------------
// diverge

int cmd_diverge(double delta, double a, const std::vector<double>& bs, unsigned threads, const OutputOptions& out) {
  namespace ub = br2d::unbounded;
  const auto cc = br2d::cert::critical_coupling();
  if (!(delta > cc.delta_c)) {
    std::ostringstream msg;
    msg << "diverge: delta = " << delta << " does not exceed delta_c = " << cc.delta_c
        << "; the trial construction applies only above the critical coupling";
    throw ConfigError(msg.str());
  }
  if (!(ub::predicted_slope(delta, a) < 0.0)) {
    std::ostringstream msg;
    msg << "diverge: a = " << a << " does not qualify for delta = " << delta
        << "; need 1 - (delta/delta_c)(1 - 2/a) < 0, i.e. a > " << ub::qualifying_a(delta);
    throw ConfigError(msg.str());
  }
  for (double b : bs) {
    if (!(b > a)) throw ConfigError("diverge: every b must exceed a");
  }
  const auto demo = ub::divergence_demo(delta, a, bs, threads);
  const json config = {{"delta", delta}, {"a", a}, {"b", bs}, {"threads", threads}};
  const json tol = {{"quadrature_rel_tol", 1e-9}};
  if (out.format == "csv") {
    emit_csv(out, "diverge", config, tol,
             [&](std::ostream& os) { br2d::io::write_divergence_csv(os, demo.rows, out.precision); });
  } else {
    json res = br2d::io::to_json(demo);
    res["qualifying_a"] = ub::qualifying_a(delta);
    emit_json(out, "diverge", br2d::io::document("diverge", config, tol, res));
  }
  return demo.strictly_decreasing ? exit_ok : exit_check;
}

// ---------------------------------------------------------------------------
// kernel-eval

int cmd_kernel_eval(const std::vector<int>& channels, double p, double q, const std::vector<double>& full,
                    const OutputOptions& out) {
  json config = {{"channels", channels}, {"p", p}, {"q", q}};
  json results = json::object();
  json rows = json::array();
  if (!full.empty()) {
    if (full.size() != 4) throw ConfigError("kernel-eval: --full takes p1,p2,q1,q2");
    config["full"] = full;
    const auto v = br2d::full_kernel({full[0], full[1]}, {full[2], full[3]});
    results["full_kernel"] = {{"re", v.real()}, {"im", v.imag()}};
  }
  if (!(p > 0.0 && q > 0.0) || p == q) throw ConfigError("kernel-eval: need distinct positive --p and --q");
  for (int k : channels) {
    rows.push_back({{"k", k}, {"p", p}, {"q", q}, {"kernel", br2d::channel_kernel({k}, p, q)}});
  }
  results["channels"] = rows;
  const json tol = json::object();
  if (out.format == "csv") {
    emit_csv(out, "kernel-eval", config, tol, [&](std::ostream& os) {
      br2d::io::CsvWriter w(os, out.precision);
      w.header({"k", "p", "q", "kernel"});
      for (const auto& r : rows) w.row(r["k"].get<int>(), p, q, r["kernel"].get<double>());
    });
  } else {
    emit_json(out, "kernel-eval", br2d::io::document("kernel-eval", config, tol, results));
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-wave spectra, positivity certificate and divergence checks for the 2D projected Coulomb form"};
  app.require_subcommand(1);
  app.fallthrough();
  OutputOptions out;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", out.path, "Output file (default: $BR2D_OUTPUT_DIR/<command>.<format> or stdout)");
  app.add_option("--precision", out.precision, "Significant digits in output")->check(CLI::Range(1, 17));
  app.add_flag_function("--version", [](std::int64_t) {
    std::cout << br2d::version << '\n';
    throw CLI::Success();
  }, "Print the library version");

  auto* critical = app.add_subcommand("critical", "Critical coupling delta_c and the floor 1 - 2 delta_c");

  SpectrumOptions sp;
  auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalue of the discretized channel forms");
  spectrum->add_option("--delta", sp.deltas, "Coupling(s); comma separated")->delimiter(',');
  spectrum->add_flag("--delta-c", sp.delta_c, "Add the critical coupling to the sweep");
  spectrum->add_option("--k", sp.channels, "Channel(s); comma separated")->delimiter(',');
  spectrum->add_option("--n", sp.n, "Grid size")->check(CLI::Range(8, 4000));
  spectrum->add_option("--p-max", sp.p_max, "Momentum cutoff")->check(CLI::PositiveNumber);
  spectrum->add_option("--map", sp.map, "Grid map")->check(CLI::IsMember({"rational", "exponential"}));
  spectrum->add_flag("--assert-floor", sp.assert_floor, "Fail unless lambda_min >= 1 - 2 delta - tol for delta <= delta_c");
  spectrum->add_option("--floor-tol", sp.floor_tol, "Grid tolerance for --assert-floor")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--threads", sp.threads, "Worker threads for kernel assembly")->check(CLI::Range(1u, 256u));

  std::string suite;
  std::string strict;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "identities, certificates, lemmas or all")
      ->required()
      ->check(CLI::IsMember({"identities", "certificates", "lemmas", "all"}));
  verify->add_option("--strict-tol", strict, "Tolerance factor, e.g. 0.5x");

  double delta = 0.5;
  double a = 50.0;
  std::vector<double> bs{5e3, 5e4, 5e5};
  unsigned div_threads = 1;
  auto* diverge = app.add_subcommand("diverge", "Form values of chi_(a,b)/p above the critical coupling");
  diverge->add_option("--delta", delta, "Coupling (> delta_c)");
  diverge->add_option("--a", a, "Lower window edge");
  diverge->add_option("--b", bs, "Upper window edges; comma separated")->delimiter(',');
  diverge->add_option("--threads", div_threads, "Rows computed in parallel")->check(CLI::Range(1u, 256u));

  std::vector<int> kchans{0};
  double kp = 1.0;
  double kq = 2.0;
  std::vector<double> full;
  auto* keval = app.add_subcommand("kernel-eval", "Pointwise channel kernels K_k(p, q) and the full kernel");
  keval->add_option("--k", kchans, "Channel(s)")->delimiter(',');
  keval->add_option("--p", kp, "First momentum");
  keval->add_option("--q", kq, "Second momentum");
  keval->add_option("--full", full, "Full kernel at p1,p2,q1,q2")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*critical) return cmd_critical(out);
    if (*spectrum) return cmd_spectrum(sp, out);
    if (*verify) return cmd_verify(suite, strict, out);
    if (*diverge) return cmd_diverge(delta, a, bs, div_threads, out);
    if (*keval) return cmd_kernel_eval(kchans, kp, kq, full, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const br2d::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_check;
  }
  return exit_config;
}
