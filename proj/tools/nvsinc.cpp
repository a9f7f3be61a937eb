// nvsinc: coefficients, oracle checks, single reconstructions, sweeps and
// batch experiments from the command line.
//
// Exit status: 0 success, 1 selftest failure, 2 invalid input, 3 numerical
// failure (quadrature did not converge).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nvsinc/experiment.hpp"
#include "nvsinc/selftest.hpp"

namespace {

using nvsinc::json;

struct ConfigOptions {
  std::optional<std::string> omega;
  std::optional<std::string> omega1;
  std::optional<std::int64_t> n;
  std::optional<std::string> file;
};

// Config file first, then any explicit flag on top.
nvsinc::SamplingConfig resolve_config(const ConfigOptions& o) {
  std::string omega = "5pi/12";
  std::optional<std::string> omega1;
  std::optional<std::int64_t> n;
  if (o.file) {
    std::ifstream in(*o.file, std::ios::binary);
    if (!in) throw nvsinc::Error(nvsinc::ErrorCode::ParseError, "cannot read config file '" + *o.file + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw nvsinc::Error(nvsinc::ErrorCode::ParseError, std::string("config file: ") + e.what());
    }
    (void)nvsinc::config_from_json(j);
    omega = nvsinc::detail::frequency_field(j["omega"], "omega");
    if (j.contains("omega1")) omega1 = nvsinc::detail::frequency_field(j["omega1"], "omega1");
    if (j.contains("n")) n = nvsinc::detail::integer_field(j["n"], "n");
  }
  if (o.omega) omega = *o.omega;
  if (o.omega1) omega1 = o.omega1;
  if (o.n) n = o.n;
  return nvsinc::config_from_text(omega, omega1, n);
}

using nvsinc::detail::shortest;

json config_json(const nvsinc::SamplingConfig& c) {
  return {{"omega", c.omega()}, {"omega1", c.omega1()}, {"n", c.n_even()}};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::vector<std::int64_t> parse_L_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || v != std::floor(v) || !(v >= 1.0) || v > 1e15)
      throw nvsinc::Error(nvsinc::ErrorCode::ParseError, "bad L value '" + item + "'");
    out.push_back(static_cast<std::int64_t>(v));
  }
  if (out.empty()) throw nvsinc::Error(nvsinc::ErrorCode::ParseError, "--Ls is empty");
  return out;
}

int cmd_coeffs(const nvsinc::SamplingConfig& c, double t, std::int64_t k_lo, std::int64_t k_hi, bool classical) {
  if (k_hi >= k_lo && k_hi - k_lo >= nvsinc::kMaxGridPoints)
    throw nvsinc::Error(nvsinc::ErrorCode::WindowExceedsGrid, "more than 1e7 coefficients requested");
  const auto row = classical ? nvsinc::classical_row(t, k_lo, k_hi) : nvsinc::coeff_row(c, t, k_lo, k_hi);
  std::string out = "k,value\n";
  for (std::int64_t k = k_lo; k <= k_hi; ++k) out += std::to_string(k) + "," + shortest(row.at_index(k)) + "\n";
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}

int cmd_oracle(const nvsinc::SamplingConfig& c, double t, std::int64_t k, std::size_t panels) {
  const double closed = nvsinc::coeff(c, t, k);
  const auto q = nvsinc::coeff_quadrature_detail(c, t, k, panels);
  if (std::abs(q.imag) > nvsinc::kQuadratureHardTolerance)
    throw nvsinc::Error(nvsinc::ErrorCode::QuadratureNotConverged, "imaginary part " + shortest(q.imag) + " exceeds 1e-10");
  std::cout << "t=" << shortest(t) << " k=" << k << " N=" << c.n_even() << "\n"
            << "closed_form " << shortest(closed) << "\n"
            << "quadrature  " << shortest(q.value) << "\n"
            << "difference  " << nvsinc::detail::e19(q.value - closed) << "\n"
            << "panels " << q.panels << " last_change " << nvsinc::detail::e19(q.last_change) << "\n";
  return 0;
}

struct InterpOptions {
  double t = 0.0;
  std::optional<std::int64_t> L;
  std::string window = "t";
  std::optional<std::string> signal;
  std::optional<std::string> samples;
  std::string kind = "both";
};

int cmd_interp(const nvsinc::SamplingConfig& c, const InterpOptions& o) {
  if (o.kind != "modified" && o.kind != "classical" && o.kind != "both")
    throw nvsinc::Error(nvsinc::ErrorCode::ParseError, "--kind must be modified, classical or both");
  if (o.signal.has_value() == o.samples.has_value())
    throw nvsinc::Error(nvsinc::ErrorCode::ParseError, "give exactly one of --signal and --samples");
  const auto window = nvsinc::TruncationWindow::parse(o.window, o.L);
  const auto range = window.resolve(o.t);

  std::optional<nvsinc::Signal> signal;
  nvsinc::SampleGrid grid;
  if (o.signal) {
    signal = nvsinc::parse_signal(*o.signal, o.L);
    grid = nvsinc::sample(*signal, range.lo, range.hi);
  } else {
    std::ifstream in(*o.samples, std::ios::binary);
    if (!in) throw nvsinc::Error(nvsinc::ErrorCode::InvalidSamples, "cannot read '" + *o.samples + "'");
    grid = nvsinc::read_samples_csv(in);
  }

  json j;
  j["config"] = config_json(c);
  j["t"] = o.t;
  j["window"] = window.describe();
  j["range"] = {range.lo, range.hi};
  std::optional<std::complex<double>> truth;
  if (signal) {
    truth = nvsinc::eval(*signal, o.t);
    j["signal"] = *o.signal;
    j["truth"] = complex_json(*truth);
  } else {
    j["samples"] = *o.samples;
  }
  auto add = [&](nvsinc::CoefficientKind kind, const char* name) {
    const auto est = nvsinc::interpolate(c, grid, o.t, window, kind);
    json r{{"estimate", complex_json(est)}};
    if (truth) {
      r["abs_err"] = std::abs(est - *truth);
      r["abs_err_text"] = nvsinc::detail::e19(std::abs(est - *truth));
    }
    j[name] = r;
  };
  if (o.kind != "classical") add(nvsinc::CoefficientKind::Modified, "modified");
  if (o.kind != "modified") add(nvsinc::CoefficientKind::Classical, "classical");
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const nvsinc::SamplingConfig& c, const std::string& Ls, double t, const std::string& window,
              const std::string& signal_text) {
  nvsinc::WindowCentering mode;
  if (window == "zero")
    mode = nvsinc::WindowCentering::Zero;
  else if (window == "t")
    mode = nvsinc::WindowCentering::AtT;
  else
    throw nvsinc::Error(nvsinc::ErrorCode::ParseError, "sweep --window must be zero or t");
  const auto L_values = parse_L_list(Ls);
  for (const auto L : L_values) (void)nvsinc::parse_signal(signal_text, L);
  const auto reports = nvsinc::convergence_sweep(
      c, [&](std::int64_t L) { return nvsinc::parse_signal(signal_text, L); }, t, L_values, mode);
  std::string out = "L,err_classical,err_modified\n";
  for (std::size_t i = 0; i < reports.size(); ++i)
    out += std::to_string(L_values[i]) + "," + nvsinc::detail::e19(reports[i].abs_err_classical) + "," +
           nvsinc::detail::e19(reports[i].abs_err_modified) + "\n";
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}

int cmd_run(const std::string& spec_path, const std::optional<std::string>& output,
            const std::optional<std::string>& format) {
  auto spec = nvsinc::load_spec(spec_path);
  if (format) spec.format = *format;
  (void)nvsinc::validate(spec);
  std::string path = output ? *output : spec.output;
  if (path.empty()) path = spec.name + "." + spec.format;
  const auto result = nvsinc::run_experiment(spec);
  const auto table = nvsinc::write_artifacts(result, path);
  std::cout << "wrote " << path << " (" << result.rows.size() << " rows, N=" << result.config.n_even() << ")\n";
  if (!table.empty()) {
    std::cout << "discrepancy table (" << path << ".discrepancy.csv):\n";
    nvsinc::print_discrepancy_table(table, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified sinc interpolation with 1/k^2 coefficient decay"};
  app.require_subcommand(1);

  ConfigOptions cfg;
  app.add_option("--omega", cfg.omega, "band edge, e.g. 5pi/12 (default)");
  app.add_option("--omega1", cfg.omega1, "oversampled band edge (default (omega+pi)/2)");
  app.add_option("--n", cfg.n, "even N (default: smallest admissible)");
  app.add_option("--config", cfg.file, "JSON file with omega, omega1, n");

  double t = 0.0;
  std::int64_t k_lo = 0, k_hi = 0, k = 0;
  bool classical = false;
  auto* coeffs = app.add_subcommand("coeffs", "print a_k(t) for a range of k as CSV");
  coeffs->add_option("--t", t)->required();
  coeffs->add_option("--k-lo", k_lo)->required();
  coeffs->add_option("--k-hi", k_hi)->required();
  coeffs->add_flag("--classical", classical, "classical sinc coefficients instead");

  std::size_t panels = 64;
  auto* oracle = app.add_subcommand("oracle", "compare a_k(t) with its Fourier-integral quadrature");
  oracle->add_option("--t", t)->required();
  oracle->add_option("--k", k)->required();
  oracle->add_option("--panels", panels, "starting panels per piece (>= 64)");

  InterpOptions io;
  auto* interp = app.add_subcommand("interp", "reconstruct one value, report as JSON");
  interp->add_option("--t", io.t)->required();
  interp->add_option("--L", io.L);
  interp->add_option("--window", io.window, "zero, t or lo:hi");
  interp->add_option("--signal", io.signal, "cosine:..., kpt:..., trig:...");
  interp->add_option("--samples", io.samples, "CSV file with rows k,re[,im]");
  interp->add_option("--kind", io.kind, "modified, classical or both");

  std::string Ls = "1e3,1e4,1e5";
  std::string sweep_window = "t";
  std::string sweep_signal;
  auto* sweep = app.add_subcommand("sweep", "error against truncation length as CSV");
  sweep->add_option("--Ls", Ls, "comma-separated ascending L values");
  sweep->add_option("--t", t)->required();
  sweep->add_option("--window", sweep_window, "zero or t");
  sweep->add_option("--signal", sweep_signal)->required();

  std::string spec_path;
  std::optional<std::string> output, format;
  auto* run = app.add_subcommand("run", "run an experiment spec");
  run->add_option("--spec", spec_path)->required();
  run->add_option("--output", output, "artifact path (overrides the spec)");
  run->add_option("--format", format, "csv or json (overrides the spec)");

  bool inject_fault = false;
  auto* selftest = app.add_subcommand("selftest", "run the property suites");
  selftest->add_flag("--inject-fault", inject_fault, "perturb a_1(4.5) to check that the suites notice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*selftest) return nvsinc::run_selftest(std::cout, inject_fault ? nvsinc::faulty_coeff : nvsinc::library_coeff);
    if (*run) return cmd_run(spec_path, output, format);
    const auto config = resolve_config(cfg);
    if (*coeffs) return cmd_coeffs(config, t, k_lo, k_hi, classical);
    if (*oracle) return cmd_oracle(config, t, k, panels);
    if (*interp) return cmd_interp(config, io);
    if (*sweep) return cmd_sweep(config, Ls, t, sweep_window, sweep_signal);
  } catch (const nvsinc::Error& e) {
    std::cerr << "nvsinc: " << e.what() << "\n";
    return e.code() == nvsinc::ErrorCode::QuadratureNotConverged ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "nvsinc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
