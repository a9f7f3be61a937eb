#pragma once

// Batch experiments.  A JSON spec lists signals, times, truncation lengths and
// window modes; run_experiment() evaluates every cell with both formulas and
// the writers turn the rows into CSV or JSON artifacts.  Nothing in the output
// depends on timing or thread count.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nvsinc/error.hpp"
#include "nvsinc/interpolator.hpp"
#include "nvsinc/params.hpp"
#include "nvsinc/signals.hpp"

namespace nvsinc {

using json = nlohmann::json;

/// A published error magnitude to compare the run against.
struct ReferenceValue {
  std::int64_t L = 0;
  std::string kind;  // "modified" or "classical"
  double value = 0.0;
  std::string note;
  friend bool operator==(const ReferenceValue&, const ReferenceValue&) = default;
};

struct ExperimentSpec {
  std::string name;
  std::string omega = "5pi/12";
  std::optional<std::string> omega1;
  std::optional<std::int64_t> n;
  std::vector<std::string> signals;
  std::vector<double> times;
  std::vector<std::int64_t> Ls;
  std::vector<std::string> windows{"zero"};
  std::string output;
  std::string format = "csv";
  std::vector<ReferenceValue> references;
  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

namespace detail {

[[noreturn]] inline void spec_error(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidExperimentSpec, "field '" + field + "': " + why);
}

inline std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

/// Shortest text that reads back to the same double.
inline std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string frequency_field(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return shortest(v.get<double>());
  spec_error(field, "expected a number or a string such as \"5pi/12\"");
}

inline std::int64_t integer_field(const json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 0x1.0p62) return static_cast<std::int64_t>(d);
  }
  spec_error(field, "expected an integer");
}

inline double real_field(const json& v, const std::string& field) {
  if (!v.is_number()) spec_error(field, "expected a number");
  return v.get<double>();
}

inline std::string string_field(const json& v, const std::string& field) {
  if (!v.is_string()) spec_error(field, "expected a string");
  return v.get<std::string>();
}

inline const json& array_field(const json& v, const std::string& field) {
  if (!v.is_array()) spec_error(field, "expected an array");
  return v;
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      spec_error(where + key, "unknown key");
  }
}

inline std::string kind_name(CoefficientKind k) { return k == CoefficientKind::Modified ? "modified" : "classical"; }

}  // namespace detail

/// Resolves omega / omega1 / n given as text ("5pi/12", "1.2").  Errors name
/// the offending field.
inline SamplingConfig config_from_text(const std::string& omega, const std::optional<std::string>& omega1,
                                       std::optional<std::int64_t> n) {
  double w = 0.0;
  std::optional<double> w1;
  try {
    w = parse_frequency(omega);
  } catch (const Error& e) {
    detail::spec_error("omega", e.what());
  }
  if (omega1) {
    try {
      w1 = parse_frequency(*omega1);
    } catch (const Error& e) {
      detail::spec_error("omega1", e.what());
    }
  }
  try {
    return config_from_fields(w, w1, n);
  } catch (const Error& e) {
    std::string field = "omega";
    if (e.code() == ErrorCode::BandEdgeOutOfRange) {
      if (omega1 && w > 0.0 && w < std::numbers::pi) field = "omega1";
    } else if (n) {
      field = "n";
    } else if (omega1) {
      field = "omega1";
    }
    detail::spec_error(field, e.what());
  }
}

/// Config file: {"omega": ..., "omega1": ..., "n": ...}; only omega is required.
inline SamplingConfig config_from_json(const json& j) {
  if (!j.is_object()) detail::spec_error("config", "expected a JSON object");
  detail::reject_unknown_keys(j, {"omega", "omega1", "n"}, "");
  if (!j.contains("omega")) detail::spec_error("omega", "missing");
  std::optional<std::string> omega1;
  std::optional<std::int64_t> n;
  if (j.contains("omega1")) omega1 = detail::frequency_field(j["omega1"], "omega1");
  if (j.contains("n")) n = detail::integer_field(j["n"], "n");
  return config_from_text(detail::frequency_field(j["omega"], "omega"), omega1, n);
}

inline json to_json(const ExperimentSpec& s) {
  json j;
  j["name"] = s.name;
  j["omega"] = s.omega;
  if (s.omega1) j["omega1"] = *s.omega1;
  if (s.n) j["n"] = *s.n;
  j["signals"] = s.signals;
  j["t"] = s.times;
  j["L"] = s.Ls;
  j["windows"] = s.windows;
  j["output"] = s.output;
  j["format"] = s.format;
  j["references"] = json::array();
  for (const auto& r : s.references)
    j["references"].push_back({{"L", r.L}, {"kind", r.kind}, {"value", r.value}, {"note", r.note}});
  return j;
}

/// Structural parse only; validate() checks the values.
inline ExperimentSpec spec_from_json(const json& j) {
  using namespace detail;
  if (!j.is_object()) spec_error("spec", "expected a JSON object");
  reject_unknown_keys(j, {"name", "omega", "omega1", "n", "signals", "t", "L", "windows", "output", "format",
                          "references"},
                      "");
  ExperimentSpec s;
  s.windows.clear();
  for (const char* required : {"name", "signals", "t", "L"})
    if (!j.contains(required)) spec_error(required, "missing");
  s.name = string_field(j["name"], "name");
  if (j.contains("omega")) s.omega = frequency_field(j["omega"], "omega");
  if (j.contains("omega1")) s.omega1 = frequency_field(j["omega1"], "omega1");
  if (j.contains("n")) s.n = integer_field(j["n"], "n");
  std::size_t i = 0;
  for (const auto& v : array_field(j["signals"], "signals"))
    s.signals.push_back(string_field(v, "signals[" + std::to_string(i++) + "]"));
  i = 0;
  for (const auto& v : array_field(j["t"], "t")) s.times.push_back(real_field(v, "t[" + std::to_string(i++) + "]"));
  i = 0;
  for (const auto& v : array_field(j["L"], "L")) s.Ls.push_back(integer_field(v, "L[" + std::to_string(i++) + "]"));
  if (j.contains("windows")) {
    i = 0;
    for (const auto& v : array_field(j["windows"], "windows"))
      s.windows.push_back(string_field(v, "windows[" + std::to_string(i++) + "]"));
  } else {
    s.windows = {"zero"};
  }
  if (j.contains("output")) s.output = string_field(j["output"], "output");
  if (j.contains("format")) s.format = string_field(j["format"], "format");
  if (j.contains("references")) {
    i = 0;
    for (const auto& v : array_field(j["references"], "references")) {
      const std::string where = "references[" + std::to_string(i++) + "].";
      if (!v.is_object()) spec_error(where.substr(0, where.size() - 1), "expected an object");
      reject_unknown_keys(v, {"L", "kind", "value", "note"}, where);
      for (const char* required : {"L", "kind", "value"})
        if (!v.contains(required)) spec_error(where + required, "missing");
      ReferenceValue r;
      r.L = integer_field(v["L"], where + "L");
      r.kind = string_field(v["kind"], where + "kind");
      r.value = real_field(v["value"], where + "value");
      if (v.contains("note")) r.note = string_field(v["note"], where + "note");
      s.references.push_back(std::move(r));
    }
  }
  return s;
}

inline ExperimentSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("spec is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

/// Checks every value against the owning module and returns the resolved
/// config.  Throws InvalidExperimentSpec naming the first bad field.
inline SamplingConfig validate(const ExperimentSpec& s) {
  using detail::spec_error;
  if (s.name.empty()) spec_error("name", "must not be empty");
  const SamplingConfig config = config_from_text(s.omega, s.omega1, s.n);
  if (s.times.empty()) spec_error("t", "needs at least one time");
  for (std::size_t i = 0; i < s.times.size(); ++i)
    if (!std::isfinite(s.times[i])) spec_error("t[" + std::to_string(i) + "]", "must be finite");
  if (s.Ls.empty()) spec_error("L", "needs at least one truncation length");
  for (std::size_t i = 0; i < s.Ls.size(); ++i) {
    if (s.Ls[i] < 1) spec_error("L[" + std::to_string(i) + "]", "must be positive");
    if (s.Ls[i] > (kMaxGridPoints - 1) / 2)
      spec_error("L[" + std::to_string(i) + "]", "window of 2L+1 samples exceeds the 1e7 grid limit");
  }
  if (s.signals.empty()) spec_error("signals", "needs at least one signal");
  for (std::size_t i = 0; i < s.signals.size(); ++i) {
    for (const auto L : s.Ls) {
      try {
        (void)parse_signal(s.signals[i], L);
      } catch (const Error& e) {
        spec_error("signals[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  if (s.windows.empty()) spec_error("windows", "needs at least one window");
  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    try {
      (void)TruncationWindow::parse(s.windows[i], s.Ls.front());
    } catch (const Error& e) {
      spec_error("windows[" + std::to_string(i) + "]", e.what());
    }
  }
  if (s.format != "csv" && s.format != "json") spec_error("format", "must be csv or json");
  for (std::size_t i = 0; i < s.references.size(); ++i) {
    const auto& r = s.references[i];
    const std::string where = "references[" + std::to_string(i) + "].";
    if (r.kind != "modified" && r.kind != "classical") spec_error(where + "kind", "must be modified or classical");
    if (!(r.value > 0.0) || !std::isfinite(r.value)) spec_error(where + "value", "must be positive");
    if (std::find(s.Ls.begin(), s.Ls.end(), r.L) == s.Ls.end()) spec_error(where + "L", "not among the run's L values");
  }
  return config;
}

struct ExperimentRow {
  std::string signal;
  std::string window;
  double t = 0.0;
  std::int64_t L = 0;
  CoefficientKind kind = CoefficientKind::Modified;
  std::complex<double> estimate;
  std::complex<double> truth;
  double abs_err = 0.0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  SamplingConfig config;
  std::vector<ExperimentRow> rows;
};

/// Rows ordered by (signal, window, t, L) as listed in the spec, modified
/// before classical.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads = default_thread_count()) {
  ExperimentResult result{spec, validate(spec), {}};
  for (const auto& signal_text : spec.signals) {
    for (const auto& window_text : spec.windows) {
      for (const double t : spec.times) {
        for (const auto L : spec.Ls) {
          const Signal signal = parse_signal(signal_text, L);
          const TruncationWindow window = TruncationWindow::parse(window_text, L);
          const ErrorReport r = report(result.config, signal, t, window, threads);
          result.rows.push_back({signal_text, window_text, t, L, CoefficientKind::Modified, r.estimate_modified,
                                 r.truth, r.abs_err_modified});
          result.rows.push_back({signal_text, window_text, t, L, CoefficientKind::Classical, r.estimate_classical,
                                 r.truth, r.abs_err_classical});
        }
      }
    }
  }
  return result;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// 20 significant digits.
inline std::string e19(double v) { return format_double("%.19e", v); }

}  // namespace detail

inline void write_csv(const ExperimentResult& r, std::ostream& out) {
  using namespace detail;
  out << "signal,window,t,L,kind,omega,omega1,n,estimate_re,estimate_im,truth_re,truth_im,abs_err\n";
  for (const auto& row : r.rows) {
    out << csv_field(row.signal) << ',' << csv_field(row.window) << ',' << shortest(row.t) << ',' << row.L << ','
        << kind_name(row.kind) << ',' << shortest(r.config.omega()) << ',' << shortest(r.config.omega1()) << ','
        << r.config.n_even() << ',' << shortest(row.estimate.real()) << ',' << shortest(row.estimate.imag()) << ','
        << shortest(row.truth.real()) << ',' << shortest(row.truth.imag()) << ',' << e19(row.abs_err) << '\n';
  }
}

inline void write_json(const ExperimentResult& r, std::ostream& out) {
  json j;
  j["spec"] = to_json(r.spec);
  j["config"] = {{"omega", r.config.omega()}, {"omega1", r.config.omega1()}, {"n", r.config.n_even()}};
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"signal", row.signal},
                         {"window", row.window},
                         {"t", row.t},
                         {"L", row.L},
                         {"kind", detail::kind_name(row.kind)},
                         {"estimate", {row.estimate.real(), row.estimate.imag()}},
                         {"truth", {row.truth.real(), row.truth.imag()}},
                         {"abs_err", row.abs_err},
                         {"abs_err_text", detail::e19(row.abs_err)}});
  }
  out << j.dump(2) << '\n';
}

/// Orders of magnitude within which a reference counts as reproduced.
inline constexpr double kReproducedDecades = 1.0;

struct DiscrepancyRow {
  ReferenceValue reference;
  std::optional<ExperimentRow> best;  // closest in log10 among rows with the same L and kind
  double log10_ratio = 0.0;
  bool reproduced = false;
};

inline std::vector<DiscrepancyRow> discrepancy_table(const ExperimentResult& r) {
  std::vector<DiscrepancyRow> out;
  for (const auto& ref : r.spec.references) {
    DiscrepancyRow d{ref, std::nullopt, 0.0, false};
    for (const auto& row : r.rows) {
      if (row.L != ref.L || detail::kind_name(row.kind) != ref.kind) continue;
      const double ratio = row.abs_err > 0.0 ? std::log10(row.abs_err / ref.value) : -INFINITY;
      if (!d.best || std::abs(ratio) < std::abs(d.log10_ratio)) {
        d.best = row;
        d.log10_ratio = ratio;
      }
    }
    d.reproduced = d.best && std::abs(d.log10_ratio) <= kReproducedDecades;
    out.push_back(std::move(d));
  }
  return out;
}

inline void write_discrepancy_csv(const std::vector<DiscrepancyRow>& table, std::ostream& out) {
  using namespace detail;
  out << "L,kind,reference,note,best_signal,best_window,best_abs_err,log10_ratio,status\n";
  for (const auto& d : table) {
    out << d.reference.L << ',' << d.reference.kind << ',' << e19(d.reference.value) << ','
        << csv_field(d.reference.note) << ',' << (d.best ? csv_field(d.best->signal) : "") << ','
        << (d.best ? csv_field(d.best->window) : "") << ',' << (d.best ? e19(d.best->abs_err) : "") << ','
        << format_double("%.3f", d.log10_ratio) << ',' << (d.reproduced ? "reproduced" : "MISMATCH") << '\n';
  }
}

/// Human-readable version of the discrepancy table.
inline void print_discrepancy_table(const std::vector<DiscrepancyRow>& table, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %-10s %-12s %-12s %-8s %-10s %s\n", "L", "kind", "reference", "best",
                "log10", "status", "best cell");
  out << line;
  for (const auto& d : table) {
    const std::string cell = d.best ? d.best->signal + " window=" + d.best->window : "(no row)";
    std::snprintf(line, sizeof line, "%-8lld %-10s %-12.4e %-12.4e %-8.2f %-10s ", static_cast<long long>(d.reference.L),
                  d.reference.kind.c_str(), d.reference.value, d.best ? d.best->abs_err : NAN, d.log10_ratio,
                  d.reproduced ? "reproduced" : "MISMATCH");
    out << line << cell << '\n';
  }
}

/// Writes the rows to `path` and, when the spec carries references, the
/// discrepancy table to `path + ".discrepancy.csv"`.  Files are written in
/// binary mode so line endings are LF everywhere.
inline std::vector<DiscrepancyRow> write_artifacts(const ExperimentResult& r, const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    if (r.spec.format == "json")
      write_json(r, out);
    else
      write_csv(r, out);
  }
  auto table = discrepancy_table(r);
  if (!table.empty()) {
    std::ofstream out(path + ".discrepancy.csv", std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + ".discrepancy.csv'");
    write_discrepancy_csv(table, out);
  }
  return table;
}

}  // namespace nvsinc
