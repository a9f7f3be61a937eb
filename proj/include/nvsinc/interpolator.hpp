#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "nvsinc/error.hpp"
#include "nvsinc/kernel.hpp"
#include "nvsinc/params.hpp"
#include "nvsinc/signals.hpp"
#include "nvsinc/summation.hpp"

namespace nvsinc {

struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  std::int64_t size() const noexcept { return hi - lo + 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

enum class WindowCentering { Zero, AtT };

/// Index set replacing Z in the interpolation series.
class TruncationWindow {
 public:
  struct CenteredAtZero {
    std::int64_t L;
    friend bool operator==(const CenteredAtZero&, const CenteredAtZero&) = default;
  };
  struct CenteredAtT {
    std::int64_t L;
    friend bool operator==(const CenteredAtT&, const CenteredAtT&) = default;
  };
  struct Explicit {
    std::int64_t lo;
    std::int64_t hi;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  using Mode = std::variant<CenteredAtZero, CenteredAtT, Explicit>;

  /// [-L, L]
  static TruncationWindow centered_at_zero(std::int64_t L) {
    check_length(L);
    return TruncationWindow(CenteredAtZero{L});
  }
  /// [round(t) - L, round(t) + L]
  static TruncationWindow centered_at_t(std::int64_t L) {
    check_length(L);
    return TruncationWindow(CenteredAtT{L});
  }
  static TruncationWindow explicit_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw Error(ErrorCode::EmptyWindow, "window lo must not exceed hi");
    return TruncationWindow(Explicit{lo, hi});
  }
  static TruncationWindow centered(WindowCentering c, std::int64_t L) {
    return c == WindowCentering::Zero ? centered_at_zero(L) : centered_at_t(L);
  }

  /// "zero", "t" (both need L) or "lo:hi".
  static TruncationWindow parse(std::string_view text, std::optional<std::int64_t> L) {
    if (text == "zero" || text == "t") {
      if (!L) throw Error(ErrorCode::EmptyWindow, "window '" + std::string(text) + "' needs L");
      return text == "zero" ? centered_at_zero(*L) : centered_at_t(*L);
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "window must be zero, t or lo:hi, got '" + std::string(text) + "'");
    try {
      std::size_t used_lo = 0;
      std::size_t used_hi = 0;
      const std::string lo_text(text.substr(0, colon));
      const std::string hi_text(text.substr(colon + 1));
      const auto lo = std::stoll(lo_text, &used_lo);
      const auto hi = std::stoll(hi_text, &used_hi);
      if (used_lo == lo_text.size() && used_hi == hi_text.size()) return explicit_range(lo, hi);
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::ParseError, "bad explicit window '" + std::string(text) + "'");
  }

  const Mode& mode() const noexcept { return mode_; }

  IndexRange resolve(double t) const {
    detail::require_finite_time(t);
    if (const auto* z = std::get_if<CenteredAtZero>(&mode_)) return {-z->L, z->L};
    if (const auto* c = std::get_if<CenteredAtT>(&mode_)) {
      if (!(std::abs(t) < 0x1.0p62)) throw Error(ErrorCode::WindowExceedsGrid, "t too large to centre a window on");
      const std::int64_t centre = std::llround(t);
      return {centre - c->L, centre + c->L};
    }
    const auto& e = std::get<Explicit>(mode_);
    return {e.lo, e.hi};
  }

  std::string describe() const {
    if (std::holds_alternative<CenteredAtZero>(mode_)) return "zero";
    if (std::holds_alternative<CenteredAtT>(mode_)) return "t";
    const auto& e = std::get<Explicit>(mode_);
    return std::to_string(e.lo) + ":" + std::to_string(e.hi);
  }

  friend bool operator==(const TruncationWindow&, const TruncationWindow&) = default;

 private:
  explicit TruncationWindow(Mode m) : mode_(m) {}

  static void check_length(std::int64_t L) {
    if (L < 1) throw Error(ErrorCode::EmptyWindow, "L must be positive");
  }

  Mode mode_;
};

/// Truncated series sum_{k in window} a_k(t) x(k), accumulated in ascending k
/// with compensation; bit-identical for every thread count.
template <class Value>
Value interpolate(const SamplingConfig& config, const BasicSampleGrid<Value>& grid, double t,
                  const TruncationWindow& window, CoefficientKind kind, unsigned threads = default_thread_count()) {
  const IndexRange r = window.resolve(t);
  if (r.lo > r.hi) throw Error(ErrorCode::EmptyWindow, "window resolves to an empty range");
  if (!grid.contains(r.lo) || !grid.contains(r.hi))
    throw Error(ErrorCode::WindowExceedsGrid, "window [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                                                  "] is not covered by the sample grid [" + std::to_string(grid.k_lo) +
                                                  ", " + std::to_string(grid.k_hi) + "]");

  if (detail::is_integer(t)) {
    // Kronecker row: the sample itself, or nothing when t is outside the window.
    const double k = t;
    if (k >= static_cast<double>(r.lo) && k <= static_cast<double>(r.hi))
      return grid[static_cast<std::int64_t>(k)];
    return Value{};
  }

  if (kind == CoefficientKind::Modified) {
    const SegmentedTime st = segment(config, t);
    const std::int64_t n = config.n_even();
    return deterministic_sum<Value>(
        r.lo, r.hi, [&](std::int64_t k) { return detail::modified_coeff(n, st, k) * grid[k]; }, threads);
  }
  const double s = detail::sin_pi(t);
  return deterministic_sum<Value>(
      r.lo, r.hi, [&](std::int64_t k) { return detail::classical_coeff(t, s, k) * grid[k]; }, threads);
}

namespace detail {

inline bool parse_double_field(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) return false;
  const std::string copy(text);
  char* end = nullptr;
  out = std::strtod(copy.c_str(), &end);
  return end == copy.c_str() + copy.size() && std::isfinite(out);
}

}  // namespace detail

/// Reads samples from CSV rows "k,re" or "k,re,im".  A non-numeric first row is
/// taken as a header; k must run contiguously upward.
inline SampleGrid read_samples_csv(std::istream& in) {
  SampleGrid grid;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    double k = 0.0;
    const bool numeric = detail::parse_double_field(fields[0], k);
    if (first && !numeric) {
      first = false;
      continue;
    }
    first = false;
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::InvalidSamples, "samples line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() < 2 || fields.size() > 3) throw fail("expected k,re[,im]");
    if (!numeric || k != std::floor(k) || std::abs(k) > 0x1.0p53) throw fail("k must be an integer");
    double re = 0.0;
    double im = 0.0;
    if (!detail::parse_double_field(fields[1], re)) throw fail("bad real part");
    if (fields.size() == 3 && !detail::parse_double_field(fields[2], im)) throw fail("bad imaginary part");
    const auto ki = static_cast<std::int64_t>(k);
    if (grid.values.empty()) {
      grid.k_lo = ki;
    } else if (ki != grid.k_hi + 1) {
      throw fail("k must be contiguous, expected " + std::to_string(grid.k_hi + 1));
    }
    grid.k_hi = ki;
    grid.values.emplace_back(re, im);
    if (static_cast<std::int64_t>(grid.values.size()) > kMaxGridPoints) throw fail("more than 1e7 samples");
  }
  if (grid.values.empty()) throw Error(ErrorCode::InvalidSamples, "no samples");
  return grid;
}

struct ErrorReport {
  double t = 0.0;
  std::complex<double> truth;
  std::complex<double> estimate_modified;
  std::complex<double> estimate_classical;
  double abs_err_modified = 0.0;
  double abs_err_classical = 0.0;
  TruncationWindow window;
  IndexRange resolved;
  SamplingConfig config;
};

/// Samples `signal` over the resolved window and evaluates both formulas
/// against eval(signal, t).
inline ErrorReport report(const SamplingConfig& config, const Signal& signal, double t,
                          const TruncationWindow& window, unsigned threads = default_thread_count()) {
  const IndexRange r = window.resolve(t);
  const SampleGrid grid = sample(signal, r.lo, r.hi);
  const auto truth = eval(signal, t);
  const auto modified = interpolate(config, grid, t, window, CoefficientKind::Modified, threads);
  const auto classical = interpolate(config, grid, t, window, CoefficientKind::Classical, threads);
  return ErrorReport{t,        truth, modified, classical, std::abs(modified - truth), std::abs(classical - truth),
                     window,   r,     config};
}

/// One report per truncation length.  `make_signal(L)` lets the signal depend
/// on L (the cosine experiment shifts its phase by L/2).
template <class SignalFactory>
  requires std::is_invocable_r_v<Signal, SignalFactory, std::int64_t>
std::vector<ErrorReport> convergence_sweep(const SamplingConfig& config, SignalFactory&& make_signal, double t,
                                           const std::vector<std::int64_t>& L_values, WindowCentering mode,
                                           unsigned threads = default_thread_count()) {
  if (L_values.empty()) throw Error(ErrorCode::EmptyWindow, "sweep needs at least one L");
  for (std::size_t i = 1; i < L_values.size(); ++i)
    if (L_values[i] <= L_values[i - 1]) throw Error(ErrorCode::InvalidExperimentSpec, "L values must ascend");
  std::vector<ErrorReport> out;
  out.reserve(L_values.size());
  for (const auto L : L_values) out.push_back(report(config, make_signal(L), t, TruncationWindow::centered(mode, L), threads));
  return out;
}

inline std::vector<ErrorReport> convergence_sweep(const SamplingConfig& config, const Signal& signal, double t,
                                                  const std::vector<std::int64_t>& L_values, WindowCentering mode,
                                                  unsigned threads = default_thread_count()) {
  return convergence_sweep(config, [&signal](std::int64_t) { return signal; }, t, L_values, mode, threads);
}

}  // namespace nvsinc
