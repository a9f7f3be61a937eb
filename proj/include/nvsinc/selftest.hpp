#pragma once

// Property suites behind `nvsinc selftest`.  The coefficient function is a
// parameter so a corrupted kernel can be fed through the same checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "nvsinc/error.hpp"
#include "nvsinc/interpolator.hpp"
#include "nvsinc/kernel.hpp"
#include "nvsinc/params.hpp"
#include "nvsinc/signals.hpp"
#include "nvsinc/spectral.hpp"

namespace nvsinc {

using CoeffFn = std::function<double(const SamplingConfig&, double, std::int64_t)>;

inline double library_coeff(const SamplingConfig& c, double t, std::int64_t k) { return coeff(c, t, k); }

/// The kernel with a_1(4.5) scaled by 1 + 1e-6.
inline double faulty_coeff(const SamplingConfig& c, double t, std::int64_t k) {
  const double v = coeff(c, t, k);
  return (t == 4.5 && k == 1) ? v * (1.0 + 1e-6) : v;
}

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::string first_failure;
};

namespace detail {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = what;
  }

  SuiteResult result() const { return r_; }

 private:
  SuiteResult r_;
};

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline SuiteResult suite_params() {
  SuiteRecorder s("params");
  const auto c = default_config(5 * std::numbers::pi / 12);
  s.check(c.n_even() == 4, "default N for omega = 5pi/12 is 4");
  s.check(std::abs(c.omega1() - 17 * std::numbers::pi / 24) < 1e-15, "default omega1 is 17pi/24");
  const auto st = segment(c, 47830.4);
  s.check(st.m == 47826 && st.tau >= 4.0 && st.tau < 5.0, "segment(47830.4)");
  s.check(std::abs(g_of_t(c, 4.5) - 2.7925268031909273231) < 1e-15, "g(4.5)");
  bool odd_rejected = false;
  try {
    (void)validate_config(1.0, 2.0, 5);
  } catch (const Error& e) {
    odd_rejected = e.code() == ErrorCode::OddN;
  }
  s.check(odd_rejected, "odd N rejected");
  return s.result();
}

inline SuiteResult suite_kronecker(const SamplingConfig& c, const CoeffFn& fn) {
  SuiteRecorder s("kronecker");
  for (std::int64_t l = -100; l <= 100; ++l) {
    for (std::int64_t k = -100; k <= 100; ++k) {
      const double want = l == k ? 1.0 : 0.0;
      s.check(fn(c, static_cast<double>(l), k) == want, "coeff(" + std::to_string(l) + ", " + std::to_string(k) + ")");
      s.check(nvsinc::classical_coeff(static_cast<double>(l), k) == want,
              "classical_coeff(" + std::to_string(l) + ", " + std::to_string(k) + ")");
    }
  }
  return s.result();
}

inline SuiteResult suite_oracle(const SamplingConfig& c, const CoeffFn& fn) {
  SuiteRecorder s("oracle");
  struct Frozen {
    double t;
    std::int64_t k;
    double value;
  };
  for (const Frozen& f : {Frozen{4.5, 0, 1.0 / 9.0}, Frozen{4.5, 1, -0.13997364800728806914},
                          Frozen{4.5, -2, 0.070825032996809952163}, Frozen{17.3, -50, -0.00030553147169427161342}}) {
    const double got = fn(c, f.t, f.k);
    s.check(std::abs(got - f.value) <= 1e-14 * std::abs(f.value),
            "frozen a_" + std::to_string(f.k) + "(" + sci(f.t) + ")");
  }
  for (double t : {4.1, 4.5, 4.9, 17.3, -2.75}) {
    for (std::int64_t k = -10; k <= 10; ++k) {
      const double diff = std::abs(coeff_by_quadrature(c, t, k) - fn(c, t, k));
      s.check(diff <= 1e-9, "quadrature vs closed form at t=" + sci(t) + ", k=" + std::to_string(k) +
                                ": " + sci(diff));
    }
  }
  return s.result();
}

inline SuiteResult suite_shift(const SamplingConfig& c, const CoeffFn& fn) {
  SuiteRecorder s("shift");
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ut(-50.0, 50.0);
  std::uniform_int_distribution<std::int64_t> uk(-200, 200);
  for (int i = 0; i < 1000; ++i) {
    const double t = ut(rng);
    const std::int64_t k = uk(rng);
    const std::int64_t m = uk(rng);
    const double a = fn(c, t + static_cast<double>(m), k);
    const double b = fn(c, t, k - m);
    s.check(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)), "shift identity at sample " + std::to_string(i));
  }
  return s.result();
}

/// Least-squares slope of log|f(k)| against log k on a log-spaced grid.
inline double log_log_slope(const std::function<double(std::int64_t)>& f, std::int64_t lo, std::int64_t hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  const double step = std::log(static_cast<double>(hi) / static_cast<double>(lo)) / 400.0;
  for (int i = 0; i <= 400; ++i) {
    const auto k = static_cast<std::int64_t>(std::llround(static_cast<double>(lo) * std::exp(step * i)));
    const double v = std::abs(f(k));
    if (v == 0.0) continue;
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline SuiteResult suite_decay(const SamplingConfig& c, const CoeffFn& fn) {
  SuiteRecorder s("decay");
  const double modified = log_log_slope([&](std::int64_t k) { return fn(c, 4.5, k); }, 100, 100000);
  const double classical = log_log_slope([](std::int64_t k) { return nvsinc::classical_coeff(4.5, k); }, 100, 100000);
  s.check(modified >= -2.2 && modified <= -1.8, "modified slope " + sci(modified));
  s.check(classical >= -1.2 && classical <= -0.8, "classical slope " + sci(classical));
  return s.result();
}

inline SuiteResult suite_exp_reconstruction(const SamplingConfig& c) {
  SuiteRecorder s("exp-reconstruction");
  for (double w : {-c.omega1(), -1.0, 0.0, 0.5, c.omega1()}) {
    const double e = exp_reconstruction_error(c, 4.5, w, 100000);
    s.check(e <= 1e-4, "in-band omega=" + sci(w) + " error " + sci(e));
  }
  const double outside = exp_reconstruction_error(c, 4.5, std::numbers::pi - 0.01, 10000);
  s.check(outside > 1e-2, "out-of-band error " + sci(outside));
  return s.result();
}

inline SuiteResult suite_interpolation(const SamplingConfig& c) {
  SuiteRecorder s("interpolation");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Signal sig = random_trig_poly(c.omega(), 10, seed);
    const ErrorReport r = report(c, sig, 4.5, TruncationWindow::centered_at_t(10000));
    s.check(r.abs_err_modified <= 1e-3, "trig poly seed " + std::to_string(seed) + " error " + sci(r.abs_err_modified));
    const auto at_sample = report(c, sig, 7.0, TruncationWindow::centered_at_t(10));
    s.check(at_sample.abs_err_modified == 0.0, "exact at integer time");
  }
  return s.result();
}

}  // namespace detail

/// Runs every suite, printing one line each.  Returns 0 when all pass, 1 on a
/// failed check and 3 when the quadrature oracle does not converge.
inline int run_selftest(std::ostream& out, const CoeffFn& fn = library_coeff) {
  const SamplingConfig c = default_config(5 * std::numbers::pi / 12);
  std::vector<std::function<SuiteResult()>> suites = {
      [] { return detail::suite_params(); },
      [&] { return detail::suite_kronecker(c, fn); },
      [&] { return detail::suite_oracle(c, fn); },
      [&] { return detail::suite_shift(c, fn); },
      [&] { return detail::suite_decay(c, fn); },
      [&] { return detail::suite_exp_reconstruction(c); },
      [&] { return detail::suite_interpolation(c); },
  };
  int failed = 0;
  for (const auto& suite : suites) {
    SuiteResult r;
    try {
      r = suite();
    } catch (const Error& e) {
      out << "selftest aborted: " << e.what() << '\n';
      return e.code() == ErrorCode::QuadratureNotConverged ? 3 : 1;
    }
    out << (r.failures == 0 ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks";
    if (r.failures > 0) out << ", " << r.failures << " failed; first: " << r.first_failure;
    out << ")\n";
    if (r.failures > 0) ++failed;
  }
  out << (failed == 0 ? "selftest: all " : "selftest: ") << (suites.size() - static_cast<std::size_t>(failed)) << "/"
      << suites.size() << " suites passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace nvsinc
