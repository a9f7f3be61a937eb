#pragma once

// Frequency-domain view of the modified kernel, used as an independent oracle.
//
// For t = m + tau, tau in [N, N+1), g = g(t):
//
//   E(t, w) = exp(i w t)   for |w| <= g
//           = exp(i w m)   for g < |w| <= pi
//
// (the second branch is exp(i g tau) exp(i w m) with exp(i g tau) = exp(i pi N) = 1
// because N is even).  The coefficients are the Fourier coefficients
//
//   a_k(t) = 1/(2 pi) * integral_{-pi}^{pi} E(t, w) exp(-i w k) dw,
//
// and sum_k a_k(t) exp(i w k) reproduces exp(i w t) only for |w| <= omega1.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <numbers>

#include "nvsinc/detail/double_double.hpp"
#include "nvsinc/error.hpp"
#include "nvsinc/kernel.hpp"
#include "nvsinc/params.hpp"
#include "nvsinc/quadrature.hpp"
#include "nvsinc/summation.hpp"

namespace nvsinc {

inline std::complex<double> e_value(const SamplingConfig& config, double t, double omega) {
  detail::require_finite_time(t);
  if (!(std::abs(omega) <= std::numbers::pi))
    throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in [-pi, pi]");
  const SegmentedTime st = segment(config, t);
  if (std::abs(omega) <= g_of_t(config, st)) return std::polar(1.0, omega * t);
  return std::polar(1.0, omega * static_cast<double>(st.m));
}

struct QuadratureResult {
  double value = 0.0;
  double imag = 0.0;
  std::size_t panels = 0;  // per smooth piece, at convergence
  double last_change = 0.0;
};

inline constexpr double kQuadratureTolerance = 1e-11;
inline constexpr double kQuadratureHardTolerance = 1e-10;
inline constexpr int kMaxPanelDoublings = 10;

/// The defining Fourier integral of a_k(t), integrated piecewise over
/// [-pi, -g], [-g, g], [g, pi] with composite 20-point Gauss-Legendre, doubling
/// the panel count until successive estimates agree to 1e-11.
inline QuadratureResult coeff_quadrature_detail(const SamplingConfig& config, double t, std::int64_t k,
                                                std::size_t panels = 64) {
  detail::require_finite_time(t);
  if (panels < 64) throw Error(ErrorCode::QuadratureNotConverged, "at least 64 panels required");
  const double g = g_of_t(config, t);
  const double pi = std::numbers::pi;
  const auto kd = static_cast<double>(k);
  auto integrand = [&](double w) { return e_value(config, t, w) * std::polar(1.0, -w * kd); };

  // Nodes never touch the piece endpoints, so the jumps at +-g are respected.
  auto estimate = [&](std::size_t p) {
    CompensatedSum<std::complex<double>> sum;
    if (g < pi) sum.add(composite_gauss_legendre<std::complex<double>>(integrand, -pi, -g, p));
    sum.add(composite_gauss_legendre<std::complex<double>>(integrand, -g, g, p));
    if (g < pi) sum.add(composite_gauss_legendre<std::complex<double>>(integrand, g, pi, p));
    return sum.result() / (2.0 * pi);
  };

  std::complex<double> previous = estimate(panels);
  double change = 0.0;
  for (int i = 0; i < kMaxPanelDoublings; ++i) {
    panels *= 2;
    const std::complex<double> current = estimate(panels);
    change = std::abs(current - previous);
    previous = current;
    if (change <= kQuadratureTolerance) return {current.real(), current.imag(), panels, change};
  }
  if (change <= kQuadratureHardTolerance) return {previous.real(), previous.imag(), panels, change};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", change);
  throw Error(ErrorCode::QuadratureNotConverged, std::string("successive estimates still differ by ") + buf);
}

/// Real part of the quadrature coefficient.  Throws QuadratureNotConverged
/// when the estimate does not settle or keeps an imaginary part above 1e-10.
inline double coeff_by_quadrature(const SamplingConfig& config, double t, std::int64_t k, std::size_t panels = 64) {
  const QuadratureResult r = coeff_quadrature_detail(config, t, k, panels);
  if (std::abs(r.imag) > kQuadratureHardTolerance)
    throw Error(ErrorCode::QuadratureNotConverged, "imaginary part exceeds 1e-10");
  return r.value;
}

/// |sum_{|k-m| <= K} a_k(t) exp(i w k) - exp(i w t)|.
///
/// Tends to 0 with K for |w| <= omega1; stays bounded away from 0 for some
/// |w| in (omega1, pi], which is why w is only required to lie in [-pi, pi].
inline double exp_reconstruction_error(const SamplingConfig& config, double t, double omega, std::int64_t K,
                                       unsigned threads = default_thread_count()) {
  detail::require_finite_time(t);
  if (!(std::abs(omega) <= std::numbers::pi))
    throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in [-pi, pi]");
  if (K < 1) throw Error(ErrorCode::EmptyWindow, "K must be positive");

  const SegmentedTime st = segment(config, t);
  const bool integral = detail::is_integer(t);
  const std::int64_t n = config.n_even();
  auto phase = [&](double x) {
    const auto sc = detail::sincos(detail::two_prod(omega, x));
    return std::complex<double>(sc.cos, sc.sin);
  };
  auto term = [&](std::int64_t k) {
    const double a = integral ? detail::kronecker(t, k) : detail::modified_coeff(n, st, k);
    return a == 0.0 ? std::complex<double>{} : a * phase(static_cast<double>(k));
  };
  const auto sum = deterministic_sum<std::complex<double>>(st.m - K, st.m + K, term, threads);
  return std::abs(sum - phase(t));
}

}  // namespace nvsinc
