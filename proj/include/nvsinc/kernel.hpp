#pragma once

// Interpolation coefficients.
//
// Modified kernel, for t in [N+m, N+m+1) with tau = t - m and g = pi*N/tau:
//
//   a_m(t) = 1 - g/pi
//   a_k(t) = tau * sin(g*(k-m)) / (pi*(k-m)*(k-t)),   k != m
//
// and a_k(l) = [k == l] at integer l.  The coefficients decay like 1/k^2,
// so the series converges absolutely for bounded (non-vanishing) samples.
//
// Classical kernel: sin(pi*(k-t)) / (pi*(k-t)), decaying like 1/k.
//
// Every phase is carried to ~106 bits before the final sin (see
// detail/double_double.hpp), which keeps coefficients accurate to ~1e-15
// relative out to |k| of order 1e6 and beyond.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "nvsinc/detail/double_double.hpp"
#include "nvsinc/error.hpp"
#include "nvsinc/params.hpp"

namespace nvsinc {

enum class CoefficientKind { Modified, Classical };

struct CoefficientRow {
  double t = 0.0;
  std::int64_t k_lo = 0;
  std::int64_t k_hi = -1;
  std::vector<double> values;
  CoefficientKind kind = CoefficientKind::Modified;

  std::size_t size() const noexcept { return values.size(); }
  double at_index(std::int64_t k) const { return values.at(static_cast<std::size_t>(k - k_lo)); }
};

namespace detail {

inline bool is_integer(double t) noexcept { return std::floor(t) == t; }

/// Kronecker value for integer t; t may lie outside the int64 range.
inline double kronecker(double t, std::int64_t k) noexcept {
  return static_cast<double>(k) == t ? 1.0 : 0.0;
}

/// sin(g*d) with g = pi*N/tau, evaluated as sin(pi * (N*d/tau)).
inline double sin_g_times(std::int64_t n, double tau, std::int64_t d) noexcept {
  const double nd = static_cast<double>(n) * static_cast<double>(d);
  return sincos_pi(divide(nd, tau)).sin;
}

/// Modified coefficient from the segmentation of t.  The value depends on
/// (tau, k - m) only; tau == N is the integer time m + N, including t within
/// an ulp of an integer whose reduced time rounded onto N.
inline double modified_coeff(std::int64_t n, const SegmentedTime& st, std::int64_t k) noexcept {
  const std::int64_t d = k - st.m;
  if (st.tau == static_cast<double>(n)) return d == n ? 1.0 : 0.0;
  if (d == 0) return (st.tau - static_cast<double>(n)) / st.tau;
  const double dd = static_cast<double>(d);
  return st.tau * sin_g_times(n, st.tau, d) / (std::numbers::pi * dd * (dd - st.tau));
}

/// Classical coefficient for non-integer t, given sin(pi*t).
/// sin(pi*(k-t)) = -(-1)^k sin(pi*t).
inline double classical_coeff(double t, double sin_pi_t, std::int64_t k) noexcept {
  const double num = (k % 2 == 0) ? -sin_pi_t : sin_pi_t;
  return num / (std::numbers::pi * (static_cast<double>(k) - t));
}

}  // namespace detail

/// a_k(t) for the modified formula.
inline double coeff(const SamplingConfig& config, double t, std::int64_t k) {
  detail::require_finite_time(t);
  if (detail::is_integer(t)) return detail::kronecker(t, k);
  return detail::modified_coeff(config.n_even(), segment(config, t), k);
}

/// Same coefficient through the sinc form N * sinc(g*(k-m)) / (k-t), k != m.
/// Exists to cross-check coeff(); agrees with it to a few ulps.
inline double coeff_sinc_form(const SamplingConfig& config, double t, std::int64_t k) {
  detail::require_finite_time(t);
  if (detail::is_integer(t)) return detail::kronecker(t, k);
  const SegmentedTime st = segment(config, t);
  const std::int64_t d = k - st.m;
  if (st.tau == static_cast<double>(config.n_even())) return d == config.n_even() ? 1.0 : 0.0;
  if (d == 0) return 1.0 - g_of_t(config, st) / std::numbers::pi;
  const double g = g_of_t(config, st);
  const double dd = static_cast<double>(d);
  const double sinc = detail::sin_g_times(config.n_even(), st.tau, d) / (g * dd);
  return static_cast<double>(config.n_even()) * sinc / (dd - st.tau);
}

inline CoefficientRow coeff_row(const SamplingConfig& config, double t, std::int64_t k_lo, std::int64_t k_hi) {
  detail::require_finite_time(t);
  if (k_lo > k_hi) throw Error(ErrorCode::EmptyWindow, "k_lo must not exceed k_hi");
  CoefficientRow row{t, k_lo, k_hi, {}, CoefficientKind::Modified};
  row.values.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  if (detail::is_integer(t)) {
    for (std::int64_t k = k_lo; k <= k_hi; ++k) row.values.push_back(detail::kronecker(t, k));
    return row;
  }
  const SegmentedTime st = segment(config, t);
  for (std::int64_t k = k_lo; k <= k_hi; ++k) row.values.push_back(detail::modified_coeff(config.n_even(), st, k));
  return row;
}

/// sin(pi*(k-t)) / (pi*(k-t)), equal to 1 at k == t.
inline double classical_coeff(double t, std::int64_t k) {
  detail::require_finite_time(t);
  if (detail::is_integer(t)) return detail::kronecker(t, k);
  return detail::classical_coeff(t, detail::sin_pi(t), k);
}

inline CoefficientRow classical_row(double t, std::int64_t k_lo, std::int64_t k_hi) {
  detail::require_finite_time(t);
  if (k_lo > k_hi) throw Error(ErrorCode::EmptyWindow, "k_lo must not exceed k_hi");
  CoefficientRow row{t, k_lo, k_hi, {}, CoefficientKind::Classical};
  row.values.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  const bool integral = detail::is_integer(t);
  const double s = integral ? 0.0 : detail::sin_pi(t);
  for (std::int64_t k = k_lo; k <= k_hi; ++k)
    row.values.push_back(integral ? detail::kronecker(t, k) : detail::classical_coeff(t, s, k));
  return row;
}

/// (a_k(t+m), a_{k-m}(t)); the two agree for every integer shift m.
inline std::pair<double, double> shift_check(const SamplingConfig& config, double t, std::int64_t k, std::int64_t m) {
  detail::require_finite_time(t);
  return {coeff(config, t + static_cast<double>(m), k), coeff(config, t, k - m)};
}

}  // namespace nvsinc
