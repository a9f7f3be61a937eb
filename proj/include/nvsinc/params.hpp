#pragma once

// Interpolation parameters: the signal band edge, the oversampled band edge and
// the even integer N, plus the 1-periodic sawtooth frequency g(t) they induce.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "nvsinc/error.hpp"

namespace nvsinc {

/// Largest accepted N.  Beyond this the reduced time tau in [N, N+1) keeps too
/// few fractional bits for g(t) to be meaningful.
inline constexpr std::int64_t kMaxN = std::int64_t{1} << 20;

/// Validated triple (omega, omega1, N).  Only constructible through
/// validate_config() / default_config(), so every instance satisfies
///   0 < omega < omega1 < pi,  N even,  N > omega/(pi-omega),  N >= omega1/(pi-omega1).
class SamplingConfig {
 public:
  double omega() const noexcept { return omega_; }
  double omega1() const noexcept { return omega1_; }
  std::int64_t n_even() const noexcept { return n_; }

  /// pi*N/(N+1): the infimum of g(t), never below omega1.
  double min_g() const noexcept {
    const double n = static_cast<double>(n_);
    return std::numbers::pi * n / (n + 1.0);
  }

  friend bool operator==(const SamplingConfig&, const SamplingConfig&) = default;

 private:
  SamplingConfig(double omega, double omega1, std::int64_t n) : omega_(omega), omega1_(omega1), n_(n) {}

  friend SamplingConfig validate_config(double omega, double omega1, std::int64_t n);

  double omega_;
  double omega1_;
  std::int64_t n_;
};

/// t split as m + tau with tau in [N, N+1).
struct SegmentedTime {
  double t;
  std::int64_t m;
  double tau;
};

namespace detail {

inline constexpr long double kPiLong = 3.141592653589793238462643383279502884L;

/// x/(pi-x) in extended precision.
inline long double band_ratio(double x) { return static_cast<long double>(x) / (kPiLong - x); }

}  // namespace detail

inline SamplingConfig validate_config(double omega, double omega1, std::int64_t n) {
  constexpr double pi = std::numbers::pi;
  if (!(omega > 0.0 && omega < pi))
    throw Error(ErrorCode::BandEdgeOutOfRange, "omega must lie in (0, pi), got " + std::to_string(omega));
  if (!(omega1 > omega && omega1 < pi))
    throw Error(ErrorCode::BandEdgeOutOfRange, "omega1 must lie in (omega, pi), got " + std::to_string(omega1));
  if (n % 2 != 0) throw Error(ErrorCode::OddN, "N must be even, got " + std::to_string(n));
  if (n < 2) throw Error(ErrorCode::NTooSmall, "N must be at least 2, got " + std::to_string(n));
  if (n > kMaxN) throw Error(ErrorCode::NTooLarge, "N exceeds " + std::to_string(kMaxN));

  const auto nl = static_cast<long double>(n);
  if (!(nl > detail::band_ratio(omega)))
    throw Error(ErrorCode::NTooSmall, "N must exceed omega/(pi-omega)");
  if (!(nl >= detail::band_ratio(omega1)))
    throw Error(ErrorCode::NTooSmall, "N must be at least omega1/(pi-omega1)");
  return SamplingConfig(omega, omega1, n);
}

/// Fills omitted fields the way default_config() does: omega1 = (omega+pi)/2,
/// N the smallest even integer strictly above omega1/(pi-omega1).
inline SamplingConfig config_from_fields(double omega, std::optional<double> omega1, std::optional<std::int64_t> n) {
  constexpr double pi = std::numbers::pi;
  if (!(omega > 0.0 && omega < pi))
    throw Error(ErrorCode::BandEdgeOutOfRange, "omega must lie in (0, pi), got " + std::to_string(omega));
  const double w1 = omega1.value_or(0.5 * (omega + pi));
  if (n) return validate_config(omega, w1, *n);
  if (omega1 && !(w1 > omega && w1 < pi))
    throw Error(ErrorCode::BandEdgeOutOfRange, "omega1 must lie in (omega, pi), got " + std::to_string(w1));
  const long double ratio = detail::band_ratio(w1);
  if (ratio >= static_cast<long double>(kMaxN))
    throw Error(ErrorCode::NTooLarge, "omega1 too close to pi for a representable N");
  auto smallest = static_cast<std::int64_t>(std::floor(ratio)) + 1;
  if (smallest % 2 != 0) ++smallest;
  return validate_config(omega, w1, smallest);
}

inline SamplingConfig default_config(double omega) { return config_from_fields(omega, std::nullopt, std::nullopt); }

/// Unique m with N <= t - m < N + 1.
inline SegmentedTime segment(const SamplingConfig& config, double t) {
  detail::require_finite_time(t);
  const auto n = static_cast<double>(config.n_even());
  const double fl = std::floor(t);
  auto m = static_cast<std::int64_t>(fl - n);
  double tau = t - static_cast<double>(m);
  // For small |t| the subtraction can round up onto the excluded endpoint N+1;
  // t is then within an ulp of the next segment, so move there.
  if (tau >= n + 1.0) {
    ++m;
    tau = t - static_cast<double>(m);
  }
  return {t, m, tau};
}

/// pi*N/tau, in [pi*N/(N+1), pi] and 1-periodic in t.
inline double g_of_t(const SamplingConfig& config, const SegmentedTime& st) noexcept {
  return std::numbers::pi * static_cast<double>(config.n_even()) / st.tau;
}

inline double g_of_t(const SamplingConfig& config, double t) { return g_of_t(config, segment(config, t)); }

/// Parses a radian frequency: a plain number, or a multiple of pi written as
/// "pi", "5pi/12", "5*pi/12", "pi/2", "0.75pi".
inline double parse_frequency(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::ParseError, "cannot parse frequency '" + std::string(text) + "'"); };
  auto parse_number = [&](std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw fail();
    return v;
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw fail();

  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) return parse_number(text);

  std::string_view coef = text.substr(0, pi_pos);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  double value = (coef.empty() ? 1.0 : parse_number(coef)) * std::numbers::pi;

  std::string_view rest = text.substr(pi_pos + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') throw fail();
    value /= parse_number(rest.substr(1));
  }
  return value;
}

}  // namespace nvsinc
