#pragma once

// Test signals with exact evaluation at arbitrary real times.
//
// Phases such as omega*t are formed as exact products (two_prod) and reduced in
// double-double arithmetic, so samples far from the origin (|k| ~ 1e5 and
// beyond) keep full double accuracy.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nvsinc/detail/double_double.hpp"
#include "nvsinc/error.hpp"
#include "nvsinc/params.hpp"
#include "nvsinc/summation.hpp"

namespace nvsinc {

/// Sum_j amps[j] * exp(i*(freqs[j]*t + phases[j])).
struct TrigPoly {
  std::vector<double> freqs;
  std::vector<std::complex<double>> amps;
  std::vector<double> phases;
  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;
};

/// A*[sinc(M pi t) + sinc(M pi (t-1)/2)]      (variant 1)
/// A*[sinc(M pi t) + sinc(M pi (t-1))/2]      (variant 2)
struct KptSinc {
  double M = 256.0;
  double A = 0.0;
  int variant = 1;
  friend bool operator==(const KptSinc&, const KptSinc&) = default;
};

/// cos(omega*t - shift)      (variant 1)
/// cos(omega*(t - shift))    (variant 2)
struct Cosine {
  double omega = 0.0;
  double shift = 0.0;
  int variant = 1;
  friend bool operator==(const Cosine&, const Cosine&) = default;
};

using SignalDescriptor = std::variant<TrigPoly, KptSinc, Cosine>;

class Signal {
 public:
  static Signal trig_poly(TrigPoly poly, double band_limit) {
    if (poly.freqs.size() != poly.amps.size() || poly.freqs.size() != poly.phases.size())
      throw Error(ErrorCode::InvalidSignalSpec, "trig poly component lists differ in length");
    for (double f : poly.freqs)
      if (!(std::abs(f) <= band_limit))
        throw Error(ErrorCode::BandEdgeOutOfRange, "trig poly frequency exceeds band limit");
    return Signal(std::move(poly), band_limit);
  }

  static Signal kpt_sinc(double M, double A, int variant = 1) {
    if (!(M > 0.0) || !(A > 0.0) || !std::isfinite(M) || !std::isfinite(A))
      throw Error(ErrorCode::InvalidSignalSpec, "M and A must be positive");
    if (variant != 1 && variant != 2) throw Error(ErrorCode::InvalidSignalSpec, "kpt variant must be 1 or 2");
    return Signal(KptSinc{M, A, variant}, M * std::numbers::pi);
  }

  static Signal cosine(double omega, double shift, int variant = 1) {
    if (!std::isfinite(omega) || !std::isfinite(shift))
      throw Error(ErrorCode::InvalidSignalSpec, "cosine parameters must be finite");
    if (variant != 1 && variant != 2) throw Error(ErrorCode::InvalidSignalSpec, "cosine variant must be 1 or 2");
    return Signal(Cosine{omega, shift, variant}, std::abs(omega));
  }

  const SignalDescriptor& descriptor() const noexcept { return descriptor_; }
  double band_limit() const noexcept { return band_limit_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  Signal(SignalDescriptor d, double band) : descriptor_(std::move(d)), band_limit_(band) {}

  SignalDescriptor descriptor_;
  double band_limit_;
};

namespace detail {

/// sin(pi q)/(pi q), 1 at q == 0.
inline double sinc_pi(DoubleDouble q) noexcept {
  if (q.hi == 0.0 && q.lo == 0.0) return 1.0;
  return sincos_pi(q).sin / (std::numbers::pi * q.hi);
}

inline std::complex<double> eval_component(const TrigPoly& p, double t) {
  CompensatedSum<std::complex<double>> sum;
  for (std::size_t j = 0; j < p.freqs.size(); ++j) {
    const SinCos sc = sincos(two_prod(p.freqs[j], t) + p.phases[j]);
    sum.add(p.amps[j] * std::complex<double>(sc.cos, sc.sin));
  }
  return sum.result();
}

inline std::complex<double> eval_component(const KptSinc& s, double t) {
  const DoubleDouble mt = two_prod(s.M, t);  // M*t in half-turns
  const DoubleDouble shifted = mt - s.M;     // M*(t-1)
  const double first = sinc_pi(mt);
  const double second = s.variant == 1 ? sinc_pi(shifted * 0.5) : 0.5 * sinc_pi(shifted);
  return s.A * (first + second);
}

inline std::complex<double> eval_component(const Cosine& c, double t) {
  const DoubleDouble angle = c.variant == 1 ? two_prod(c.omega, t) - c.shift
                                            : two_prod(c.omega, t) - two_prod(c.omega, c.shift);
  return sincos(angle).cos;
}

}  // namespace detail

inline std::complex<double> eval(const Signal& signal, double t) {
  detail::require_finite_time(t);
  return std::visit([t](const auto& d) { return detail::eval_component(d, t); }, signal.descriptor());
}

/// Samples x(k) on the contiguous integer range [k_lo, k_hi].
template <class Value>
struct BasicSampleGrid {
  std::int64_t k_lo = 0;
  std::int64_t k_hi = -1;
  std::vector<Value> values;

  std::size_t size() const noexcept { return values.size(); }
  bool contains(std::int64_t k) const noexcept { return k >= k_lo && k <= k_hi; }
  const Value& operator[](std::int64_t k) const { return values[static_cast<std::size_t>(k - k_lo)]; }
};

using SampleGrid = BasicSampleGrid<std::complex<double>>;
using RealSampleGrid = BasicSampleGrid<double>;

/// Hard cap on materialised grids.
inline constexpr std::int64_t kMaxGridPoints = 10'000'000;

inline SampleGrid sample(const Signal& signal, std::int64_t k_lo, std::int64_t k_hi) {
  if (k_lo > k_hi) throw Error(ErrorCode::EmptyWindow, "k_lo must not exceed k_hi");
  if (k_hi - k_lo + 1 > kMaxGridPoints)
    throw Error(ErrorCode::WindowExceedsGrid,
                "grid of " + std::to_string(k_hi - k_lo + 1) + " points exceeds the 1e7 limit; use a smaller L");
  SampleGrid grid{k_lo, k_hi, {}};
  grid.values.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (std::int64_t k = k_lo; k <= k_hi; ++k) grid.values.push_back(eval(signal, static_cast<double>(k)));
  return grid;
}

/// Seeded trig poly: frequencies uniform in [-band, band], amplitudes uniform
/// in [0.5, 1], phases uniform in [0, 2 pi).  Identical seeds give identical
/// signals on every platform (the uniform mapping does not go through
/// std::uniform_real_distribution).
inline Signal random_trig_poly(double band, std::int64_t count, std::uint64_t seed) {
  if (!(band > 0.0 && band < std::numbers::pi))
    throw Error(ErrorCode::BandEdgeOutOfRange, "band must lie in (0, pi)");
  if (count < 1) throw Error(ErrorCode::InvalidSignalSpec, "count must be positive");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  TrigPoly p;
  for (std::int64_t j = 0; j < count; ++j) {
    p.freqs.push_back(band * (2.0 * unit() - 1.0));
    p.amps.emplace_back(0.5 + 0.5 * unit(), 0.0);
    p.phases.push_back(2.0 * std::numbers::pi * unit());
  }
  return Signal::trig_poly(std::move(p), band);
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> split_kv(std::string_view body) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw Error(ErrorCode::InvalidSignalSpec, "expected key=value, got '" + std::string(item) + "'");
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

inline double parse_real(const std::string& key, const std::string& value) {
  try {
    return parse_frequency(value);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidSignalSpec, "bad value for '" + key + "': '" + value + "'");
  }
}

inline std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty())
    throw Error(ErrorCode::InvalidSignalSpec, "bad integer for '" + key + "': '" + value + "'");
  return v;
}

}  // namespace detail

/// Parses a CLI signal specifier:
///   cosine:omega=<r>,shift=<r>[,variant=1|2]
///   kpt:M=<r>[,A=<r>][,variant=1|2]        (A defaults to sqrt(4M/5))
///   trig:band=<r>,count=<n>,seed=<n>
/// Reals accept multiples of pi ("5pi/12").  The cosine shift may be given as
/// "L/2", bound to `truncation_length`.
inline Signal parse_signal(std::string_view spec, std::optional<std::int64_t> truncation_length = std::nullopt) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  const auto kv = detail::split_kv(colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1));

  auto find = [&](std::string_view key) -> const std::string* {
    for (const auto& [k, v] : kv)
      if (k == key) return &v;
    return nullptr;
  };
  auto require = [&](std::string_view key) -> const std::string& {
    if (const auto* v = find(key)) return *v;
    throw Error(ErrorCode::InvalidSignalSpec, "signal '" + kind + "' needs '" + std::string(key) + "'");
  };
  auto check_keys = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (auto a : allowed) ok = ok || k == a;
      if (!ok) throw Error(ErrorCode::InvalidSignalSpec, "unknown key '" + k + "' for signal '" + kind + "'");
    }
  };

  if (kind == "cosine") {
    check_keys({"omega", "shift", "variant"});
    const double omega = detail::parse_real("omega", require("omega"));
    double shift = 0.0;
    if (const auto* s = find("shift")) {
      if (*s == "L/2") {
        if (!truncation_length)
          throw Error(ErrorCode::InvalidSignalSpec, "shift=L/2 needs a truncation length L");
        shift = 0.5 * static_cast<double>(*truncation_length);
      } else {
        shift = detail::parse_real("shift", *s);
      }
    }
    const int variant = find("variant") ? static_cast<int>(detail::parse_int("variant", *find("variant"))) : 1;
    return Signal::cosine(omega, shift, variant);
  }
  if (kind == "kpt") {
    check_keys({"M", "A", "variant"});
    const double M = detail::parse_real("M", require("M"));
    const double A = find("A") ? detail::parse_real("A", *find("A")) : std::sqrt(M * 4.0 / 5.0);
    const int variant = find("variant") ? static_cast<int>(detail::parse_int("variant", *find("variant"))) : 1;
    return Signal::kpt_sinc(M, A, variant);
  }
  if (kind == "trig") {
    check_keys({"band", "count", "seed"});
    const double band = detail::parse_real("band", require("band"));
    const auto count = detail::parse_int("count", require("count"));
    const auto seed = detail::parse_int("seed", require("seed"));
    return random_trig_poly(band, count, static_cast<std::uint64_t>(seed));
  }
  throw Error(ErrorCode::InvalidSignalSpec, "unknown signal kind '" + kind + "'");
}

}  // namespace nvsinc
