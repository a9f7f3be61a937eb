#pragma once

// Unevaluated sums hi + lo of two doubles, and sin/cos of angles carried in
// that format.  The error-free transformations below rely on IEEE round-to-
// nearest and on the compiler not contracting a*b+c into an fma on its own
// (the CMake target sets -ffp-contract=off).

#include <cmath>
#include <cstdint>

namespace nvsinc::detail {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr double value() const noexcept { return hi + lo; }
};

// |a| >= |b| or a == 0.
inline DoubleDouble fast_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return fast_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator+(DoubleDouble a, double b) noexcept {
  DoubleDouble s = two_sum(a.hi, b);
  s.lo += a.lo;
  return fast_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }
inline DoubleDouble operator-(DoubleDouble a, double b) noexcept { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, double b) noexcept {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return fast_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return fast_two_sum(p.hi, p.lo);
}

/// num / den to roughly 106 bits.
inline DoubleDouble divide(double num, double den) noexcept {
  const double q = num / den;
  const double r = std::fma(-q, den, num);
  return fast_two_sum(q, r / den);
}

inline constexpr DoubleDouble kPi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DoubleDouble kInvPi{3.183098861837906912e-01, -1.967867667518248588e-17};

/// Radians to half-turns: x / pi.
inline DoubleDouble to_half_turns(DoubleDouble radians) noexcept { return radians * kInvPi; }

struct SinCos {
  double sin;
  double cos;
};

/// sin(pi*q) and cos(pi*q).
///
/// The integer part of q is removed exactly, so integers map to exact zeros
/// and the result stays accurate to a few ulps for any |q.hi| < 2^52.
inline SinCos sincos_pi(DoubleDouble q) noexcept {
  // q.hi - 2*round(q.hi/2) is exact: the difference is a multiple of ulp(q.hi)
  // no larger than 1 in magnitude.
  const double r = q.hi - 2.0 * std::nearbyint(0.5 * q.hi);
  const DoubleDouble s = two_sum(r, q.lo);

  const double quarter = std::nearbyint(2.0 * s.hi);
  const double y = s.hi - 0.5 * quarter;  // exact, |y| <= 1/4 (+ rounding slop)

  DoubleDouble angle = two_prod(kPi.hi, y);
  angle.lo += kPi.lo * y + kPi.hi * s.lo;
  angle = fast_two_sum(angle.hi, angle.lo);

  const double sh = std::sin(angle.hi);
  const double ch = std::cos(angle.hi);
  const double sn = sh + ch * angle.lo;
  const double cs = ch - sh * angle.lo;

  switch ((static_cast<std::int64_t>(quarter) % 4 + 4) % 4) {
    case 0: return {sn, cs};
    case 1: return {cs, -sn};
    case 2: return {-sn, -cs};
    default: return {-cs, sn};
  }
}

inline double sin_pi(double x) noexcept { return sincos_pi({x, 0.0}).sin; }
inline double cos_pi(double x) noexcept { return sincos_pi({x, 0.0}).cos; }

/// sin and cos of an angle given in radians as a double-double.
inline SinCos sincos(DoubleDouble radians) noexcept { return sincos_pi(to_half_turns(radians)); }

}  // namespace nvsinc::detail
