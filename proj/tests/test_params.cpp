#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nvsinc/params.hpp"
#include "test_util.hpp"

namespace {

using nvsinc::ErrorCode;
constexpr double kPi = std::numbers::pi;

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const nvsinc::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected nvsinc::Error";
  return ErrorCode::ParseError;
}

TEST(ValidateConfig, AcceptsStandardTriple) {
  const auto c = nvsinc::validate_config(5 * kPi / 12, 17 * kPi / 24, 4);
  EXPECT_EQ(c.n_even(), 4);
  EXPECT_DOUBLE_EQ(c.omega(), 5 * kPi / 12);
  EXPECT_GE(c.min_g(), c.omega1());
}

TEST(ValidateConfig, RejectsOddN) {
  EXPECT_EQ(error_of([] { nvsinc::validate_config(5 * kPi / 12, 17 * kPi / 24, 3); }), ErrorCode::OddN);
}

TEST(ValidateConfig, RejectsNBelowBandRatio) {
  // 17/7 > 2
  EXPECT_EQ(error_of([] { nvsinc::validate_config(5 * kPi / 12, 17 * kPi / 24, 2); }), ErrorCode::NTooSmall);
  // omega/(pi-omega) = 1 for omega = pi/2; N must exceed it strictly but 2 > 1 is fine,
  // while omega1 = 0.7pi needs N >= 7/3.
  EXPECT_EQ(error_of([] { nvsinc::validate_config(kPi / 2, 0.7 * kPi, 2); }), ErrorCode::NTooSmall);
  EXPECT_EQ(error_of([] { nvsinc::validate_config(kPi / 2, 0.6 * kPi, 0); }), ErrorCode::NTooSmall);
}

TEST(ValidateConfig, RejectsBandEdges) {
  EXPECT_EQ(error_of([] { nvsinc::validate_config(0.0, 1.0, 4); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::validate_config(1.0, 1.0, 4); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::validate_config(1.0, kPi, 4); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::validate_config(std::nan(""), 2.0, 4); }), ErrorCode::BandEdgeOutOfRange);
}

TEST(DefaultConfig, FollowsExperimentRecipe) {
  const auto c = nvsinc::default_config(5 * kPi / 12);
  EXPECT_DOUBLE_EQ(c.omega1(), 17 * kPi / 24);
  EXPECT_EQ(c.n_even(), 4);

  const auto h = nvsinc::default_config(kPi / 2);
  EXPECT_DOUBLE_EQ(h.omega1(), 3 * kPi / 4);
  EXPECT_EQ(h.n_even(), 4);

  // omega1/(pi-omega1) is just above 1, so the smallest even N above it is 2.
  EXPECT_EQ(nvsinc::default_config(1e-3).n_even(), 2);
}

TEST(DefaultConfig, RejectsBoundary) {
  EXPECT_EQ(error_of([] { nvsinc::default_config(0.0); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::default_config(kPi); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::default_config(std::nextafter(kPi, 0.0)); }), ErrorCode::NTooLarge);
}

TEST(ConfigFromFields, FillsOmittedFields) {
  const double omega = 5 * kPi / 12;
  EXPECT_EQ(nvsinc::config_from_fields(omega, std::nullopt, std::nullopt), nvsinc::default_config(omega));
  EXPECT_EQ(nvsinc::config_from_fields(omega, std::nullopt, 8), nvsinc::validate_config(omega, 17 * kPi / 24, 8));
  // Ratios 3 and 9: either rounding direction lands on the same even N.
  EXPECT_EQ(nvsinc::config_from_fields(omega, 3 * kPi / 4, std::nullopt).n_even(), 4);
  EXPECT_EQ(nvsinc::config_from_fields(omega, 0.9 * kPi, std::nullopt).n_even(), 10);
  EXPECT_EQ(error_of([&] { nvsinc::config_from_fields(omega, 1.0, std::nullopt); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([&] { nvsinc::config_from_fields(omega, std::nullopt, 3); }), ErrorCode::OddN);
}

TEST(DefaultConfig, AlwaysValidAndMinimal) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-3, kPi - 1e-3);
  for (int i = 0; i < 2000; ++i) {
    const double omega = u(rng);
    const auto c = nvsinc::default_config(omega);
    EXPECT_EQ(c.n_even() % 2, 0);
    // N - 2 must not satisfy the strict inequality against omega1.
    const long double ratio = nvsinc::detail::band_ratio(c.omega1());
    EXPECT_GT(static_cast<long double>(c.n_even()), ratio);
    EXPECT_LE(static_cast<long double>(c.n_even() - 2), ratio);
  }
}

TEST(Segment, Examples) {
  const auto c = nvsinc::default_config(5 * kPi / 12);
  auto s = nvsinc::segment(c, 4.5);
  EXPECT_EQ(s.m, 0);
  EXPECT_EQ(s.tau, 4.5);

  s = nvsinc::segment(c, 47830.4);
  EXPECT_EQ(s.m, 47826);
  EXPECT_GE(s.tau, 4.0);
  EXPECT_LT(s.tau, 5.0);
  EXPECT_EQ(s.tau, 47830.4 - 47826.0);

  s = nvsinc::segment(c, -0.25);
  EXPECT_EQ(s.m, -5);
  EXPECT_EQ(s.tau, 4.75);

  // Left endpoints belong to their own segment.
  s = nvsinc::segment(c, 7.0);
  EXPECT_EQ(s.m, 3);
  EXPECT_EQ(s.tau, 4.0);
}

TEST(Segment, NonFinite) {
  const auto c = nvsinc::default_config(1.0);
  EXPECT_EQ(error_of([&] { nvsinc::segment(c, INFINITY); }), ErrorCode::NonFiniteTime);
  EXPECT_EQ(error_of([&] { nvsinc::segment(c, std::nan("")); }), ErrorCode::NonFiniteTime);
}

TEST(Segment, TotalAndUniqueNearBoundaries) {
  const auto c = nvsinc::default_config(5 * kPi / 12);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 20000; ++i) {
    double t = u(rng);
    if (i % 4 == 1) t = std::nextafter(std::round(t), -INFINITY);
    if (i % 4 == 2) t = std::nextafter(std::round(t) / 1e6, -INFINITY);
    const auto s = nvsinc::segment(c, t);
    ASSERT_GE(s.tau, 4.0) << t;
    ASSERT_LT(s.tau, 5.0) << t;
    // tau is rounded when |t| is small, so t = tau + m holds to ulp(tau).
    ASSERT_NEAR(s.tau + static_cast<double>(s.m), t, 2 * nvsinc::testing::ulp(5.0));
  }
}

TEST(GOfT, Examples) {
  const auto c = nvsinc::default_config(5 * kPi / 12);
  EXPECT_EQ(nvsinc::g_of_t(c, 4.0), kPi);
  EXPECT_DOUBLE_EQ(nvsinc::g_of_t(c, 4.5), 8 * kPi / 9);
  // 50-digit reference: 2.855993321444322031
  EXPECT_NEAR(nvsinc::g_of_t(c, 47830.4), 2.855993321444322031, 1e-15);
}

TEST(GOfT, RangeProductAndPeriodicity) {
  for (double omega : {0.3, 1.0, 5 * kPi / 12, 2.5, 3.0}) {
    const auto c = nvsinc::default_config(omega);
    const double n = static_cast<double>(c.n_even());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int i = 0; i < 5000; ++i) {
      const double t = u(rng);
      const auto s = nvsinc::segment(c, t);
      const double g = nvsinc::g_of_t(c, s);
      ASSERT_GE(g, c.omega1());
      ASSERT_LE(g, kPi);
      const double product = g * s.tau;
      ASSERT_LE(std::abs(product - kPi * n), 4 * nvsinc::testing::ulp(kPi * n));
    }
    // Dyadic t: t + j is exact, so g repeats exactly.
    for (int i = 0; i < 64; ++i) {
      const double t = -3.0 + i / 16.0;
      for (int j = -40; j <= 40; j += 7) ASSERT_EQ(nvsinc::g_of_t(c, t + j), nvsinc::g_of_t(c, t));
    }
  }
}

TEST(ParseFrequency, Forms) {
  EXPECT_EQ(nvsinc::parse_frequency("5pi/12"), 5 * kPi / 12);
  EXPECT_EQ(nvsinc::parse_frequency("5*pi/12"), 5 * kPi / 12);
  EXPECT_EQ(nvsinc::parse_frequency("pi"), kPi);
  EXPECT_EQ(nvsinc::parse_frequency("pi/2"), kPi / 2);
  EXPECT_EQ(nvsinc::parse_frequency(" 1.25 "), 1.25);
  EXPECT_EQ(nvsinc::parse_frequency("-3e-2"), -3e-2);
  EXPECT_EQ(error_of([] { nvsinc::parse_frequency("abc"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { nvsinc::parse_frequency("pi*2"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { nvsinc::parse_frequency(""); }), ErrorCode::ParseError);
}

}  // namespace
