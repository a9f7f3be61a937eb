#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <variant>

#include "nvsinc/signals.hpp"
#include "test_util.hpp"

namespace {

constexpr double kPi = std::numbers::pi;
using nvsinc::ErrorCode;

ErrorCode error_of(auto&& f) {
  try {
    f();
  } catch (const nvsinc::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected nvsinc::Error";
  return ErrorCode::ParseError;
}

TEST(Eval, Examples) {
  EXPECT_EQ(nvsinc::eval(nvsinc::Signal::cosine(5 * kPi / 12, 0.0), 0.0), std::complex<double>(1.0));

  const double A = std::sqrt(256.0 * 4.0 / 5.0);
  EXPECT_EQ(nvsinc::eval(nvsinc::Signal::kpt_sinc(256.0, A), 0.0), std::complex<double>(A));

  nvsinc::TrigPoly p{{0.3}, {2.0}, {0.0}};
  const auto single = nvsinc::Signal::trig_poly(p, 0.3);
  EXPECT_NEAR(std::abs(nvsinc::eval(single, 10.0) - 2.0 * std::polar(1.0, 3.0)), 0.0, 1e-15);
  EXPECT_EQ(error_of([&] { nvsinc::eval(single, INFINITY); }), ErrorCode::NonFiniteTime);
}

TEST(Eval, FrozenReferenceValues) {
  // 50-digit references (tests/oracles/freeze_values.py).
  const auto cosine = nvsinc::Signal::cosine(5 * kPi / 12, 50000.0);
  EXPECT_LE(nvsinc::testing::ulp_distance(nvsinc::eval(cosine, 99991.0).real(), -0.24150957975183549584), 4);
  EXPECT_LE(nvsinc::testing::ulp_distance(nvsinc::eval(cosine, 100000.0).real(), -0.85694837549193155839), 4);
  EXPECT_LE(nvsinc::testing::ulp_distance(nvsinc::eval(cosine, 47830.4).real(), 0.87482563146112812238), 4);

  const double A = std::sqrt(256.0 * 4.0 / 5.0);
  const auto v1 = nvsinc::eval(nvsinc::Signal::kpt_sinc(256.0, A, 1), 47830.4).real();
  const auto v2 = nvsinc::eval(nvsinc::Signal::kpt_sinc(256.0, A, 2), 47830.4).real();
  EXPECT_NEAR(v1, -8.3533768139372543247e-8, 1e-12 * 8.4e-8);
  EXPECT_NEAR(v2, 5.3072767753947335493e-7, 1e-12 * 5.4e-7);
}

TEST(Eval, CosineVariantsAndBound) {
  const auto literal = nvsinc::Signal::cosine(1.1, 3.0, 1);
  const auto scaled = nvsinc::Signal::cosine(1.1, 3.0, 2);
  for (double t = -50.0; t <= 50.0; t += 0.37) {
    EXPECT_NEAR(nvsinc::eval(literal, t).real(), std::cos(1.1 * t - 3.0), 1e-13);
    EXPECT_NEAR(nvsinc::eval(scaled, t).real(), std::cos(1.1 * (t - 3.0)), 1e-13);
    EXPECT_LE(std::abs(nvsinc::eval(literal, t)), 1.0);
    EXPECT_EQ(nvsinc::eval(literal, t).imag(), 0.0);
  }
}

TEST(Sample, Examples) {
  const double omega = 5 * kPi / 12;
  const auto grid = nvsinc::sample(nvsinc::Signal::cosine(omega, 0.0), 0, 2);
  ASSERT_EQ(grid.size(), 3u);
  EXPECT_EQ(grid[0].real(), 1.0);
  EXPECT_NEAR(grid[1].real(), std::cos(omega), 1e-16);
  EXPECT_NEAR(grid[2].real(), std::cos(2 * omega), 1e-16);

  const auto sig = nvsinc::random_trig_poly(1.0, 3, 4);
  const auto one = nvsinc::sample(sig, 0, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], nvsinc::eval(sig, 0.0));

  // sin(256 pi k) vanishes exactly, so only the shifted term survives at k = 1.
  const double A = std::sqrt(256.0 * 4.0 / 5.0);
  const auto kpt = nvsinc::sample(nvsinc::Signal::kpt_sinc(256.0, A), 1, 3);
  EXPECT_EQ(kpt[1], std::complex<double>(A));
  EXPECT_EQ(kpt[2], std::complex<double>(0.0));
  EXPECT_EQ(kpt[3], std::complex<double>(0.0));
}

TEST(Sample, Errors) {
  const auto c = nvsinc::Signal::cosine(1.0, 0.0);
  EXPECT_EQ(error_of([&] { nvsinc::sample(c, 2, 1); }), ErrorCode::EmptyWindow);
  EXPECT_EQ(error_of([&] { nvsinc::sample(c, 0, nvsinc::kMaxGridPoints); }), ErrorCode::WindowExceedsGrid);
}

TEST(RandomTrigPoly, DeterministicAndBandLimited) {
  const double band = 5 * kPi / 12;
  EXPECT_EQ(nvsinc::random_trig_poly(band, 1, 42), nvsinc::random_trig_poly(band, 1, 42));
  EXPECT_NE(nvsinc::random_trig_poly(band, 1, 42), nvsinc::random_trig_poly(band, 1, 43));
  const auto s = nvsinc::random_trig_poly(band, 10, 42);
  const auto& p = std::get<nvsinc::TrigPoly>(s.descriptor());
  ASSERT_EQ(p.freqs.size(), 10u);
  for (double f : p.freqs) EXPECT_LE(std::abs(f), band);
  EXPECT_EQ(s.band_limit(), band);
  EXPECT_EQ(error_of([] { nvsinc::random_trig_poly(kPi, 5, 1); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::random_trig_poly(1.0, 0, 1); }), ErrorCode::InvalidSignalSpec);
}

TEST(SignalFactories, Validate) {
  EXPECT_EQ(error_of([] { nvsinc::Signal::trig_poly({{2.0}, {1.0}, {0.0}}, 1.0); }), ErrorCode::BandEdgeOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::Signal::trig_poly({{0.5, 0.2}, {1.0}, {0.0}}, 1.0); }),
            ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::Signal::kpt_sinc(-1.0, 1.0); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::Signal::kpt_sinc(256.0, 1.0, 3); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::Signal::cosine(1.0, 0.0, 0); }), ErrorCode::InvalidSignalSpec);
}

TEST(ParseSignal, Specifiers) {
  auto c = nvsinc::parse_signal("cosine:omega=5pi/12,shift=3.5");
  EXPECT_EQ(c, nvsinc::Signal::cosine(5 * kPi / 12, 3.5));
  c = nvsinc::parse_signal("cosine:omega=1,shift=L/2,variant=2", 1000);
  EXPECT_EQ(c, nvsinc::Signal::cosine(1.0, 500.0, 2));

  const auto k = nvsinc::parse_signal("kpt:M=256,variant=2");
  EXPECT_EQ(k, nvsinc::Signal::kpt_sinc(256.0, std::sqrt(256.0 * 4.0 / 5.0), 2));
  EXPECT_EQ(nvsinc::parse_signal("kpt:M=4,A=2"), nvsinc::Signal::kpt_sinc(4.0, 2.0, 1));

  EXPECT_EQ(nvsinc::parse_signal("trig:band=1.2,count=10,seed=7"), nvsinc::random_trig_poly(1.2, 10, 7));

  EXPECT_EQ(error_of([] { nvsinc::parse_signal("cosine:omega=1,shift=L/2"); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::parse_signal("square:omega=1"); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::parse_signal("cosine:omega=x"); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::parse_signal("cosine:shift=1"); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::parse_signal("cosine:omega=1,phase=2"); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::parse_signal("trig:band=1,count=ten,seed=1"); }), ErrorCode::InvalidSignalSpec);
  EXPECT_EQ(error_of([] { nvsinc::parse_signal("kpt:M"); }), ErrorCode::InvalidSignalSpec);
}

}  // namespace
