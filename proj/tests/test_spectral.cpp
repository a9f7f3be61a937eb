#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nvsinc/kernel.hpp"
#include "nvsinc/spectral.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

const nvsinc::SamplingConfig& standard_config() {
  static const auto c = nvsinc::default_config(5 * kPi / 12);
  return c;
}

nvsinc::ErrorCode error_of(auto&& f) {
  try {
    f();
  } catch (const nvsinc::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected nvsinc::Error";
  return nvsinc::ErrorCode::ParseError;
}

TEST(EValue, Examples) {
  const auto a = nvsinc::e_value(standard_config(), 4.0, 0.3);
  EXPECT_NEAR(std::abs(a - std::polar(1.0, 1.2)), 0.0, 1e-15);
  EXPECT_EQ(nvsinc::e_value(standard_config(), 4.5, 0.0), std::complex<double>(1.0, 0.0));
  // 3.0 > g(4.5) = 8pi/9 and m = 0
  EXPECT_EQ(nvsinc::e_value(standard_config(), 4.5, 3.0), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(error_of([] { nvsinc::e_value(standard_config(), 4.5, 3.2); }), nvsinc::ErrorCode::OmegaOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::e_value(standard_config(), NAN, 1.0); }), nvsinc::ErrorCode::NonFiniteTime);
}

TEST(EValue, Invariants) {
  const double omega1 = standard_config().omega1();
  for (int i = 0; i < 200; ++i) {
    const double t = -20.0 + i * 0.1875;  // dyadic steps keep t + 1 exact
    for (int j = -40; j <= 40; ++j) {
      const double w = kPi * j / 40.0;
      const auto e = nvsinc::e_value(standard_config(), t, w);
      EXPECT_NEAR(std::abs(e - std::conj(nvsinc::e_value(standard_config(), t, -w))), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(nvsinc::e_value(standard_config(), t + 1.0, w) - std::polar(1.0, w) * e), 0.0, 1e-13);
      if (std::abs(w) <= omega1) {
        EXPECT_NEAR(std::abs(e - std::polar(1.0, w * t)), 0.0, 1e-15);
      }
    }
  }
}

TEST(Quadrature, Examples) {
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), 5.0, 5), 1.0, 1e-10);
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), 4.5, 0), 1.0 / 9.0, 1e-10);
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), 4.5, 1), nvsinc::coeff(standard_config(), 4.5, 1), 1e-10);
}

TEST(Quadrature, MatchesFrozenIntegralValues) {
  // 50-digit references from tests/oracles/freeze_values.py.
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), 4.5, 1), -0.13997364800728806914, 1e-10);
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), 4.5, -2), 0.070825032996809952163, 1e-10);
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), 17.3, -50), -0.00030553147169427161342, 1e-10);
  EXPECT_NEAR(nvsinc::coeff_by_quadrature(standard_config(), -2.75, 3), -0.022629114726603704595, 1e-10);
}

TEST(Quadrature, AgreesWithClosedFormAndIsReal) {
  for (double t : {4.1, 4.5, 4.9, 17.3, -2.75}) {
    for (std::int64_t k = -50; k <= 50; k += 5) {
      const auto r = nvsinc::coeff_quadrature_detail(standard_config(), t, k);
      EXPECT_LE(std::abs(r.value - nvsinc::coeff(standard_config(), t, k)), 1e-9) << t << " " << k;
      EXPECT_LE(std::abs(r.imag), 1e-10) << t << " " << k;
    }
  }
}

TEST(Quadrature, OtherConfigurations) {
  for (double omega : {0.5, 2.0, 2.8}) {
    const auto c = nvsinc::default_config(omega);
    for (double t : {0.3, 7.77, -11.6})
      for (std::int64_t k = -10; k <= 10; k += 3)
        EXPECT_LE(std::abs(nvsinc::coeff_by_quadrature(c, t, k) - nvsinc::coeff(c, t, k)), 1e-9)
            << omega << " " << t << " " << k;
  }
}

TEST(Quadrature, Errors) {
  EXPECT_EQ(error_of([] { nvsinc::coeff_by_quadrature(standard_config(), 4.5, 0, 32); }),
            nvsinc::ErrorCode::QuadratureNotConverged);
  // Far too oscillatory for the panel budget.
  EXPECT_EQ(error_of([] { nvsinc::coeff_by_quadrature(standard_config(), 4.5, 10'000'000); }),
            nvsinc::ErrorCode::QuadratureNotConverged);
}

TEST(ExpReconstruction, Examples) {
  EXPECT_LE(nvsinc::exp_reconstruction_error(standard_config(), 5.0, 0.7, 4), 1e-12);
  EXPECT_LE(nvsinc::exp_reconstruction_error(standard_config(), 5.0, 0.7, 50), 1e-12);
  EXPECT_LE(nvsinc::exp_reconstruction_error(standard_config(), 4.5, 0.0, 10000), 1e-3);
  EXPECT_LE(nvsinc::exp_reconstruction_error(standard_config(), 4.5, standard_config().omega1(), 10000), 1e-3);
  EXPECT_EQ(error_of([] { nvsinc::exp_reconstruction_error(standard_config(), 4.5, 3.5, 10); }),
            nvsinc::ErrorCode::OmegaOutOfRange);
  EXPECT_EQ(error_of([] { nvsinc::exp_reconstruction_error(standard_config(), 4.5, 0.5, 0); }),
            nvsinc::ErrorCode::EmptyWindow);
}

TEST(ExpReconstruction, ConvergesInBandOnly) {
  const double omega1 = standard_config().omega1();
  for (double t : {4.25, 4.5, 4.75}) {
    for (double w : {-omega1, -1.0, 0.3, omega1}) {
      const double e3 = nvsinc::exp_reconstruction_error(standard_config(), t, w, 1000);
      const double e4 = nvsinc::exp_reconstruction_error(standard_config(), t, w, 10000);
      EXPECT_LE(e4, e3 * 0.5 + 1e-13) << t << " " << w;
      EXPECT_LE(e4, 1e-3);
    }
  }
  const double out3 = nvsinc::exp_reconstruction_error(standard_config(), 4.5, kPi - 0.01, 1000);
  const double out4 = nvsinc::exp_reconstruction_error(standard_config(), 4.5, kPi - 0.01, 10000);
  EXPECT_GE(out4, 1e-2);
  EXPECT_NEAR(out3, out4, 0.1 * out4);
}

TEST(ExpReconstruction, ThreadCountDoesNotChangeBits) {
  const double a = nvsinc::exp_reconstruction_error(standard_config(), 4.5, 1.1, 30000, 1);
  const double b = nvsinc::exp_reconstruction_error(standard_config(), 4.5, 1.1, 30000, 7);
  EXPECT_EQ(a, b);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto& rule = nvsinc::GaussLegendreRule<20>::instance();
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-14);
  // degree 39 is the limit of a 20-point rule
  const double i38 = nvsinc::composite_gauss_legendre<double>([](double x) { return std::pow(x, 38); }, -1.0, 1.0, 1);
  EXPECT_NEAR(i38, 2.0 / 39.0, 1e-14);
  const double s = nvsinc::composite_gauss_legendre<double>([](double x) { return std::sin(x); }, 0.0, kPi, 8);
  EXPECT_NEAR(s, 2.0, 1e-14);
}

}  // namespace
