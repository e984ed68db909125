#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qrabi/log_scaled.hpp"

using qrabi::LogScaledValue;

TEST(LogScaledValue, ZeroIsNegativeInfinity) {
  const auto z = LogScaledValue::from_complex({0.0, 0.0});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.to_complex(), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(z.abs2(), 0.0);
  EXPECT_TRUE((z * LogScaledValue::from_real(3.0)).is_zero());
}

TEST(LogScaledValue, DefaultIsOne) {
  const LogScaledValue one{};
  EXPECT_EQ(one.to_complex(), std::complex<double>(1.0, 0.0));
}

TEST(LogScaledValue, RoundTripProperty) {
  std::mt19937_64 rng(20191005);
  std::uniform_real_distribution<double> log_mag(-699.0, 699.0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 2000; ++i) {
    const LogScaledValue v{log_mag(rng), phase(rng)};
    const auto back = LogScaledValue::from_complex(v.to_complex());
    EXPECT_NEAR(back.log_mag, v.log_mag, 1e-12 * std::max(1.0, std::abs(v.log_mag)));
    EXPECT_NEAR(std::remainder(back.phase - v.phase, 2 * std::numbers::pi), 0.0, 1e-12);
  }
}

TEST(LogScaledValue, ProductMatchesComplexProduct) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const std::complex<double> a{u(rng), u(rng)};
    const std::complex<double> b{u(rng), u(rng)};
    const auto p = (LogScaledValue::from_complex(a) * LogScaledValue::from_complex(b)).to_complex();
    EXPECT_LT(std::abs(p - a * b), 1e-12 * std::abs(a * b));
  }
}

TEST(LogScaledValue, CarriesValuesBeyondDoubleRange) {
  const LogScaledValue big{800.0, 0.0};
  const LogScaledValue small{-790.0, 0.0};
  EXPECT_TRUE(std::isinf(big.to_complex().real()));
  EXPECT_NEAR((big * small).to_real(), std::exp(10.0), 1e-9 * std::exp(10.0));
}
