#ifndef QRABI_LOG_SCALED_HPP
#define QRABI_LOG_SCALED_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace qrabi {

/// Complex number stored as exp(log_mag) * exp(i*phase).
///
/// Used wherever intermediate magnitudes leave the double range, e.g. H_n(z)
/// for n in the hundreds or the factorial and exponential factors of the
/// squeezed-coherent amplitude. Zero is log_mag == -inf.
struct LogScaledValue {
  double log_mag = 0.0;
  double phase = 0.0;

  static LogScaledValue zero() {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }

  static LogScaledValue from_complex(std::complex<double> z) {
    if (z == std::complex<double>{}) {
      return zero();
    }
    return {std::log(std::abs(z)), std::arg(z)};
  }

  static LogScaledValue from_real(double x) {
    return from_complex({x, 0.0});
  }

  bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

  std::complex<double> to_complex() const {
    if (is_zero()) {
      return {};
    }
    return std::polar(std::exp(log_mag), phase);
  }

  /// Real part; meaningful when the value is known to be real.
  double to_real() const { return to_complex().real(); }

  /// log |z|^2
  double log_abs2() const { return 2.0 * log_mag; }

  double abs2() const { return is_zero() ? 0.0 : std::exp(2.0 * log_mag); }

  LogScaledValue &operator*=(const LogScaledValue &rhs) {
    if (is_zero() || rhs.is_zero()) {
      *this = zero();
      return *this;
    }
    log_mag += rhs.log_mag;
    phase = std::remainder(phase + rhs.phase, 2.0 * std::numbers::pi);
    return *this;
  }

  friend LogScaledValue operator*(LogScaledValue lhs, const LogScaledValue &rhs) {
    lhs *= rhs;
    return lhs;
  }
};

}  // namespace qrabi

#endif
