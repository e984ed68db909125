#ifndef QRABI_MODE_PARAMS_HPP
#define QRABI_MODE_PARAMS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace qrabi {

/// Wrap an angle into (-pi, pi].
inline double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);
  if (w <= -std::numbers::pi) {
    w += two_pi;
  }
  return w;
}

/// Displacement alpha = alpha_abs e^{i alpha_phase} and squeeze zeta = r e^{i phi}
/// describing the state S(zeta) D(alpha)|0>.
struct ModeParams {
  double alpha_abs = 0.0;
  double alpha_phase = 0.0;
  double r = 0.0;
  double phi = 0.0;

  /// phi = 2 theta, the orientation under which the closed-form moments and
  /// parity hold.
  static ModeParams phase_matched(double alpha_abs, double r, double alpha_phase = 0.0) {
    return {alpha_abs, alpha_phase, r, 2.0 * alpha_phase};
  }

  std::complex<double> alpha() const { return std::polar(alpha_abs, alpha_phase); }
  std::complex<double> zeta() const { return std::polar(r, phi); }

  bool is_phase_matched() const {
    return std::abs(wrap_phase(phi - 2.0 * alpha_phase)) <= 1e-12;
  }

  void validate() const {
    if (!(alpha_abs >= 0.0) || !(r >= 0.0) || !std::isfinite(alpha_abs) || !std::isfinite(r) ||
        !std::isfinite(alpha_phase) || !std::isfinite(phi)) {
      throw precondition_error("ModeParams: need finite alpha_abs >= 0 and r >= 0");
    }
  }

  void require_phase_matched(const char *what) const {
    validate();
    if (!is_phase_matched()) {
      throw precondition_error(std::string(what) + ": closed form requires phi = 2*theta");
    }
  }
};

}  // namespace qrabi

#endif
