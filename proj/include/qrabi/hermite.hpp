#ifndef QRABI_HERMITE_HPP
#define QRABI_HERMITE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "log_scaled.hpp"

namespace qrabi {

namespace detail {

// Rescale thresholds for the running Hermite pair. Far from the double
// limits so a few recurrence steps never overflow between checks.
inline constexpr double hermite_rescale_hi = 1e150;
inline constexpr double hermite_rescale_lo = 1e-150;

}  // namespace detail

/// Physicists' Hermite polynomials H_0(z) .. H_{n_max}(z).
///
/// Runs H_{k+1} = 2z H_k - 2k H_{k-1} on a rescaled pair (h_prev, h_cur) and
/// carries the common scale in log form, so no intermediate leaves the double
/// range for n up to 1e4 and |z| up to 1e3.
inline std::vector<LogScaledValue> hermite_log_scaled_sequence(std::size_t n_max,
                                                               std::complex<double> z) {
  std::vector<LogScaledValue> out;
  out.reserve(n_max + 1);

  double log_scale = 0.0;
  std::complex<double> h_prev{0.0, 0.0};
  std::complex<double> h_cur{1.0, 0.0};

  auto emit = [&](std::complex<double> h) {
    LogScaledValue v = LogScaledValue::from_complex(h);
    if (!v.is_zero()) {
      v.log_mag += log_scale;
    }
    out.push_back(v);
  };

  emit(h_cur);
  for (std::size_t k = 0; k < n_max; ++k) {
    const std::complex<double> h_next =
        2.0 * z * h_cur - 2.0 * static_cast<double>(k) * h_prev;
    h_prev = h_cur;
    h_cur = h_next;

    // Rescale on the larger of the pair; one of them may be an exact zero
    // (odd orders at z = 0).
    const double m = std::max(std::abs(h_cur), std::abs(h_prev));
    if (m > detail::hermite_rescale_hi || (m > 0.0 && m < detail::hermite_rescale_lo)) {
      h_cur /= m;
      h_prev /= m;
      log_scale += std::log(m);
    }
    emit(h_cur);
  }
  return out;
}

/// H_n(z) in log-scaled form.
inline LogScaledValue hermite_log_scaled(std::size_t n, std::complex<double> z) {
  return hermite_log_scaled_sequence(n, z).back();
}

}  // namespace qrabi

#endif
