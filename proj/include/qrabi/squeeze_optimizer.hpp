#ifndef QRABI_SQUEEZE_OPTIMIZER_HPP
#define QRABI_SQUEEZE_OPTIMIZER_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "errors.hpp"
#include "mode_params.hpp"
#include "photon_stats.hpp"
#include "scalar_search.hpp"

/// Minimization of the photon-number Fano factor Var(n)/<n> over the squeeze
/// magnitude r, with the displacement phase locked to phi = 2 theta.
namespace qrabi::optimize {

enum class Method { closed_form_inversion, numeric_search };

inline const char *to_string(Method m) {
  return m == Method::closed_form_inversion ? "closed-form-inversion" : "numeric-search";
}

struct OptimizationResult {
  double alpha_abs;
  double r_opt;
  double nbar;
  double fano;
  Method method;
};

inline constexpr double r_bracket_hi = 5.0;

/// Var(n)/<n> from the closed-form moments.
inline double fano(const ModeParams &params) {
  const double mean = mean_closed_form(params);
  if (!(mean > 0.0)) {
    throw undefined_ratio("fano: mean photon number is zero");
  }
  return variance_closed_form(params) / mean;
}

inline double fano(double alpha_abs, double r) {
  return fano(ModeParams::phase_matched(alpha_abs, r));
}

/// |alpha|^2 for which r is a stationary point of the Fano factor:
///   (e^{2r} - 1)/16 * (3 + 3e^{6r} + 3e^{4r} - 5e^{2r} + sqrt(R)),
///   R = 9e^{12r} + 18e^{10r} - 13e^{8r} - 28e^{6r} + 43e^{4r} - 14e^{2r} + 1.
inline double alpha_sq_optimal(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw precondition_error("alpha_sq_optimal: r must be finite and >= 0");
  }
  const double x = std::exp(2.0 * r);
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double x4 = x2 * x2;
  const double x5 = x4 * x;
  const double x6 = x3 * x3;
  const double radicand = 9.0 * x6 + 18.0 * x5 - 13.0 * x4 - 28.0 * x3 + 43.0 * x2 - 14.0 * x + 1.0;
  if (radicand < 0.0) {
    throw domain_error("alpha_sq_optimal: negative radicand at r=" + std::to_string(r));
  }
  return std::expm1(2.0 * r) / 16.0 * (3.0 + 3.0 * x3 + 3.0 * x2 - 5.0 * x + std::sqrt(radicand));
}

namespace detail {

inline OptimizationResult make_result(double alpha_abs, double r, Method method) {
  const ModeParams p = ModeParams::phase_matched(alpha_abs, r);
  return {alpha_abs, r, mean_closed_form(p), fano(p), method};
}

inline void require_positive_alpha(double alpha_abs, const char *what) {
  if (!(alpha_abs > 0.0) || !std::isfinite(alpha_abs)) {
    throw precondition_error(std::string(what) + ": alpha_abs must be finite and > 0");
  }
}

}  // namespace detail

/// Inverts alpha_sq_optimal(r) = alpha_abs^2 by bisection on [0, 5].
inline OptimizationResult solve_r_for_alpha(double alpha_abs) {
  detail::require_positive_alpha(alpha_abs, "solve_r_for_alpha");
  const double target = alpha_abs * alpha_abs;
  const double r = bisect_root([&](double rr) { return alpha_sq_optimal(rr) - target; }, 0.0,
                               r_bracket_hi, 1e-10);
  return detail::make_result(alpha_abs, r, Method::closed_form_inversion);
}

/// Grid over r in [0, 5] with step 1e-3, then golden-section refinement to
/// 1e-8 around the best grid point. Near-ties on the grid go to the smaller r.
inline OptimizationResult minimize_fano_numeric(double alpha_abs) {
  detail::require_positive_alpha(alpha_abs, "minimize_fano_numeric");
  constexpr double step = 1e-3;
  constexpr double flat = 1e-14;
  const auto n_steps = static_cast<std::size_t>(std::lround(r_bracket_hi / step));

  std::size_t best = 0;
  double best_value = fano(alpha_abs, 0.0);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    const double v = fano(alpha_abs, static_cast<double>(i) * step);
    if (v < best_value - flat) {
      best = i;
      best_value = v;
    }
  }

  const double center = static_cast<double>(best) * step;
  const double lo = std::max(0.0, center - step);
  const double hi = std::min(r_bracket_hi, center + step);
  double r = golden_section_minimize([&](double rr) { return fano(alpha_abs, rr); }, lo, hi, 1e-8);
  // The refined point must not be worse than the grid point it came from.
  if (fano(alpha_abs, r) > best_value) {
    r = center;
  }
  return detail::make_result(alpha_abs, r, Method::numeric_search);
}

}  // namespace qrabi::optimize

#endif
