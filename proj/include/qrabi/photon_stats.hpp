#ifndef QRABI_PHOTON_STATS_HPP
#define QRABI_PHOTON_STATS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hermite.hpp"
#include "log_scaled.hpp"
#include "mode_params.hpp"
#include "summation.hpp"

namespace qrabi {

/// At or below this squeeze magnitude the squeezed closed form is replaced by
/// the coherent amplitude (the Hermite argument diverges as r -> 0).
inline constexpr double r_min = 1e-6;
inline constexpr double default_tail_tol = 1e-12;
inline constexpr std::size_t n_max_cap = 4096;

struct CoherentSource {
  double nbar;
};
struct SqueezedSource {
  ModeParams params;
};
struct CustomSource {
  std::string label;
};
using DistributionSource = std::variant<CoherentSource, SqueezedSource, CustomSource>;

inline std::string describe(const DistributionSource &src) {
  struct Visitor {
    std::string operator()(const CoherentSource &c) const {
      return "coherent nbar=" + std::to_string(c.nbar);
    }
    std::string operator()(const SqueezedSource &s) const {
      return "squeezed alpha_abs=" + std::to_string(s.params.alpha_abs) +
             " alpha_phase=" + std::to_string(s.params.alpha_phase) +
             " r=" + std::to_string(s.params.r) + " phi=" + std::to_string(s.params.phi);
    }
    std::string operator()(const CustomSource &c) const { return c.label; }
  };
  return std::visit(Visitor{}, src);
}

/// Truncated photon-number pmf, probs()[n] for n = 0..n_max, with a bound on
/// the probability mass it does not represent.
class PhotonDistribution {
public:
  /// Validates every entry lies in [0, 1] and |1 - sum| <= tail_bound.
  static PhotonDistribution from_probs(std::vector<double> probs, double tail_bound,
                                       DistributionSource source) {
    if (probs.empty()) {
      throw precondition_error("PhotonDistribution: empty pmf");
    }
    CompensatedSum total;
    for (double p : probs) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw precondition_error("PhotonDistribution: probability outside [0, 1]");
      }
      total += p;
    }
    const double slack =
        4.0 * static_cast<double>(probs.size()) * std::numeric_limits<double>::epsilon();
    if (!(tail_bound >= 0.0) || std::abs(1.0 - total.value()) > tail_bound + slack) {
      throw precondition_error("PhotonDistribution: mass defect " +
                               std::to_string(1.0 - total.value()) + " exceeds tail bound " +
                               std::to_string(tail_bound));
    }
    return PhotonDistribution(std::move(probs), tail_bound, std::move(source));
  }

  /// Single Fock state |n>.
  static PhotonDistribution fock(std::size_t n) {
    std::vector<double> probs(n + 1, 0.0);
    probs[n] = 1.0;
    return from_probs(std::move(probs), 0.0, CustomSource{"fock n=" + std::to_string(n)});
  }

  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t n) const { return n < probs_.size() ? probs_[n] : 0.0; }
  std::size_t n_max() const { return probs_.size() - 1; }
  double tail_bound() const { return tail_bound_; }
  const DistributionSource &source() const { return source_; }

  double total() const {
    CompensatedSum s;
    for (double p : probs_) {
      s += p;
    }
    return s.value();
  }

private:
  PhotonDistribution(std::vector<double> probs, double tail_bound, DistributionSource source)
      : probs_(std::move(probs)), tail_bound_(tail_bound), source_(std::move(source)) {}

  std::vector<double> probs_;
  double tail_bound_;
  DistributionSource source_;
};

namespace detail {

inline double rounding_slack(std::size_t n_terms) {
  return static_cast<double>(n_terms) * std::numeric_limits<double>::epsilon();
}

inline double log_poisson(double nbar, std::size_t n) {
  const auto k = static_cast<double>(n);
  return -nbar + k * std::log(nbar) - std::lgamma(k + 1.0);
}

inline std::size_t initial_n_max(double mean, double variance) {
  return static_cast<std::size_t>(std::ceil(mean + 10.0 * std::sqrt(variance + 1.0)));
}

// Mean and variance of S(zeta)D(alpha)|0> for arbitrary phases, via the
// equivalent displaced squeezed vacuum D(b)S(zeta)|0> with
// b = alpha cosh r - alpha^* e^{i phi} sinh r. Only used to size n_max.
inline std::pair<double, double> general_mean_variance(const ModeParams &p) {
  const std::complex<double> alpha = p.alpha();
  const std::complex<double> b =
      alpha * std::cosh(p.r) - std::conj(alpha) * std::polar(std::sinh(p.r), p.phi);
  const double b2 = std::norm(b);
  const double sh = std::sinh(p.r);
  const double mean = b2 + sh * sh;
  const double cross = b2 == 0.0 ? 0.0 : std::cos(p.phi - 2.0 * std::arg(b));
  const double s2 = std::sinh(2.0 * p.r);
  const double variance = b2 * (std::cosh(2.0 * p.r) - s2 * cross) + 0.5 * s2 * s2;
  return {mean, variance};
}

}  // namespace detail

/// Poisson pmf with mean nbar on 0..n_max, evaluated in the log domain.
/// The tail bound uses the geometric majorant of the Poisson ratio
/// p(k+1)/p(k) = nbar/(k+1) beyond n_max.
inline PhotonDistribution coherent_pmf(double nbar, std::size_t n_max) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw precondition_error("coherent_pmf: nbar must be finite and >= 0");
  }
  std::vector<double> probs(n_max + 1, 0.0);
  double tail = 0.0;
  if (nbar == 0.0) {
    probs[0] = 1.0;
  } else {
    for (std::size_t n = 0; n <= n_max; ++n) {
      probs[n] = std::exp(detail::log_poisson(nbar, n));
    }
    const double next = static_cast<double>(n_max) + 2.0;
    if (next > nbar) {
      tail = std::exp(detail::log_poisson(nbar, n_max + 1)) / (1.0 - nbar / next);
    } else {
      tail = 1.0;
    }
  }
  tail = std::min(1.0, tail + detail::rounding_slack(n_max + 1));
  return PhotonDistribution::from_probs(std::move(probs), tail, CoherentSource{nbar});
}

/// Poisson pmf with n_max grown from nbar + 10 sigma until the tail bound is
/// at most tail_tol.
inline PhotonDistribution coherent_pmf_adaptive(double nbar, double tail_tol = default_tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw precondition_error("coherent_pmf_adaptive: tail_tol must lie in (0, 1)");
  }
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw precondition_error("coherent_pmf_adaptive: nbar must be finite and >= 0");
  }
  std::size_t n_max = std::max<std::size_t>(1, detail::initial_n_max(nbar, nbar));
  while (n_max <= n_max_cap) {
    PhotonDistribution dist = coherent_pmf(nbar, n_max);
    if (dist.tail_bound() <= tail_tol) {
      return dist;
    }
    n_max *= 2;
  }
  throw numerical_failure("coherent_pmf_adaptive: tail tolerance not met below n_max cap");
}

/// <n|D(alpha)|0> = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
inline LogScaledValue coherent_amplitude(std::complex<double> alpha, std::size_t n) {
  const double m = std::abs(alpha);
  if (m == 0.0) {
    return n == 0 ? LogScaledValue{} : LogScaledValue::zero();
  }
  const auto k = static_cast<double>(n);
  return {-0.5 * m * m + k * std::log(m) - 0.5 * std::lgamma(k + 1.0),
          wrap_phase(k * std::arg(alpha))};
}

namespace detail {

// Amplitudes <n|S(zeta)D(alpha)|0> for n = 0..n_max as the product of
//   (tanh r e^{i phi})^{n/2} / (2^{n/2} sqrt(n! cosh r)),
//   exp(-(|alpha|^2 - e^{-i phi} alpha^2 tanh r)/2),
//   H_n(alpha e^{-i phi/2} / sqrt(2 cosh r sinh r)),
// each kept in log-scaled form. The half-integer power uses exp(i n phi/2)
// with phi wrapped to (-pi, pi]; the Hermite argument uses the same branch.
inline std::vector<LogScaledValue> squeezed_amplitudes(const ModeParams &p, std::size_t n_max) {
  p.validate();
  if (!(p.r > r_min)) {
    throw coherent_limit("squeezed_coherent_amplitude: r <= r_min, use the coherent amplitude");
  }
  const double phi = wrap_phase(p.phi);
  const double theta = p.alpha_phase;
  const double t = std::tanh(p.r);
  const double log_t = std::log(t);
  const double log_cosh = std::log(std::cosh(p.r));
  const double a2 = p.alpha_abs * p.alpha_abs;

  // e^{-i phi} alpha^2 = |alpha|^2 e^{i(2 theta - phi)}
  const std::complex<double> gauss =
      -0.5 * (a2 - std::polar(a2, 2.0 * theta - phi) * t);
  const LogScaledValue gauss_factor{gauss.real(), gauss.imag()};

  const std::complex<double> z =
      std::polar(p.alpha_abs / std::sqrt(std::sinh(2.0 * p.r)), theta - 0.5 * phi);
  const std::vector<LogScaledValue> herm = hermite_log_scaled_sequence(n_max, z);

  std::vector<LogScaledValue> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto k = static_cast<double>(n);
    const LogScaledValue prefactor{
        0.5 * k * (log_t - std::numbers::ln2) - 0.5 * (std::lgamma(k + 1.0) + log_cosh),
        0.5 * k * phi};
    out.push_back(prefactor * gauss_factor * herm[n]);
  }
  return out;
}

}  // namespace detail

/// <n|S(zeta)D(alpha)|0> in log-scaled form. Throws coherent_limit for
/// r <= r_min.
inline LogScaledValue squeezed_coherent_amplitude(const ModeParams &params, std::size_t n) {
  return detail::squeezed_amplitudes(params, n).back();
}

/// |<n|S(zeta)D(alpha)|0>|^2 with n_max grown (from mean + 10 sigma, doubling,
/// capped at 4096) until the missing mass is at most tail_tol. Falls back to
/// the coherent pmf of alpha when r <= r_min.
inline PhotonDistribution squeezed_coherent_pmf(const ModeParams &params,
                                                double tail_tol = default_tail_tol) {
  params.validate();
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw precondition_error("squeezed_coherent_pmf: tail_tol must lie in (0, 1)");
  }
  if (params.r <= r_min) {
    const PhotonDistribution c =
        coherent_pmf_adaptive(params.alpha_abs * params.alpha_abs, tail_tol);
    return PhotonDistribution::from_probs({c.probs().begin(), c.probs().end()}, c.tail_bound(),
                                          SqueezedSource{params});
  }

  const auto [mean, variance] = detail::general_mean_variance(params);
  const double floor_n = mean + 10.0 * std::sqrt(variance);
  std::size_t n_max = std::max<std::size_t>(2, detail::initial_n_max(mean, variance));
  while (n_max <= n_max_cap) {
    const std::vector<LogScaledValue> amps = detail::squeezed_amplitudes(params, n_max);
    std::vector<double> probs(n_max + 1);
    CompensatedSum total;
    for (std::size_t n = 0; n <= n_max; ++n) {
      probs[n] = std::min(1.0, amps[n].abs2());
      total += probs[n];
    }
    const double tail = std::abs(1.0 - total.value()) + detail::rounding_slack(n_max + 1);
    if (tail <= tail_tol && static_cast<double>(n_max) >= floor_n) {
      return PhotonDistribution::from_probs(std::move(probs), tail, SqueezedSource{params});
    }
    n_max *= 2;
  }
  throw numerical_failure("squeezed_coherent_pmf: normalization not reached below n_max cap");
}

/// <n> = |alpha|^2 e^{-2r} + sinh^2 r, valid for phi = 2 theta.
inline double mean_closed_form(const ModeParams &p) {
  p.require_phase_matched("mean_closed_form");
  const double sh = std::sinh(p.r);
  return p.alpha_abs * p.alpha_abs * std::exp(-2.0 * p.r) + sh * sh;
}

/// Var(n) = |alpha|^2 e^{-4r} + sinh^2(2r)/2, valid for phi = 2 theta.
inline double variance_closed_form(const ModeParams &p) {
  p.require_phase_matched("variance_closed_form");
  const double s2 = std::sinh(2.0 * p.r);
  return p.alpha_abs * p.alpha_abs * std::exp(-4.0 * p.r) + 0.5 * s2 * s2;
}

/// sum_n n^order p(n); the truncation bias is at most n_max^order * tail_bound.
inline double moment_by_sum(const PhotonDistribution &dist, int order) {
  if (order < 1 || order > 4) {
    throw precondition_error("moment_by_sum: order must be in 1..4");
  }
  CompensatedSum s;
  const auto probs = dist.probs();
  for (std::size_t n = 0; n < probs.size(); ++n) {
    s += std::pow(static_cast<double>(n), order) * probs[n];
  }
  return s.value();
}

inline double variance_by_sum(const PhotonDistribution &dist) {
  const double m1 = moment_by_sum(dist, 1);
  return moment_by_sum(dist, 2) - m1 * m1;
}

struct MehlerResult {
  double partial_sum;
  double closed_form;
};

/// Both sides of Mehler's kernel identity
///   sum_n u^n/(2^n n!) H_n(x) H_n(y) = (1-u^2)^{-1/2} exp((2uxy - u^2(x^2+y^2))/(1-u^2)),
/// the left side summed over n < terms with each term assembled in log form.
inline MehlerResult mehler_check(double u, double x, double y, std::size_t terms) {
  if (!(std::abs(u) < 1.0)) {
    throw divergence_error("mehler_check: series diverges for |u| >= 1");
  }
  if (terms == 0) {
    throw precondition_error("mehler_check: terms must be positive");
  }
  const auto hx = hermite_log_scaled_sequence(terms - 1, {x, 0.0});
  const auto hy = hermite_log_scaled_sequence(terms - 1, {y, 0.0});
  const LogScaledValue log_u = LogScaledValue::from_real(u);

  CompensatedSum sum;
  for (std::size_t n = 0; n < terms; ++n) {
    if (hx[n].is_zero() || hy[n].is_zero()) {
      continue;
    }
    const auto k = static_cast<double>(n);
    double log_mag = -k * std::numbers::ln2 - std::lgamma(k + 1.0) + hx[n].log_mag + hy[n].log_mag;
    double phase = hx[n].phase + hy[n].phase;
    if (n > 0) {
      if (log_u.is_zero()) {
        continue;
      }
      log_mag += k * log_u.log_mag;
      phase += k * log_u.phase;
    }
    sum += std::exp(log_mag) * std::cos(phase);
  }

  const double one_minus = 1.0 - u * u;
  const double closed =
      std::exp((2.0 * u * x * y - u * u * (x * x + y * y)) / one_minus) / std::sqrt(one_minus);
  return {sum.value(), closed};
}

/// sum_n (-1)^n p(n); error at most tail_bound.
inline double parity_sum(const PhotonDistribution &dist) {
  CompensatedSum s;
  const auto probs = dist.probs();
  for (std::size_t n = 0; n < probs.size(); ++n) {
    s += (n % 2 == 0) ? probs[n] : -probs[n];
  }
  return s.value();
}

struct ParityValue {
  double value;      ///< may underflow to 0
  double log_value;  ///< natural log, always finite
};

/// <(-1)^n> = exp(-2|alpha|^2) for phi = 2 theta, independent of r.
inline ParityValue parity_closed_form(const ModeParams &p) {
  p.require_phase_matched("parity_closed_form");
  const double log_value = -2.0 * p.alpha_abs * p.alpha_abs;
  return {std::exp(log_value), log_value};
}

}  // namespace qrabi

#endif
