#ifndef QRABI_RABI_DYNAMICS_HPP
#define QRABI_RABI_DYNAMICS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "photon_stats.hpp"
#include "summation.hpp"

/// Collapse/revival and photon-parity time series for a resonant two-level
/// atom (one-photon) and an effective two-photon transition (g1 = g2, zero
/// detuning). Times are the dimensionless products lambda*t or g*t.
namespace qrabi::rabi {

enum class Transition { one_photon, two_photon };

enum class SeriesKind { one_photon_prob, two_photon_prob, one_photon_parity, two_photon_parity };

inline const char *to_string(Transition t) {
  return t == Transition::one_photon ? "one-photon" : "two-photon";
}

inline const char *to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::one_photon_prob: return "one-photon-prob";
    case SeriesKind::two_photon_prob: return "two-photon-prob";
    case SeriesKind::one_photon_parity: return "one-photon-parity";
    case SeriesKind::two_photon_parity: return "two-photon-parity";
  }
  return "unknown";
}

inline Transition transition_of(SeriesKind k) {
  return (k == SeriesKind::one_photon_prob || k == SeriesKind::one_photon_parity)
             ? Transition::one_photon
             : Transition::two_photon;
}

inline bool is_parity(SeriesKind k) {
  return k == SeriesKind::one_photon_parity || k == SeriesKind::two_photon_parity;
}

inline SeriesKind series_kind(Transition t, bool parity) {
  if (t == Transition::one_photon) {
    return parity ? SeriesKind::one_photon_parity : SeriesKind::one_photon_prob;
  }
  return parity ? SeriesKind::two_photon_parity : SeriesKind::two_photon_prob;
}

struct RabiSeries {
  std::vector<double> times;
  std::vector<double> values;
  SeriesKind kind;
  DistributionSource dist_source;
};

/// Predicted collapse, revival and parity-event times.
struct TimescaleReport {
  Transition transition;
  double t_collapse;
  double t_revival;
  double t_parity_event;
};

namespace detail {

struct Term {
  double weight;
  double frequency;
};

// One-photon: 1/2 (1 - cos(2 sqrt(n+1) t)).
// Two-photon: 2(n+1)(n+2)/(2n+3)^2 (1 - cos(sqrt(2n+3) t)).
inline Term term(Transition t, std::size_t n) {
  const auto k = static_cast<double>(n);
  if (t == Transition::one_photon) {
    return {0.5, 2.0 * std::sqrt(k + 1.0)};
  }
  const double d = 2.0 * k + 3.0;
  return {2.0 * (k + 1.0) * (k + 2.0) / (d * d), std::sqrt(d)};
}

inline void validate_grid(const std::vector<double> &t_grid) {
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    if (!(t_grid[j] >= 0.0) || !std::isfinite(t_grid[j])) {
      throw precondition_error("time grid must hold finite nonnegative values");
    }
    if (j > 0 && !(t_grid[j] > t_grid[j - 1])) {
      throw precondition_error("time grid must be strictly increasing");
    }
  }
}

}  // namespace detail

/// Evenly spaced grid of `steps` points on [0, t_max], both ends included.
inline std::vector<double> uniform_grid(double t_max, std::size_t steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max) || steps < 2) {
    throw precondition_error("uniform_grid: need t_max > 0 and at least 2 steps");
  }
  std::vector<double> grid(steps);
  const double h = t_max / static_cast<double>(steps - 1);
  for (std::size_t j = 0; j < steps; ++j) {
    grid[j] = h * static_cast<double>(j);
  }
  grid.back() = t_max;
  return grid;
}

/// Sums the closed-form series for `kind` at every grid time. Each value is
/// computed independently from the pmf; there is no cross-point state.
inline RabiSeries rabi_series(const PhotonDistribution &dist, std::vector<double> t_grid,
                              SeriesKind kind) {
  detail::validate_grid(t_grid);
  const Transition transition = transition_of(kind);
  const bool parity = is_parity(kind);
  const auto probs = dist.probs();

  std::vector<detail::Term> terms(probs.size());
  for (std::size_t n = 0; n < probs.size(); ++n) {
    terms[n] = detail::term(transition, n);
    const double sign = (parity && n % 2 == 1) ? -1.0 : 1.0;
    terms[n].weight *= sign * probs[n];
  }

  std::vector<double> values(t_grid.size());
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    const double t = t_grid[j];
    CompensatedSum s;
    for (const auto &term : terms) {
      if (term.weight != 0.0) {
        s += term.weight * (1.0 - std::cos(term.frequency * t));
      }
    }
    values[j] = s.value();
  }
  return {std::move(t_grid), std::move(values), kind, dist.source()};
}

/// Probability of the ground state after a one-photon transition, atom
/// initially excited.
inline RabiSeries one_photon_series(const PhotonDistribution &dist, std::vector<double> t_grid) {
  return rabi_series(dist, std::move(t_grid), SeriesKind::one_photon_prob);
}

inline RabiSeries two_photon_series(const PhotonDistribution &dist, std::vector<double> t_grid) {
  return rabi_series(dist, std::move(t_grid), SeriesKind::two_photon_prob);
}

inline RabiSeries one_photon_parity_series(const PhotonDistribution &dist,
                                           std::vector<double> t_grid) {
  return rabi_series(dist, std::move(t_grid), SeriesKind::one_photon_parity);
}

inline RabiSeries two_photon_parity_series(const PhotonDistribution &dist,
                                           std::vector<double> t_grid) {
  return rabi_series(dist, std::move(t_grid), SeriesKind::two_photon_parity);
}

/// Long-time average of the series: the weighted pmf sum with the cosines
/// dropped.
inline double series_baseline(const PhotonDistribution &dist, SeriesKind kind) {
  const Transition transition = transition_of(kind);
  const bool parity = is_parity(kind);
  const auto probs = dist.probs();
  CompensatedSum s;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const double sign = (parity && n % 2 == 1) ? -1.0 : 1.0;
    s += sign * detail::term(transition, n).weight * probs[n];
  }
  return s.value();
}

/// Collapse time, revival time and parity-event time (half the revival).
///   one-photon: (sqrt 2, 2 pi sqrt(nbar), pi sqrt(nbar))      in lambda t
///   two-photon: (2, 2 pi sqrt(2 nbar), pi sqrt(2 nbar))       in g t
inline TimescaleReport timescales(double nbar, Transition transition) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw precondition_error("timescales: nbar must be finite and > 0");
  }
  constexpr double pi = std::numbers::pi;
  if (transition == Transition::one_photon) {
    const double s = std::sqrt(nbar);
    return {transition, std::numbers::sqrt2, 2.0 * pi * s, pi * s};
  }
  const double s = std::sqrt(2.0 * nbar);
  return {transition, 2.0, 2.0 * pi * s, pi * s};
}

struct PeakLocation {
  double t_peak;
  double amplitude;
};

/// Grid time in [t_lo, t_hi] with the largest |value - baseline|; the earliest
/// such time wins ties.
inline PeakLocation revival_peak_locator(const RabiSeries &series, double baseline,
                                         std::pair<double, double> window) {
  const auto [t_lo, t_hi] = window;
  if (series.times.empty() || !(t_lo <= t_hi) || t_lo < series.times.front() ||
      t_hi > series.times.back()) {
    throw range_error("revival_peak_locator: window outside the series time range");
  }
  bool found = false;
  PeakLocation best{t_lo, 0.0};
  for (std::size_t j = 0; j < series.times.size(); ++j) {
    const double t = series.times[j];
    if (t < t_lo || t > t_hi) {
      continue;
    }
    const double dev = std::abs(series.values[j] - baseline);
    if (!found || dev > best.amplitude) {
      best = {t, dev};
      found = true;
    }
  }
  if (!found) {
    throw range_error("revival_peak_locator: no grid point inside the window");
  }
  return best;
}

}  // namespace qrabi::rabi

#endif
