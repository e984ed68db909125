#ifndef QRABI_VERIFY_HPP
#define QRABI_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fock_space.hpp"
#include "photon_stats.hpp"
#include "rabi_dynamics.hpp"
#include "squeeze_optimizer.hpp"

namespace qrabi {

struct CheckResult {
  std::string name;
  double value;
  double threshold;
  bool passed;
};

/// Numerical invariant suite behind `qrabi verify`. Each check reports the
/// measured error and passes when it is strictly below the threshold.
inline std::vector<CheckResult> run_verification(std::size_t dim) {
  if (dim < 16 || dim % 2 != 0) {
    throw invalid_dimension("verify: dim must be even and >= 16");
  }
  using fock::cplx;
  const auto half = static_cast<Eigen::Index>(dim / 2);
  const cplx zeta{0.7136, 0.0};
  std::vector<CheckResult> out;

  auto record = [&](std::string name, double threshold, const std::function<double()> &measure) {
    double value = 0.0;
    bool ok = false;
    try {
      value = measure();
      ok = value < threshold;
    } catch (const error &) {
      value = std::nan("");
    }
    out.push_back({std::move(name), value, threshold, ok});
  };

  record("commutator_identity", 1e-12, [&] {
    const auto [a, ad] = fock::ladder_matrices(dim);
    const Eigen::MatrixXcd c = a.entries * ad.entries - ad.entries * a.entries;
    const auto inner = static_cast<Eigen::Index>(dim - 1);
    return (c.topLeftCorner(inner, inner) - Eigen::MatrixXcd::Identity(inner, inner))
        .cwiseAbs()
        .maxCoeff();
  });
  record("displacement_unitarity", 1e-8,
         [&] { return fock::displacement_operator({2.0, 0.0}, dim).unitarity_defect(); });
  record("squeeze_unitarity", 1e-8,
         [&] { return fock::squeeze_operator(zeta, dim).unitarity_defect(); });
  record("squeezed_vacuum_series_vs_operator", 1e-8, [&] {
    const auto col = fock::squeeze_operator(zeta, dim).column(0);
    const auto series = fock::squeezed_vacuum_series(zeta, dim);
    return (col.amp - series.amp).head(half + 1).cwiseAbs().maxCoeff();
  });
  record("quasiparticle_annihilates_vacuum", 1e-8, [&] {
    const auto vac = fock::squeezed_vacuum_series(zeta, dim);
    return (fock::quasiparticle_mode(zeta, dim) * vac).head_norm(dim / 2);
  });
  record("braiding_residual", 1e-8, [&] { return fock::braiding_residual({2.0, 0.0}, zeta, dim); });
  record("squeezed_fock_state_norm", 1e-8, [&] {
    return std::abs(fock::squeezed_fock_state(2, {0.5, 0.0}, dim).norm() - 1.0);
  });

  // Largest displacement the cutoff admits, capped at the reference |alpha| = 10.
  const double alpha_fit = std::min(10.0, 0.9 * (-3.0 + std::sqrt(9.0 + static_cast<double>(dim))));
  record("matrix_pmf_vs_closed_form", 1e-8, [&] {
    const ModeParams p = ModeParams::phase_matched(alpha_fit, 0.7136);
    const Eigen::VectorXd mat = fock::matrix_pmf(p.alpha(), p.zeta(), dim);
    const PhotonDistribution dist = squeezed_coherent_pmf(p);
    const std::size_t upto = std::min<std::size_t>(100, dim / 2);
    double worst = 0.0;
    for (std::size_t n = 0; n <= upto; ++n) {
      worst = std::max(worst, std::abs(mat(static_cast<Eigen::Index>(n)) - dist[n]));
    }
    return worst;
  });

  const ModeParams reference = ModeParams::phase_matched(10.0, 0.7136);
  record("mean_closed_vs_sum_rel", 1e-6, [&] {
    const double closed = mean_closed_form(reference);
    return std::abs(moment_by_sum(squeezed_coherent_pmf(reference), 1) - closed) / closed;
  });
  record("variance_closed_vs_sum_rel", 1e-6, [&] {
    const double closed = variance_closed_form(reference);
    return std::abs(variance_by_sum(squeezed_coherent_pmf(reference)) - closed) / closed;
  });
  record("parity_closed_vs_sum", 1e-8, [&] {
    const ModeParams p = ModeParams::phase_matched(1.0, 0.5);
    return std::abs(parity_sum(squeezed_coherent_pmf(p)) - parity_closed_form(p).value);
  });
  record("coherent_limit_vs_poisson", 1e-12, [&] {
    const PhotonDistribution sq = squeezed_coherent_pmf(ModeParams::phase_matched(std::sqrt(24.6), 0.0));
    const PhotonDistribution coh = coherent_pmf_adaptive(24.6);
    double worst = 0.0;
    for (std::size_t n = 0; n <= std::max(sq.n_max(), coh.n_max()); ++n) {
      worst = std::max(worst, std::abs(sq[n] - coh[n]));
    }
    return worst;
  });
  record("fano_mutual_oracle_dr", 1e-4, [&] {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      worst = std::max(worst, std::abs(optimize::solve_r_for_alpha(a).r_opt -
                                       optimize::minimize_fano_numeric(a).r_opt));
    }
    return worst;
  });
  record("mehler_identity", 1e-10, [&] {
    const auto m = mehler_check(0.6, 1.0, 0.5, 400);
    return std::abs(m.partial_sum - m.closed_form);
  });
  record("revival_time_one_photon", 2.0, [&] {
    const auto dist = coherent_pmf_adaptive(24.6);
    const auto series = rabi::one_photon_series(dist, rabi::uniform_grid(50.0, 8000));
    const auto peak = rabi::revival_peak_locator(series, 0.5, {25.0, 40.0});
    return std::abs(peak.t_peak - rabi::timescales(24.6, rabi::Transition::one_photon).t_revival);
  });
  return out;
}

}  // namespace qrabi

#endif
