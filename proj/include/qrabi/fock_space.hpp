#ifndef QRABI_FOCK_SPACE_HPP
#define QRABI_FOCK_SPACE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "errors.hpp"

/// Truncated-Fock-basis linear algebra.
///
/// Every identity between infinite-dimensional operators is certified only on
/// the top-left (dim/2) x (dim/2) block (or on indices 0..dim/2 of a state),
/// since truncation corrupts the highest modes.
namespace qrabi::fock {

using cplx = std::complex<double>;

/// Coefficients of |n> at index n, n = 0..dim-1.
struct StateVector {
  Eigen::VectorXcd amp;

  static StateVector basis(std::size_t n, std::size_t dim) {
    if (n >= dim) {
      throw invalid_dimension("basis index " + std::to_string(n) + " outside dim " +
                              std::to_string(dim));
    }
    StateVector s{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))};
    s.amp(static_cast<Eigen::Index>(n)) = 1.0;
    return s;
  }

  std::size_t dim() const { return static_cast<std::size_t>(amp.size()); }
  double norm() const { return amp.norm(); }

  /// Euclidean norm over indices 0..upto inclusive.
  double head_norm(std::size_t upto) const {
    return amp.head(static_cast<Eigen::Index>(std::min(upto + 1, dim()))).norm();
  }

  bool is_normalized(double tol = 1e-10) const { return std::abs(norm() - 1.0) < tol; }
};

/// Matrix in the photon-number basis; row and column index = photon number.
struct FockOperator {
  Eigen::MatrixXcd entries;

  static FockOperator identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return {Eigen::MatrixXcd::Identity(d, d)};
  }

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }

  FockOperator adjoint() const { return {entries.adjoint()}; }

  cplx operator()(std::size_t row, std::size_t col) const {
    return entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  StateVector column(std::size_t n) const {
    return {entries.col(static_cast<Eigen::Index>(n))};
  }

  /// Max |U^dagger U - I| over the certified block.
  double unitarity_defect() const {
    const auto half = static_cast<Eigen::Index>(dim() / 2);
    const Eigen::MatrixXcd gram = entries.adjoint() * entries;
    return (gram.topLeftCorner(half, half) - Eigen::MatrixXcd::Identity(half, half))
        .cwiseAbs()
        .maxCoeff();
  }

  friend FockOperator operator*(const FockOperator &a, const FockOperator &b) {
    return {a.entries * b.entries};
  }
  friend StateVector operator*(const FockOperator &a, const StateVector &v) {
    return {a.entries * v.amp};
  }
  friend FockOperator operator-(const FockOperator &a, const FockOperator &b) {
    return {a.entries - b.entries};
  }
};

/// Bogoliubov-Valatin coefficients of A = beta a + gamma a^dagger.
struct BogoliubovCoeffs {
  cplx beta;
  cplx gamma;

  /// beta = cosh r, gamma = e^{i phi} sinh r for zeta = r e^{i phi}.
  static BogoliubovCoeffs from_squeeze(cplx zeta) {
    const double r = std::abs(zeta);
    const double phi = std::arg(zeta);
    return {cplx{std::cosh(r), 0.0}, std::polar(std::sinh(r), phi)};
  }

  /// |beta|^2 - |gamma|^2, equal to 1 for a canonical transformation.
  double commutator_norm() const { return std::norm(beta) - std::norm(gamma); }
};

/// Annihilation and creation matrices, <n-1|a|n> = sqrt(n).
inline std::pair<FockOperator, FockOperator> ladder_matrices(std::size_t dim) {
  if (dim < 2) {
    throw invalid_dimension("ladder_matrices: dim must be >= 2, got " + std::to_string(dim));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  FockOperator a{Eigen::MatrixXcd::Zero(d, d)};
  for (Eigen::Index n = 1; n < d; ++n) {
    a.entries(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return {a, a.adjoint()};
}

namespace detail {

// exp(G) for anti-Hermitian G via the eigenbasis of the Hermitian H = iG:
// exp(G) = V exp(-i Lambda) V^dagger.
inline FockOperator exp_anti_hermitian(const Eigen::MatrixXcd &generator) {
  const Eigen::MatrixXcd hermitian = cplx{0.0, 1.0} * generator;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw numerical_failure("eigendecomposition of operator generator failed");
  }
  const Eigen::VectorXd &lambda = solver.eigenvalues();
  const Eigen::MatrixXcd &v = solver.eigenvectors();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::polar(1.0, -lambda(k));
  }
  return {v * phases.asDiagonal() * v.adjoint()};
}

inline void require_displacement_fits(cplx alpha, std::size_t dim) {
  const double m = std::abs(alpha);
  if (!(m * m + 6.0 * m < static_cast<double>(dim))) {
    throw truncation_too_small("displacement |alpha|=" + std::to_string(m) +
                               " needs |alpha|^2 + 6|alpha| < dim=" + std::to_string(dim));
  }
}

inline void require_squeeze_fits(cplx zeta, std::size_t dim) {
  const double s = std::sinh(std::abs(zeta));
  if (dim % 2 != 0 || !(s * s + 6.0 * s < static_cast<double>(dim))) {
    throw truncation_too_small("squeeze r=" + std::to_string(std::abs(zeta)) +
                               " needs even dim with sinh^2 r + 6 sinh r < dim=" +
                               std::to_string(dim));
  }
}

inline FockOperator displacement_unchecked(cplx alpha, std::size_t dim) {
  const auto [a, ad] = ladder_matrices(dim);
  return exp_anti_hermitian(alpha * ad.entries - std::conj(alpha) * a.entries);
}

inline FockOperator squeeze_unchecked(cplx zeta, std::size_t dim) {
  const auto [a, ad] = ladder_matrices(dim);
  const Eigen::MatrixXcd ad2 = ad.entries * ad.entries;
  const Eigen::MatrixXcd a2 = a.entries * a.entries;
  return exp_anti_hermitian(-0.5 * zeta * ad2 + 0.5 * std::conj(zeta) * a2);
}

}  // namespace detail

/// D(alpha) = exp(alpha a^dagger - alpha^* a).
inline FockOperator displacement_operator(cplx alpha, std::size_t dim) {
  if (dim < 2) {
    throw invalid_dimension("displacement_operator: dim must be >= 2");
  }
  detail::require_displacement_fits(alpha, dim);
  return detail::displacement_unchecked(alpha, dim);
}

/// S(zeta) = exp(-(zeta/2) a^dagger^2 + (zeta^*/2) a^2).
inline FockOperator squeeze_operator(cplx zeta, std::size_t dim) {
  if (dim < 2) {
    throw invalid_dimension("squeeze_operator: dim must be >= 2");
  }
  detail::require_squeeze_fits(zeta, dim);
  return detail::squeeze_unchecked(zeta, dim);
}

/// Closed-form squeezed vacuum,
///   sqrt(1 - |g|^2) sum_n (-g)^n sqrt((2n)!)/(2^n n!) |2n>,  g = e^{i phi} tanh r,
/// truncated at dim. Coefficients are built by the ratio
///   c_{n+1}/c_n = -g sqrt((2n+1)(2n+2)) / (2(n+1)).
inline StateVector squeezed_vacuum_series(cplx zeta, std::size_t dim) {
  if (dim < 2 || dim % 2 != 0) {
    throw invalid_dimension("squeezed_vacuum_series: dim must be even and >= 2");
  }
  const double r = std::abs(zeta);
  const cplx g = std::polar(std::tanh(r), std::arg(zeta));
  StateVector out{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))};
  cplx c = 1.0 / std::sqrt(std::cosh(r));
  for (std::size_t n = 0; 2 * n < dim; ++n) {
    out.amp(static_cast<Eigen::Index>(2 * n)) = c;
    const auto nn = static_cast<double>(n);
    c *= -g * std::sqrt((2.0 * nn + 1.0) * (2.0 * nn + 2.0)) / (2.0 * (nn + 1.0));
  }
  return out;
}

/// Quasiparticle annihilator A = cosh(r) a + e^{i phi} sinh(r) a^dagger.
inline FockOperator quasiparticle_mode(cplx zeta, std::size_t dim) {
  if (dim < 4) {
    throw invalid_dimension("quasiparticle_mode: dim must be >= 4");
  }
  const auto [a, ad] = ladder_matrices(dim);
  const auto bc = BogoliubovCoeffs::from_squeeze(zeta);
  return {bc.beta * a.entries + bc.gamma * ad.entries};
}

/// S(zeta)|n>, cross-checked against (A^dagger)^n |0_A> / sqrt(n!) on the
/// certified index range.
inline StateVector squeezed_fock_state(std::size_t n, cplx zeta, std::size_t dim) {
  if (4 * n >= dim) {
    throw truncation_too_small("squeezed_fock_state: need n < dim/4");
  }
  const FockOperator s = squeeze_operator(zeta, dim);
  StateVector via_squeeze = s.column(n);

  const FockOperator a_dag = quasiparticle_mode(zeta, dim).adjoint();
  StateVector via_ladder = squeezed_vacuum_series(zeta, dim);
  for (std::size_t k = 1; k <= n; ++k) {
    via_ladder = a_dag * via_ladder;
    via_ladder.amp /= std::sqrt(static_cast<double>(k));
  }

  const StateVector diff{via_squeeze.amp - via_ladder.amp};
  const double residual = diff.head_norm(dim / 2);
  if (!(residual < 1e-7)) {
    throw numerical_failure("squeezed_fock_state: routes disagree by " +
                            std::to_string(residual));
  }
  return via_squeeze;
}

/// Max elementwise |D(alpha cosh r - alpha^* e^{i phi} sinh r) S(zeta) - S(zeta) D(alpha)|
/// over the top-left (dim/2) x (dim/2) block.
///
/// Both products are formed at working dimension 2*dim: S(zeta)|n> for n near
/// dim/2 spreads past dim, so products at dim itself corrupt the block.
inline double braiding_residual(cplx alpha, cplx zeta, std::size_t dim) {
  if (dim < 4) {
    throw invalid_dimension("braiding_residual: dim must be >= 4");
  }
  const auto bc = BogoliubovCoeffs::from_squeeze(zeta);
  const cplx shifted = alpha * bc.beta - std::conj(alpha) * bc.gamma;
  detail::require_displacement_fits(alpha, dim);
  detail::require_displacement_fits(shifted, dim);
  detail::require_squeeze_fits(zeta, dim);

  const std::size_t work = 2 * dim;
  const FockOperator s = detail::squeeze_unchecked(zeta, work);
  const FockOperator lhs = detail::displacement_unchecked(shifted, work) * s;
  const FockOperator rhs = s * detail::displacement_unchecked(alpha, work);
  const auto half = static_cast<Eigen::Index>(dim / 2);
  return (lhs.entries - rhs.entries).topLeftCorner(half, half).cwiseAbs().maxCoeff();
}

/// Photon pmf |<n|S(zeta) D(alpha)|0>|^2 built from matrix exponentials.
inline Eigen::VectorXd matrix_pmf(cplx alpha, cplx zeta, std::size_t dim) {
  const StateVector coherent = displacement_operator(alpha, dim).column(0);
  const StateVector state = squeeze_operator(zeta, dim) * coherent;
  return state.amp.cwiseAbs2();
}

}  // namespace qrabi::fock

#endif
