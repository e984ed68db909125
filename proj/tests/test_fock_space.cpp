#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "qrabi/fock_space.hpp"
#include "qrabi/photon_stats.hpp"

using namespace qrabi;
using namespace qrabi::fock;

namespace {

double block_max_abs(const Eigen::MatrixXcd &m, Eigen::Index k) {
  return m.topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(LadderMatrices, RejectsTinyDimension) {
  EXPECT_THROW(ladder_matrices(1), invalid_dimension);
  EXPECT_THROW(ladder_matrices(0), invalid_dimension);
}

TEST(LadderMatrices, DimTwo) {
  const auto [a, ad] = ladder_matrices(2);
  EXPECT_EQ(a(0, 1), cplx(1.0, 0.0));
  EXPECT_EQ(a(0, 0), cplx(0.0, 0.0));
  EXPECT_EQ(a(1, 0), cplx(0.0, 0.0));
  EXPECT_EQ(a(1, 1), cplx(0.0, 0.0));
  EXPECT_EQ(ad(1, 0), cplx(1.0, 0.0));
}

TEST(LadderMatrices, SqrtRule) {
  const auto [a, ad] = ladder_matrices(4);
  EXPECT_NEAR(a(2, 3).real(), 1.7320508075688772, 1e-15);
  EXPECT_EQ(ad.entries, a.entries.adjoint());
}

TEST(LadderMatrices, CommutatorBoundaryDefect) {
  const auto [a, ad] = ladder_matrices(64);
  const Eigen::MatrixXcd c = a.entries * ad.entries - ad.entries * a.entries;
  for (Eigen::Index i = 0; i < 64; ++i) {
    for (Eigen::Index j = 0; j < 64; ++j) {
      const double expected = (i == j) ? (i == 63 ? -63.0 : 1.0) : 0.0;
      // sqrt(n)^2 is n only up to rounding.
      EXPECT_LE(std::abs(c(i, j) - cplx(expected, 0.0)), 64 * 4e-16) << i << "," << j;
    }
  }
}

TEST(LadderMatrices, NumberOperatorIsExact) {
  for (std::size_t dim : {2u, 7u, 64u, 200u}) {
    const auto [a, ad] = ladder_matrices(dim);
    const Eigen::MatrixXcd num = ad.entries * a.entries;
    for (std::size_t n = 0; n < dim; ++n) {
      EXPECT_NEAR(num(n, n).real(), static_cast<double>(n), 4e-16 * std::max<double>(1, n));
      EXPECT_EQ(num(n, n).imag(), 0.0);
    }
  }
}

TEST(DisplacementOperator, ZeroIsIdentity) {
  const auto d = displacement_operator({0.0, 0.0}, 32);
  EXPECT_LT((d.entries - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(DisplacementOperator, VacuumOverlap) {
  const auto d = displacement_operator({1.0, 0.0}, 64);
  EXPECT_NEAR(std::abs(d(0, 0)), std::exp(-0.5), 1e-12);
}

TEST(DisplacementOperator, ColumnZeroIsCoherentState) {
  const cplx alpha{0.0, 2.0};
  const auto d = displacement_operator(alpha, 64);
  double total = 0.0;
  for (std::size_t n = 0; n < 64; ++n) {
    total += std::norm(d(n, 0));
  }
  EXPECT_NEAR(total, 1.0, 1e-10);
  for (std::size_t n = 0; n <= 32; ++n) {
    const cplx expected = coherent_amplitude(alpha, n).to_complex();
    EXPECT_LT(std::abs(d(n, 0) - expected), 1e-8) << n;
    const double poisson = std::exp(-4.0 + n * std::log(4.0) - std::lgamma(n + 1.0));
    EXPECT_NEAR(std::norm(d(n, 0)), poisson, 1e-12);
  }
}

TEST(DisplacementOperator, TruncationGuard) {
  EXPECT_THROW(displacement_operator({10.0, 0.0}, 128), truncation_too_small);
  EXPECT_NO_THROW(displacement_operator({10.0, 0.0}, 162));
}

TEST(SqueezeOperator, ZeroIsIdentity) {
  const auto s = squeeze_operator({0.0, 0.0}, 32);
  EXPECT_LT((s.entries - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SqueezeOperator, VacuumMatrixElements) {
  const auto s = squeeze_operator({0.5, 0.0}, 128);
  EXPECT_NEAR(std::abs(s(0, 0)), 1.0 / std::sqrt(std::cosh(0.5)), 1e-10);
  EXPECT_NEAR(std::abs(s(0, 0)), 0.94171061583167571, 1e-10);
  EXPECT_LT(std::abs(s(1, 0)), 1e-14);
}

TEST(SqueezeOperator, TruncationGuard) {
  EXPECT_THROW(squeeze_operator({0.5, 0.0}, 33), truncation_too_small);
  EXPECT_THROW(squeeze_operator({4.0, 0.0}, 256), truncation_too_small);
}

TEST(SqueezeOperator, UnitaryOnCertifiedBlock) {
  for (cplx zeta : {cplx{0.7136, 0.0}, std::polar(0.4, 2.0), std::polar(1.0, -1.0)}) {
    EXPECT_LT(squeeze_operator(zeta, 128).unitarity_defect(), 1e-8);
  }
  for (cplx alpha : {cplx{2.0, 0.0}, std::polar(3.0, 0.7)}) {
    EXPECT_LT(displacement_operator(alpha, 128).unitarity_defect(), 1e-8);
  }
}

TEST(SqueezedVacuumSeries, BareVacuumAtZeroSqueeze) {
  const auto v = squeezed_vacuum_series({0.0, 0.0}, 16);
  EXPECT_EQ(v.amp(0), cplx(1.0, 0.0));
  EXPECT_EQ(v.amp.tail(15).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SqueezedVacuumSeries, SecondCoefficient) {
  // n = 1 term: -tanh(r) sqrt(2!)/2 / sqrt(cosh r)
  const auto v = squeezed_vacuum_series({0.5, 0.0}, 16);
  const double expected = -std::tanh(0.5) * std::sqrt(2.0) / 2.0 / std::sqrt(std::cosh(0.5));
  EXPECT_NEAR(v.amp(2).real(), expected, 1e-15);
  EXPECT_NEAR(v.amp(2).real(), -0.30771917645837045, 1e-14);
  EXPECT_EQ(v.amp(1), cplx(0.0, 0.0));
}

TEST(SqueezedVacuumSeries, Normalized) {
  EXPECT_NEAR(squeezed_vacuum_series({0.7136, 0.0}, 256).norm(), 1.0, 1e-10);
}

TEST(SqueezedVacuumSeries, EqualsSqueezeOperatorColumn) {
  for (cplx zeta : {cplx{0.7136, 0.0}, std::polar(0.9, 2.5)}) {
    const auto col = squeeze_operator(zeta, 256).column(0);
    const auto series = squeezed_vacuum_series(zeta, 256);
    EXPECT_LT((col.amp - series.amp).head(129).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(BogoliubovCoeffs, CanonicalNormalization) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.0, 3.0);
  std::uniform_real_distribution<double> ph(-3.14, 3.14);
  for (int i = 0; i < 200; ++i) {
    const auto bc = BogoliubovCoeffs::from_squeeze(std::polar(r(rng), ph(rng)));
    EXPECT_NEAR(bc.commutator_norm(), 1.0, 1e-12 * std::norm(bc.beta));
  }
}

TEST(QuasiparticleMode, ReducesToPhotonAtZeroSqueeze) {
  const auto a_q = quasiparticle_mode({0.0, 0.0}, 16);
  const auto [a, ad] = ladder_matrices(16);
  EXPECT_EQ(a_q.entries, a.entries);
}

TEST(QuasiparticleMode, CanonicalCommutatorAwayFromBoundary) {
  const std::size_t dim = 64;
  const auto a_q = quasiparticle_mode({0.5, 0.0}, dim);
  const Eigen::MatrixXcd c = a_q.entries * a_q.entries.adjoint() - a_q.entries.adjoint() * a_q.entries;
  const auto k = static_cast<Eigen::Index>(dim / 2);
  EXPECT_LT(block_max_abs(c - Eigen::MatrixXcd::Identity(dim, dim), k), 1e-12);
}

TEST(QuasiparticleMode, AnnihilatesSqueezedVacuum) {
  for (cplx zeta : {cplx{0.7136, 0.0}, std::polar(0.6, 1.3)}) {
    const auto vac = squeezed_vacuum_series(zeta, 256);
    EXPECT_LT((quasiparticle_mode(zeta, 256) * vac).head_norm(128), 1e-8);
  }
}

TEST(QuasiparticleMode, RejectsTinyDimension) {
  EXPECT_THROW(quasiparticle_mode({0.1, 0.0}, 3), invalid_dimension);
}

TEST(SqueezedFockState, VacuumIsSeries) {
  const auto s = squeezed_fock_state(0, {0.5, 0.0}, 128);
  EXPECT_LT((s.amp - squeezed_vacuum_series({0.5, 0.0}, 128).amp).head(65).norm(), 1e-8);
}

TEST(SqueezedFockState, NoSqueezeIsBareFock) {
  const auto s = squeezed_fock_state(1, {0.0, 0.0}, 32);
  EXPECT_LT((s.amp - StateVector::basis(1, 32).amp).norm(), 1e-14);
}

TEST(SqueezedFockState, Normalized) {
  EXPECT_NEAR(squeezed_fock_state(2, {0.5, 0.0}, 256).norm(), 1.0, 1e-8);
  EXPECT_NEAR(squeezed_fock_state(10, std::polar(0.7, 0.4), 256).norm(), 1.0, 1e-8);
}

TEST(SqueezedFockState, GuardsTruncation) {
  EXPECT_THROW(squeezed_fock_state(16, {0.5, 0.0}, 64), truncation_too_small);
}

TEST(BraidingResidual, TrivialCases) {
  EXPECT_LT(braiding_residual({0.0, 0.0}, {0.7136, 0.0}, 64), 1e-13);
  EXPECT_LT(braiding_residual({2.0, 0.0}, {0.0, 0.0}, 64), 1e-13);
}

TEST(BraidingResidual, ReferencePoint) {
  EXPECT_LT(braiding_residual({2.0, 0.0}, {0.7136, 0.0}, 256), 1e-8);
}

TEST(BraidingResidual, ComplexPhases) {
  EXPECT_LT(braiding_residual(std::polar(1.5, 0.3), std::polar(0.5, -2.0), 128), 1e-8);
}

TEST(SqueezeInverse, RecoversLocalizedStates) {
  const std::size_t dim = 128;
  const cplx zeta = std::polar(0.6, 0.9);
  const auto s = squeeze_operator(zeta, dim);
  const auto s_inv = squeeze_operator(-zeta, dim);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    StateVector v{Eigen::VectorXcd::Zero(dim)};
    for (int n = 0; n < 12; ++n) {
      v.amp(n) = cplx{g(rng), g(rng)};
    }
    v.amp /= v.norm();
    ASSERT_LT(std::abs(v.amp(dim / 2)), 1e-12);
    const StateVector back = s_inv * (s * v);
    EXPECT_LT((back.amp - v.amp).head(dim / 2 + 1).norm(), 1e-8);
  }
}

TEST(MatrixPmf, MatchesClosedFormAtReferencePoint) {
  const ModeParams p = ModeParams::phase_matched(10.0, 0.7136);
  const Eigen::VectorXd mat = matrix_pmf(p.alpha(), p.zeta(), 256);
  const PhotonDistribution dist = squeezed_coherent_pmf(p);
  for (std::size_t n = 0; n <= 100; ++n) {
    EXPECT_NEAR(mat(n), dist[n], 1e-8) << n;
  }
}

TEST(MatrixPmf, MatchesClosedFormOffPhaseMatching) {
  const ModeParams p{3.0, 0.4, 0.8, -1.9};
  const Eigen::VectorXd mat = matrix_pmf(p.alpha(), p.zeta(), 256);
  const PhotonDistribution dist = squeezed_coherent_pmf(p);
  for (std::size_t n = 0; n <= 100; ++n) {
    EXPECT_NEAR(mat(n), dist[n], 1e-8) << n;
  }
}
