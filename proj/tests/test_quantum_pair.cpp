#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <qgd/quantum_pair.hpp>
#include <qgd/rng.hpp>

#include "oracles.hpp"

using namespace qgd;

namespace {

DensityOperator random_state(int n, CounterRng& rng) {
  const Matrix g = random_ginibre(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::make(rho, WeightedTrace::uniform(n));
}

DensityOperator point_state(int n, int s) {
  Matrix rho = Matrix::Zero(n, n);
  rho(s, s) = Complex(1.0, 0.0);
  return DensityOperator::make(rho, WeightedTrace::uniform(n));
}

}  // namespace

TEST_CASE("multiplicative unitary") {
  SUBCASE("trivial group gives the 1x1 identity") {
    const Matrix w = multiplicative_unitary(build_cyclic(1));
    CHECK(w.rows() == 1);
    CHECK(std::abs(w(0, 0) - Complex(1.0, 0.0)) == 0.0);
  }

  SUBCASE("cyclic(2) swaps exactly the (1,0) and (1,1) coordinates") {
    const GroupTable g = build_cyclic(2);
    const Matrix w = multiplicative_unitary(g);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = Complex(1.0, 0.0);  // (0,b) fixed
    expected(3, 2) = expected(2, 3) = Complex(1.0, 0.0);  // (1,0) <-> (1,1)
    CHECK((w - expected).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("permutation form matches the dense matrix") {
    const GroupTable g = build_symmetric(3);
    const MultiplicativeUnitary w = multiplicative_unitary_permutation(g);
    const Matrix dense = multiplicative_unitary(g);
    CHECK((w.to_matrix() - dense).cwiseAbs().maxCoeff() == 0.0);
    CHECK((dense * dense.adjoint() - Matrix::Identity(36, 36)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("pentagon and comultiplication identities hold exactly") {
    for (const char* spec : {"Z1", "Z2", "Z6", "K4", "S3", "D4", "Q8", "S4"}) {
      CAPTURE(spec);
      const GroupTable g = build_group(spec);
      CHECK(pentagon_check(g));
      CHECK(comultiplication_check(g));
    }
  }

  SUBCASE("conjugation implements composition with multiplication") {
    // W^*(1 (x) M_f)W = M_{f o mult} checked densely against the index form.
    const GroupTable g = build_cyclic(3);
    const int n = g.order;
    const Matrix w = multiplicative_unitary(g);
    for (int u = 0; u < n; ++u) {
      Matrix inner = Matrix::Zero(n * n, n * n);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (t == u) inner(s * n + t, s * n + t) = Complex(1.0, 0.0);
      const Matrix conjugated = w.adjoint() * inner * w;
      Matrix expected = Matrix::Zero(n * n, n * n);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (g.mul(s, t) == u) expected(s * n + t, s * n + t) = Complex(1.0, 0.0);
      CHECK((conjugated - expected).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("diagonal expectation") {
  const QuantumPair pair = QuantumPair::make(build_cyclic(2), 1);

  SUBCASE("fixed points") {
    const auto p = point_state(2, 1);
    CHECK((expect_diagonal(pair, p).matrix - p.matrix).cwiseAbs().maxCoeff() == 0.0);
    const auto mixed =
        DensityOperator::make(Matrix::Identity(2, 2) / 2.0, WeightedTrace::uniform(2));
    CHECK((expect_diagonal(pair, mixed).matrix - mixed.matrix).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("uniform superposition pinches to the flat distribution") {
    Vector v(2);
    v << Complex(1.0, 0.0), Complex(1.0, 0.0);
    v /= std::sqrt(2.0);
    const auto rho = DensityOperator::make(v * v.adjoint(), WeightedTrace::uniform(2));
    const Matrix d = expect_diagonal(pair, rho).matrix;
    CHECK(d(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(d(0, 1)) == 0.0);
  }

  SUBCASE("idempotent, trace preserving, diagonal bimodule property") {
    const QuantumPair s3 = QuantumPair::make(build_symmetric(3), 1);
    CounterRng rng(21);
    const auto rho = random_state(6, rng);
    const auto once = expect_diagonal(s3, rho);
    const auto twice = expect_diagonal(s3, once);
    CHECK((once.matrix - twice.matrix).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(once.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    Matrix a = Matrix::Zero(6, 6);
    for (int s = 0; s < 6; ++s) a(s, s) = std::exp(Complex(0.0, 0.7 * s));
    const auto conjugated =
        DensityOperator::make(a * rho.matrix * a.adjoint(), WeightedTrace::uniform(6));
    const Matrix lhs = expect_diagonal(s3, conjugated).matrix;
    const Matrix rhs = a * expect_diagonal(s3, rho).matrix * a.adjoint();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dual expectation and the correlation matrix") {
  const QuantumPair pair = QuantumPair::make(build_symmetric(3), 2);
  const int n = 6;
  CounterRng rng(31);

  SUBCASE("point states dualize to the maximally mixed state") {
    for (int s = 0; s < n; ++s) {
      const auto rho = point_state(n, s);
      CHECK((expect_dual(pair, rho).matrix - Matrix::Identity(n, n) / double(n))
                .cwiseAbs()
                .maxCoeff() < 1e-13);
      CHECK((correlation_matrix(pair, rho) - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <
            1e-13);
    }
  }

  SUBCASE("maximally mixed state is a fixed point") {
    const auto mixed = DensityOperator::make(Matrix::Identity(n, n) / double(n),
                                             WeightedTrace::uniform(n));
    CHECK((expect_dual(pair, mixed).matrix - mixed.matrix).cwiseAbs().maxCoeff() < 1e-13);
  }

  SUBCASE("uniform superposition correlates completely") {
    const Vector v = Vector::Constant(n, Complex(1.0, 0.0) / std::sqrt(double(n)));
    const auto rho = DensityOperator::make(v * v.adjoint(), WeightedTrace::uniform(n));
    const Matrix c = correlation_matrix(pair, rho);
    CHECK((c - Matrix::Constant(n, n, Complex(1.0, 0.0))).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("correlation matrices are PSD with unit diagonal") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_state(n, rng);
      const Matrix c = correlation_matrix(pair, rho);
      for (int s = 0; s < n; ++s) CHECK(std::abs(c(s, s) - Complex(1.0, 0.0)) < 1e-12);
      const HermitianSpectrum spec = eigh(c);
      CHECK(spec.eigenvalues(0) > -1e-10);
    }
  }

  SUBCASE("spectrum matches the correlation matrix spectrum") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_state(n, rng);
      const auto dual_spec = eigh(expect_dual(pair, rho).matrix);
      const auto corr_spec =
          testing::jacobi_eigenvalues(correlation_matrix(pair, rho) / double(n));
      for (int i = 0; i < n; ++i)
        CHECK(std::abs(dual_spec.eigenvalues(i) - corr_spec[static_cast<std::size_t>(i)]) <
              1e-9);
    }
  }

  SUBCASE("idempotence and translation covariance") {
    const auto rho = random_state(n, rng);
    const Matrix once = expect_dual(pair, rho).matrix;
    const Matrix twice = project_translation_algebra(pair, once);
    CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-12);

    const Matrix lg = regular_representation(pair.group, 3);
    const auto moved =
        DensityOperator::make(lg * rho.matrix * lg.adjoint(), WeightedTrace::uniform(n));
    const Matrix lhs = expect_dual(pair, moved).matrix;
    const Matrix rhs = lg * expect_dual(pair, rho).matrix * lg.adjoint();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("translation projection on simple inputs") {
    const Matrix lam = regular_representation(pair.group, 2);
    CHECK((project_translation_algebra(pair, lam) - lam).cwiseAbs().maxCoeff() < 1e-13);
    Matrix e00 = Matrix::Zero(n, n);
    e00(0, 0) = Complex(1.0, 0.0);
    CHECK((project_translation_algebra(pair, e00) - Matrix::Identity(n, n) / double(n))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("convolution channel and its Kraus decomposition") {
  const QuantumPair pair = QuantumPair::make(build_symmetric(3), 3);
  const int n = 6;
  CounterRng rng(41);

  SUBCASE("unitality scaled by the functional mass") {
    Vector xi(n);
    for (int s = 0; s < n; ++s) xi(s) = rng.complex_gaussian();
    const Matrix out = theta_channel(pair, xi, Matrix::Identity(n, n));
    CHECK((out - xi.squaredNorm() * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("point mass at the identity gives the identity channel") {
    Vector delta = Vector::Zero(n);
    delta(pair.group.identity) = Complex(1.0, 0.0);
    const Matrix t = random_hermitian(n, rng);
    CHECK((theta_channel(pair, delta, t) - t).cwiseAbs().maxCoeff() < 1e-13);

    const auto kraus = kraus_decomposition(pair, delta);
    for (int k = 0; k < n; ++k) {
      if (k == pair.group.identity)
        CHECK((kraus[static_cast<std::size_t>(k)] - Matrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
      else
        CHECK(kraus[static_cast<std::size_t>(k)].cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("complete positivity on a small group") {
    const QuantumPair z3 = QuantumPair::make(build_cyclic(3), 1);
    for (int trial = 0; trial < 10; ++trial) {
      Vector xi(3);
      for (int s = 0; s < 3; ++s) xi(s) = rng.complex_gaussian();
      const Matrix g = random_ginibre(3, 3, rng);
      const Matrix out = theta_channel(z3, xi, g.adjoint() * g);
      CHECK(eigh(out).eigenvalues(0) > -1e-10);
    }
  }

  SUBCASE("completeness, membership and channel agreement") {
    for (int trial = 0; trial < 5; ++trial) {
      Vector xi(n);
      for (int s = 0; s < n; ++s) xi(s) = rng.complex_gaussian();
      const auto kraus = kraus_decomposition(pair, xi);
      REQUIRE(kraus.size() == static_cast<std::size_t>(n));

      Matrix left = Matrix::Zero(n, n), right = Matrix::Zero(n, n);
      for (const Matrix& k : kraus) {
        left += k.adjoint() * k;
        right += k * k.adjoint();
        CHECK(translation_membership_deviation(pair, k) < 1e-9);
      }
      const Matrix expected = xi.squaredNorm() * Matrix::Identity(n, n);
      CHECK((left - expected).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((right - expected).cwiseAbs().maxCoeff() < 1e-9);

      for (int probe = 0; probe < 20; ++probe) {
        const Matrix t = random_hermitian(n, rng);
        Matrix through_kraus = Matrix::Zero(n, n);
        for (const Matrix& k : kraus) through_kraus += k.adjoint() * t * k;
        CHECK((through_kraus - theta_channel(pair, xi, t)).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }

  SUBCASE("membership deviation flags non-members") {
    Matrix e00 = Matrix::Zero(n, n);
    e00(0, 0) = Complex(1.0, 0.0);
    CHECK(translation_membership_deviation(pair, e00) > 0.01);
  }

  SUBCASE("modular conjugation exchanges the Kraus conventions") {
    Vector xi(n);
    for (int s = 0; s < n; ++s) xi(s) = rng.complex_gaussian();
    const auto kraus = kraus_decomposition(pair, xi);
    const auto flipped = kraus_decomposition(pair, modular_conjugation(pair.group, xi));
    for (int k = 0; k < n; ++k) {
      const Matrix lhs = flipped[static_cast<std::size_t>(pair.group.inv(k))];
      const Matrix rhs = kraus[static_cast<std::size_t>(k)].adjoint();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("complementarity of the two subalgebras") {
  SUBCASE("cyclic(2) hand check") {
    const QuantumPair pair = QuantumPair::make(build_cyclic(2), 1);
    const Matrix lam = regular_representation(pair.group, 1);
    const Matrix q = 0.5 * (Matrix::Identity(2, 2) + lam);
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = Complex(1.0, 0.0);
    const double tau_pq = (p * q).trace().real() / 2.0;
    CHECK(tau_pq == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(tau_pq == doctest::Approx((p.trace().real() / 2.0) * (q.trace().real() / 2.0))
                        .epsilon(1e-14));
  }

  SUBCASE("all four conditions on the built-in families") {
    for (const char* spec : {"Z2", "Z5", "K4", "S3", "Q8"}) {
      CAPTURE(spec);
      const QuantumPair pair = QuantumPair::make(build_group(spec), 9);
      const ComplementarityReport report = complementarity_check(pair);
      CHECK(report.projection_pairing <= 1e-10);
      CHECK(report.orthogonality <= 1e-10);
      CHECK(report.trace_factorization <= 1e-10);
      CHECK(report.scalar_expectation <= 1e-10);
      CHECK(report.pass());
    }
  }

  SUBCASE("dual expectation of a diagonal is its mean") {
    const QuantumPair pair = QuantumPair::make(build_dihedral(4), 9);
    const int n = 8;
    Matrix a = Matrix::Zero(n, n);
    double mean = 0.0;
    for (int s = 0; s < n; ++s) {
      a(s, s) = Complex(std::cos(1.0 + s), 0.0);
      mean += std::cos(1.0 + s) / n;
    }
    const Matrix projected = project_translation_algebra(pair, a);
    CHECK((projected - mean * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("the two algebras span everything") {
  CHECK(span_check(QuantumPair::make(build_cyclic(1), 1)) == 1);
  CHECK(span_check(QuantumPair::make(build_cyclic(4), 1)) == 16);
  CHECK(span_check(QuantumPair::make(build_symmetric(3), 1)) == 36);
}
