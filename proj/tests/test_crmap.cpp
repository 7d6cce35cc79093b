#include <cmath>
#include <numbers>

#include "test_util.hpp"

using namespace crpoly;

namespace {

const double h = std::sqrt(2.0) / 2.0;
const complex I(0.0, 1.0);

}  // namespace

TEST(Basis, DegreeTwoIsOne) {
  const BasisMatrix b = build_basis(2);
  ASSERT_EQ(b.entries().rows(), 1);
  EXPECT_EQ(b.entries()(0, 0), complex(1.0));
}

TEST(Basis, MatchesDisplayedX5) {
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  want(0, 0) = 1.0, want(0, 3) = I;
  want(1, 1) = 1.0, want(1, 2) = I;
  want(2, 1) = 1.0, want(2, 2) = -I;
  want(3, 0) = 1.0, want(3, 3) = -I;
  want *= h;
  EXPECT_EQ((build_basis(5).entries() - want).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Basis, MatchesDisplayedX6) {
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(5, 5);
  want(0, 0) = 1.0, want(0, 4) = I;
  want(1, 1) = 1.0, want(1, 3) = I;
  want(2, 2) = std::sqrt(2.0);
  want(3, 1) = 1.0, want(3, 3) = -I;
  want(4, 0) = 1.0, want(4, 4) = -I;
  want *= h;
  EXPECT_LE((build_basis(6).entries() - want).cwiseAbs().maxCoeff(), 4e-16);
}

TEST(Basis, UnitaryWithUnitDeterminant) {
  for (int n = 2; n <= 16; ++n)
    for (const complex omega : {complex(1.0), I, std::polar(1.0, 2.7)}) {
      const BasisMatrix b = build_basis(n, omega);
      EXPECT_LE(std::abs(std::abs(b.entries().determinant()) - 1.0), 1e-10) << n;
      EXPECT_LT(unitarity_residual(b), 1e-12) << n;
      EXPECT_LE((b.inverse() * b.entries() - Eigen::MatrixXcd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Basis, RejectsBadDegree) {
  EXPECT_THROW(build_basis(1), invalid_argument);
  EXPECT_THROW(build_basis(0), invalid_argument);
}

TEST(RealToCr, ZeroGivesXCubedPlusOne) {
  const CRCoefficients c = real_to_cr(RealCoeffVector::zero(3), build_basis(3));
  EXPECT_EQ(c.coeffs().cwiseAbs().maxCoeff(), 0.0);
  const Eigen::VectorXcd full = c.full();
  ASSERT_EQ(full.size(), 3);
  EXPECT_EQ(full[2], complex(1.0));
}

TEST(RealToCr, VertexOfW3) {
  Eigen::VectorXd a(2);
  a << 3.0 * std::sqrt(2.0), 0.0;
  const CRCoefficients c = real_to_cr(RealCoeffVector(3, a), build_basis(3));
  EXPECT_NEAR(std::abs(c.coeffs()[0] - 3.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(c.coeffs()[1] - 3.0), 0.0, 1e-14);
}

TEST(CrToReal, InverseOfVertex) {
  Eigen::VectorXcd c(2);
  c << 3.0, 3.0;
  const RealCoeffVector a = cr_to_real(c, build_basis(3));
  EXPECT_NEAR(a[0], 3.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(a[1], 0.0, 1e-14);
}

TEST(CrToReal, ZeroMapsToZero) {
  for (int n = 2; n <= 8; ++n) {
    const RealCoeffVector a = cr_to_real(Eigen::VectorXcd::Zero(n - 1), build_basis(n));
    EXPECT_EQ(a.coords().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(CrToReal, RejectsNonCr) {
  Eigen::VectorXcd c(2);
  c << complex(1.0, 2.0), complex(1.0, 2.0);  // c_2 should be conj(c_1)
  EXPECT_THROW(cr_to_real(c, build_basis(3)), not_cr_error);
  EXPECT_THROW(CRCoefficients(3, 1.0, c), not_cr_error);
}

TEST(CrToReal, RejectsDimensionMismatch) {
  EXPECT_THROW(cr_to_real(Eigen::VectorXcd::Zero(3), build_basis(3)), invalid_argument);
  EXPECT_THROW(RealCoeffVector(3, Eigen::VectorXd::Zero(4)), invalid_argument);
}

TEST(RealCoeffVector, RejectsNonFinite) {
  Eigen::VectorXd a(2);
  a << 1.0, std::nan("");
  EXPECT_THROW(RealCoeffVector(3, a), invalid_argument);
}

TEST(RoundTrip, RandomPoints) {
  rng_stream rng(11, 0);
  for (int n = 3; n <= 10; ++n)
    for (const complex omega : {complex(1.0), std::polar(1.0, 1.3)}) {
      const BasisMatrix b = build_basis(n, omega);
      for (int i = 0; i < 100; ++i) {
        const RealCoeffVector a = test::random_coords(n, rng);
        const CRCoefficients c = real_to_cr(a, b);
        EXPECT_LE(cr_violation(c.coeffs(), omega), 1e-12);
        EXPECT_LE((cr_to_real(c, b).coords() - a.coords()).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
}

TEST(NormPreservation, Examples) {
  Eigen::VectorXd a(2);
  a << 3.0 * std::sqrt(2.0), 0.0;
  EXPECT_LE(norm_preservation_check(RealCoeffVector(3, a), build_basis(3)), 1e-14);
  EXPECT_EQ(norm_preservation_check(RealCoeffVector::zero(3), build_basis(3)), 0.0);
}

TEST(NormPreservation, RandomPoints) {
  rng_stream rng(12, 0);
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 11);
    EXPECT_LT(norm_preservation_check(test::random_coords(n, rng), build_basis(n, std::polar(1.0, rng.angle()))),
              1e-10);
  }
}

TEST(OmegaBasis, CoefficientsSatisfyOmegaRelation) {
  rng_stream rng(13, 0);
  for (int n = 2; n <= 9; ++n) {
    const complex omega = std::polar(1.0, rng.angle());
    const CRCoefficients c = real_to_cr(test::random_coords(n, rng), build_basis(n, omega));
    const Eigen::VectorXcd full = c.full();
    for (int k = 1; k < n; ++k) EXPECT_LE(std::abs(full[n - k - 1] - omega * std::conj(full[k - 1])), 1e-12);
  }
}
