#include <cmath>
#include <numbers>

#include "test_util.hpp"

using namespace crpoly;

TEST(Jacobian, DegreeTwoExample) {
  EXPECT_NEAR(jacobian_abs(std::vector<double>{std::numbers::pi / 2}), 2.0, 1e-15);
  // N = 2: xi_2 = 1/xi_1, so |xi_1 - xi_2| = 2 |sin theta|
  for (double t : {0.3, 1.0, 2.5, 4.0}) EXPECT_NEAR(jacobian_abs(std::vector<double>{t}), 2.0 * std::abs(std::sin(t)), 1e-14);
}

TEST(Jacobian, CoincidentAnglesGiveZero) {
  EXPECT_EQ(jacobian_abs(std::vector<double>{1.1, 1.1}), 0.0);
}

TEST(Jacobian, IndependentOfOmegaAfterRotation) {
  // multiplying every root by omega^{1/N} turns a CR root vector into an
  // omega-CR one without changing any |xi_n - xi_m|
  rng_stream rng(51, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> t(n - 1);
    for (double& x : t) x = rng.angle();
    const double alpha = rng.angle();
    std::vector<double> rotated = t;
    for (double& x : rotated) x += alpha / n;
    const double j1 = jacobian_abs(t), jw = jacobian_abs(rotated, std::polar(1.0, alpha));
    EXPECT_LE(std::abs(jw - j1), 1e-10 * std::max(1.0, j1));
  }
}

TEST(Jacobian, SameAnglesDifferentOmegaDiffer) {
  // with the free angles held fixed the forced root moves with omega
  const std::vector<double> t{0.3, 1.9};
  EXPECT_GT(std::abs(jacobian_abs(t, std::polar(1.0, 2.0)) - jacobian_abs(t)), 0.1);
}

TEST(Jacobian, OmegaAverageMatches) {
  // integrated over the free angles the omega dependence disappears
  const int grid = 256;
  const double h = 2.0 * std::numbers::pi / grid;
  for (double alpha : {0.0, 1.0, 2.5}) {
    double sum = 0.0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) sum += jacobian_abs(std::vector<double>{i * h, j * h}, std::polar(1.0, alpha));
    EXPECT_NEAR(sum * h * h / 6.0, 4.0 * std::numbers::pi, 2e-3) << alpha;
  }
}

TEST(Jacobian, PermutationAndRotationInvariant) {
  rng_stream rng(52, 0);
  for (int n = 3; n <= 8; ++n) {
    std::vector<double> t(n - 1);
    for (double& x : t) x = rng.angle();
    const double j = jacobian_abs(t);
    std::vector<double> p(t.rbegin(), t.rend());
    EXPECT_NEAR(jacobian_abs(p), j, 1e-10);
    const double s = rng.angle();
    std::vector<double> r = t;
    for (double& x : r) x += s;
    // rotating every root by s, the forced one included, changes omega by e^{iNs}
    std::vector<complex> all = RootVector::from_angles(t).roots();
    for (complex& z : all) z *= std::polar(1.0, s);
    const RootVector rotated(all, std::pow(std::polar(1.0, s), n));
    EXPECT_NEAR(vandermonde_abs(rotated.roots()), j, 1e-10);
    EXPECT_NEAR(jacobian_abs(std::span<const double>(r), rotated.omega()), j, 1e-10);
  }
}

TEST(Jacobian, LogFormAgrees) {
  rng_stream rng(53, 0);
  for (int n = 3; n <= 30; n += 3) {
    std::vector<double> t(n - 1);
    for (double& x : t) x = rng.angle();
    EXPECT_NEAR(std::exp(log_jacobian_abs(t)), jacobian_abs(t), 1e-9 * jacobian_abs(t));
  }
}

TEST(Jacobian, FiniteDifferenceAgrees) {
  rng_stream rng(54, 0);
  for (int n = 3; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> t = test::separated_angles(n, rng, 0.05);
      EXPECT_LT(jacobian_fd_check(t), 1e-6) << n;
      EXPECT_LT(jacobian_fd_check(t, std::polar(1.0, rng.angle())), 1e-6) << n;
    }
}

TEST(Jacobian, FiniteDifferenceDegreeTwo) {
  // a_1(theta) = 2 cos theta up to sign, so |da_1/dtheta| = 2 |sin theta|
  for (double t : {0.4, 1.2, 2.0, 5.0}) {
    const BasisMatrix b = build_basis(2);
    const double h = 1e-6;
    const double fd = (embed_angles(std::vector<double>{t + h}, b)[0] - embed_angles(std::vector<double>{t - h}, b)[0]) / (2 * h);
    EXPECT_NEAR(std::abs(fd), 2.0 * std::abs(std::sin(t)), 1e-8);
    EXPECT_LT(jacobian_fd_check(std::vector<double>{t}), 1e-6);
  }
}

TEST(Jacobian, FiniteDifferenceNearSingular) {
  const std::vector<double> close{0.5, 0.5 + 5e-5};
  EXPECT_THROW(jacobian_fd_check(close), numeric_failure);
  // the relative error grows as two roots approach
  const double far = jacobian_fd_check(std::vector<double>{0.5, 0.5 + 0.5});
  const double near = jacobian_fd_check(std::vector<double>{0.5, 0.5 + 3e-3});
  EXPECT_GT(near, far);
}

TEST(ClosedForm, SmallDegrees) {
  EXPECT_NEAR(volume_closed_form(2).value, 4.0, 4e-12);
  EXPECT_NEAR(volume_closed_form(3).value, 4.0 * std::numbers::pi, 4.0 * std::numbers::pi * 1e-12);
  EXPECT_NEAR(volume_closed_form(4).value, 32.0 * std::numbers::pi / 3.0, 1e-12 * 32.0 * std::numbers::pi / 3.0);
  EXPECT_EQ(volume_closed_form(4).std_error, 0.0);
  EXPECT_EQ(volume_closed_form(4).method, VolumeMethod::ClosedForm);
  EXPECT_THROW(volume_closed_form(1), invalid_argument);
}

TEST(ClosedForm, BallOfRadiusTwo) {
  // V_d(2) = 2^d pi^{d/2} / Gamma(d/2 + 1); recurrence V_d = (2 pi r^2 / d) V_{d-2}
  for (int n = 4; n <= 20; ++n) {
    const double d = n - 1;
    EXPECT_NEAR(volume_closed_form(n).value / volume_closed_form(n - 2).value, 8.0 * std::numbers::pi / d, 1e-12);
  }
}

TEST(Welford, MergeMatchesSinglePass) {
  rng_stream rng(55, 0);
  Welford all, a, b;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-3, 7);
    all.push(x);
    (i < 377 ? a : b).push(x);
  }
  a.merge(b);
  EXPECT_EQ(a.count, all.count);
  EXPECT_NEAR(a.mean, all.mean, 1e-13);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-11);
}

TEST(McJacobian, DegreeTwoWithinThreeSigma) {
  const VolumeEstimate e = volume_mc_jacobian(2, 100000, 3);
  EXPECT_LE(std::abs(e.value - 4.0), 3.0 * e.std_error);
  EXPECT_GT(e.std_error, 0.0);
}

TEST(McJacobian, DegreeThreeWithinThreeSigma) {
  const VolumeEstimate e = volume_mc_jacobian(3, 1000000, 4, 2);
  EXPECT_LE(std::abs(e.value - 4.0 * std::numbers::pi), 3.0 * e.std_error);
  EXPECT_LT(e.std_error / e.value, 0.01);
  EXPECT_EQ(e.samples, 1000000);
  EXPECT_EQ(e.method, VolumeMethod::MCJacobian);
}

TEST(McJacobian, SingleSampleGolden) {
  const std::vector<double> want = test::read_golden("mc_jacobian_n3_seed7_samples1.txt");
  ASSERT_EQ(want.size(), 1u);
  EXPECT_NEAR(volume_mc_jacobian(3, 1, 7).value, want[0], 1e-13);
}

TEST(McJacobian, DeterministicForSeedAndStreams) {
  const VolumeEstimate a = volume_mc_jacobian(4, 20000, 9, 3), b = volume_mc_jacobian(4, 20000, 9, 3);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.streams, 3u);
  EXPECT_NE(volume_mc_jacobian(4, 20000, 10, 3).value, a.value);
}

TEST(McHit, DegreeTwoIsExact) {
  const VolumeEstimate e = volume_mc_hit(2, 10000, 5);
  EXPECT_EQ(e.hit_fraction, 1.0);
  EXPECT_NEAR(e.value, 4.0, 1e-12);
}

TEST(McHit, DegreeThreeFraction) {
  const VolumeEstimate e = volume_mc_hit(3, 100000, 6, 2);
  const double want = 4.0 * std::numbers::pi / 72.0;
  const double sigma = std::sqrt(want * (1 - want) / 100000.0);
  EXPECT_LE(std::abs(e.hit_fraction - want), 3.0 * sigma);
}

TEST(McHit, AgreesWithJacobianEstimator) {
  for (int n : {3, 4}) {
    const VolumeEstimate hit = volume_mc_hit(n, 50000, 7, 2), jac = volume_mc_jacobian(n, 200000, 7, 2);
    EXPECT_LE(std::abs(hit.value - jac.value), 3.0 * std::hypot(hit.std_error, jac.std_error)) << n;
  }
}

TEST(Boundary, DeltoidPointwise) {
  const BoundaryCurve c = boundary_curve(3, 720);
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double t = c.phis[i];
    EXPECT_NEAR(c.points[i][0], -2 * r2 * std::cos(t) + r2 * std::cos(2 * t), 1e-9);
    EXPECT_NEAR(c.points[i][1], -2 * r2 * std::sin(t) - r2 * std::sin(2 * t), 1e-9);
  }
}

TEST(Boundary, CuspsAtVertices) {
  const BoundaryCurve c = boundary_curve(3, 6);  // phi = k pi / 3
  for (int k : {1, 3, 5}) {
    double best = 1e9;
    for (int n = 1; n <= 3; ++n) best = std::min(best, (c.points[k].coords() - vertex(3, n).coords()).norm());
    EXPECT_LT(best, 1e-9) << k;
  }
}

TEST(Boundary, AreaAndMembership) {
  const BoundaryCurve c3 = boundary_curve(3, 10000);
  EXPECT_NEAR(std::abs(polygon_area(c3.projection)) / (4.0 * std::numbers::pi), 1.0, 1e-3);
  for (const RealCoeffVector& a : c3.points) EXPECT_EQ(classify(a).status, Status::Boundary);

  const BoundaryCurve c4 = boundary_curve(4, 2000);
  for (const RealCoeffVector& a : c4.points) EXPECT_EQ(classify(a).status, Status::Boundary);
  EXPECT_NEAR(std::abs(polygon_area(c4.projection)) / (12.0 * std::numbers::pi), 1.0, 1e-3);
}

TEST(Boundary, RejectsUnsupportedDegree) {
  EXPECT_THROW(boundary_curve(5, 100), invalid_argument);
  EXPECT_THROW(boundary_curve(3, 2), invalid_argument);
}

TEST(PolygonArea, UnitSquare) {
  EXPECT_EQ(polygon_area({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 1.0);
  EXPECT_EQ(polygon_area({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), -1.0);
}
