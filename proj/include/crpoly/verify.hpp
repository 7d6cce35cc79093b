#pragma once

// Invariant suite behind `crpoly verify`: basis properties, vertices, the
// dihedral action, Parseval and the vertex-distance lemma for one degree.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "crpoly/crmap.hpp"
#include "crpoly/rng.hpp"
#include "crpoly/symmetry.hpp"
#include "crpoly/wn_set.hpp"

namespace crpoly {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Reported but not counted towards the suite verdict.
  bool informational = false;
};

struct VerifyOptions {
  int pairs = 100;
  int random_vectors = 100;
  int parseval_points = 0;  // 0: 4N + 1
};

namespace detail {

inline CheckResult check_le(std::string name, double residual, double threshold) {
  return {std::move(name), residual, threshold, residual <= threshold, false};
}

inline double relative(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

inline RealCoeffVector sample_point(int degree, rng_stream& rng) {
  return point_from_roots(sample_root_vector(degree, rng));
}

}  // namespace detail

inline bool all_passed(const std::vector<CheckResult>& rows) {
  for (const CheckResult& r : rows)
    if (!r.informational && !r.pass) return false;
  return true;
}

/// Basis checks: |det| = 1, unitarity, CR symmetry of X a, round trip and
/// norm preservation on random real vectors.
inline std::vector<CheckResult> verify_crmap(int degree, rng_stream& rng, const VerifyOptions& opt = {}) {
  std::vector<CheckResult> rows;
  double det_res = 0.0, unit_res = 0.0;
  for (const complex omega : {complex(1.0), complex(0.0, 1.0), std::polar(1.0, 2.7)}) {
    const BasisMatrix b = build_basis(degree, omega);
    det_res = std::max(det_res, std::abs(std::abs(b.entries().determinant()) - 1.0));
    unit_res = std::max(unit_res, unitarity_residual(b));
  }
  rows.push_back(detail::check_le("basis |det| = 1", det_res, 1e-10));
  rows.push_back(detail::check_le("basis unitarity", unit_res, 1e-12));

  const BasisMatrix basis = build_basis(degree);
  double cr = 0.0, round_trip = 0.0, norm = 0.0;
  for (int i = 0; i < opt.random_vectors; ++i) {
    Eigen::VectorXd a(degree - 1);
    for (Eigen::Index k = 0; k < a.size(); ++k) a[k] = rng.uniform(-10.0, 10.0);
    const RealCoeffVector av(degree, a);
    const CRCoefficients c = real_to_cr(av, basis);
    cr = std::max(cr, cr_violation(c.coeffs(), c.omega()));
    round_trip = std::max(round_trip, (cr_to_real(c, basis).coords() - a).cwiseAbs().maxCoeff());
    norm = std::max(norm, norm_preservation_check(av, basis));
  }
  rows.push_back(detail::check_le("X a is conjugate reciprocal", cr, 1e-12));
  rows.push_back(detail::check_le("real -> complex -> real round trip", round_trip, 1e-12));
  rows.push_back(detail::check_le("||X a|| = ||a||", norm, 1e-10));
  return rows;
}

/// Vertices, dihedral action, isometry of R and C on sampled pairs,
/// Parseval, and the vertex-distance lemma.
inline std::vector<CheckResult> verify_symmetry(int degree, rng_stream& rng, const VerifyOptions& opt = {}) {
  std::vector<CheckResult> rows;
  const int n = degree;
  const double radius2 = circumradius_squared(n);
  const VertexSet vs = vertex_set(n);

  double norm_res = 0.0;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n - 1);
  for (const RealCoeffVector& v : vs.vertices) {
    norm_res = std::max(norm_res, std::abs(v.coords().squaredNorm() - radius2));
    sum += v.coords();
  }
  rows.push_back(detail::check_le("||v_n||^2 = C(2N,N) - 2", norm_res, 1e-8));
  rows.push_back(detail::check_le("sum of vertices = 0", sum.cwiseAbs().maxCoeff(), 1e-9));

  if (n >= 3) {
    const SpanDeterminant sd = vertex_span_determinant(n);
    rows.push_back(detail::check_le("vertex span determinant", std::abs(sd.direct - sd.formula) / sd.formula, 1e-6));
  }

  const IsometryMatrix r = action_R(n), c = action_C(n), r_inv = action_R(n, -1);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n - 1, n - 1);
  Eigen::MatrixXd rn = id;
  for (int k = 0; k < n; ++k) rn = r.matrix * rn;
  rows.push_back(detail::check_le("R orthogonal", r.orthogonality_residual(), 1e-10));
  rows.push_back(detail::check_le("C orthogonal", c.orthogonality_residual(), 1e-10));
  rows.push_back(detail::check_le("R^N = I", (rn - id).cwiseAbs().maxCoeff(), 1e-10));
  rows.push_back(detail::check_le("C^2 = I", (c.matrix * c.matrix - id).cwiseAbs().maxCoeff(), 1e-10));
  rows.push_back(detail::check_le("C R C = R^-1", (c.matrix * r.matrix * c.matrix - r_inv.matrix).cwiseAbs().maxCoeff(), 1e-10));

  double shift = 0.0;
  for (int k = 1; k <= n; ++k) {
    const Eigen::VectorXd moved = r.matrix * vs.vertices[k - 1].coords();
    shift = std::max(shift, (moved - vs.vertices[k % n].coords()).cwiseAbs().maxCoeff());
  }
  rows.push_back(detail::check_le("R v_n = v_{n+1}", shift, 1e-9));

  if (n >= 3) {
    const std::size_t group = dihedral_closure(n).size();
    rows.push_back({"dihedral closure has 2N elements", static_cast<double>(group), 2.0 * n,
                    group == static_cast<std::size_t>(2 * n), false});
  }

  std::vector<std::pair<RealCoeffVector, RealCoeffVector>> pairs;
  pairs.reserve(opt.pairs);
  for (int i = 0; i < opt.pairs; ++i) pairs.emplace_back(detail::sample_point(n, rng), detail::sample_point(n, rng));
  for (const IsometryMatrix* t : {&r, &c}) {
    const IsometryReport rep = verify_isometry(*t, pairs);
    rows.push_back(detail::check_le(t->word + " distance distortion", rep.max_distortion, 1e-10));
    rows.push_back(detail::check_le(t->word + " images stay in W_N (exterior count)", rep.exterior_images, 0.0));
  }

  const int q = opt.parseval_points > 0 ? opt.parseval_points : 4 * n + 1;
  double parseval = 0.0;
  for (const auto& [a, b] : pairs) {
    const double want = (a.coords() - b.coords()).squaredNorm();
    parseval = std::max(parseval, detail::relative(parseval_distance(a, b, q), want));
  }
  rows.push_back(detail::check_le("Parseval distance (relative)", parseval, 1e-9));

  double pair_res = 0.0;
  for (int m = 1; m <= n; ++m)
    for (int mp = 1; mp <= n; ++mp) {
      if (m == mp) continue;
      const int k = std::abs(mp - m);
      pair_res = std::max(pair_res, detail::relative(vertex_pair_distance_squared(n, m, mp),
                                                     vertex_pair_distance_squared(n, n, k)));
    }
  rows.push_back(detail::check_le("||v_m - v_m'|| depends on |m - m'| only (relative)", pair_res, 1e-8));

  if (n >= 3) {
    const double central = 2.0 * binomial(2 * n, n);
    double literal = 0.0, signed_route = 0.0;
    bool even_up = true, odd_down = true, separated = true;
    double prev_even = -1.0, prev_odd = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n - 1; ++k) {
      const VertexDistance d = vertex_distance_squared(n, k);
      literal = std::max(literal, std::abs(d.direct - d.formula) / d.direct);
      signed_route = std::max(signed_route, std::abs(d.direct - d.signed_formula) / d.direct);
      if (2 * k > n) continue;
      if (k % 2 == 0) {
        even_up = even_up && d.direct > prev_even;
        separated = separated && d.direct < central;
        prev_even = d.direct;
      } else {
        odd_down = odd_down && d.direct < prev_odd;
        separated = separated && d.direct > central;
        prev_odd = d.direct;
      }
    }
    rows.push_back(detail::check_le("vertex distance: direct vs sign-aware convolution", signed_route, 1e-6));
    CheckResult lit = detail::check_le("vertex distance: direct vs |f|*|f| convolution", literal, 1e-6);
    lit.informational = true;
    rows.push_back(lit);
    rows.push_back({"even-index distances increase", even_up ? 0.0 : 1.0, 0.0, even_up, false});
    rows.push_back({"odd-index distances decrease", odd_down ? 0.0 : 1.0, 0.0, odd_down, false});
    rows.push_back({"2 C(2N,N) separates the chains", separated ? 0.0 : 1.0, 0.0, separated, false});

    double asym = 0.0;
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
      const double t = std::numbers::pi * i / 101.0;
      const double v = convolution_ff(n, t);
      asym = std::max(asym, std::abs(v - convolution_ff(n, -t)) / std::max(1.0, v));
      decreasing = decreasing && v < prev;
      prev = v;
    }
    rows.push_back(detail::check_le("f*f(-t) = f*f(t) (relative)", asym, 1e-9));
    rows.push_back({"f*f strictly decreasing on (0, pi)", decreasing ? 0.0 : 1.0, 0.0, decreasing, false});
  }
  return rows;
}

/// Full suite for one degree, drawing samples from stream 0 of `seed`.
inline std::vector<CheckResult> verify_all(int degree, std::uint64_t seed, const VerifyOptions& opt = {}) {
  detail::require_degree(degree);
  rng_stream rng(seed, 0);
  std::vector<CheckResult> rows = verify_crmap(degree, rng, opt);
  std::vector<CheckResult> more = verify_symmetry(degree, rng, opt);
  rows.insert(rows.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  return rows;
}

}  // namespace crpoly
