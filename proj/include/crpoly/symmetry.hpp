#pragma once

// Vertices of W_N, the dihedral isometries R (rotate roots by zeta_N) and
// C (conjugate roots) as orthogonal matrices on R^{N-1}, and numerical
// checks of the distance identities they satisfy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "crpoly/crmap.hpp"
#include "crpoly/error.hpp"
#include "crpoly/polyroots.hpp"
#include "crpoly/wn_set.hpp"

namespace crpoly {

namespace detail {

/// zeta_N^k with the exponent reduced mod N first.
inline complex root_of_unity(int degree, long long k) {
  const long long r = ((k % degree) + degree) % degree;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / degree);
}

}  // namespace detail

/// v_n, the point of W_N for (x + zeta_N^n)^N. Indices are taken mod N.
inline RealCoeffVector vertex(int degree, int n) {
  detail::require_degree(degree);
  if (n < 1 || n > degree)
    throw invalid_argument("vertex index " + std::to_string(n) + " outside 1.." + std::to_string(degree));
  Eigen::VectorXcd c(degree - 1);
  for (int m = 1; m < degree; ++m)
    c[m - 1] = binomial(degree, m) * detail::root_of_unity(degree, static_cast<long long>(n) * m);
  return cr_to_real(c, build_basis(degree));
}

struct VertexSet {
  int degree;
  std::vector<RealCoeffVector> vertices;  // v_1 .. v_N
};

inline VertexSet vertex_set(int degree) {
  VertexSet vs{degree, {}};
  vs.vertices.reserve(degree);
  for (int n = 1; n <= degree; ++n) vs.vertices.push_back(vertex(degree, n));
  return vs;
}

/// |det| of the matrix with rows v_1..v_{N-1}, both directly and from
///   (prod_{n<=N/2} C(N,n)) (prod_{n<=(N-1)/2} C(N,n)) sqrt|disc((x^N-1)/(x-1))|.
struct SpanDeterminant {
  double direct;
  double formula;
};

inline SpanDeterminant vertex_span_determinant(int degree) {
  detail::require_degree(degree, 3);
  const int m = degree - 1;
  Eigen::MatrixXd u(m, m);
  for (int n = 1; n <= m; ++n) u.row(n - 1) = vertex(degree, n).coords().transpose();
  double prod = 1.0;
  for (int n = 1; n <= degree / 2; ++n) prod *= binomial(degree, n);
  for (int n = 1; n <= (degree - 1) / 2; ++n) prod *= binomial(degree, n);
  const MonicPolynomial cyclotomic_sum(std::vector<complex>(m, complex(1.0)));
  const double disc = std::abs(discriminant(cyclotomic_sum));
  return {std::abs(u.determinant()), prod * std::sqrt(disc)};
}

struct IsometryMatrix {
  enum class Kind { RPower, C, Composite };
  Kind kind;
  /// Exponent k for R^k, empty otherwise.
  int power = 0;
  /// Word in R and C, e.g. "CRC".
  std::string word;
  Eigen::MatrixXd matrix;

  double orthogonality_residual() const {
    const Eigen::Index m = matrix.rows();
    return (matrix.transpose() * matrix - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& a) const { return matrix * a; }
  RealCoeffVector apply(const RealCoeffVector& a) const { return {a.degree(), matrix * a.coords()}; }
};

namespace detail {

inline Eigen::MatrixXd realify(const Eigen::MatrixXcd& m, const char* what) {
  const double imag = m.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-10)
    throw numeric_failure(std::string(what) + " has imaginary residue " + std::to_string(imag));
  return m.real();
}

inline void require_orthogonal(const IsometryMatrix& t, const char* what) {
  const double r = t.orthogonality_residual();
  if (r > 1e-8)
    throw numeric_failure(std::string(what) + " is not orthogonal (residual " + std::to_string(r) + ")");
}

}  // namespace detail

/// R^k: c_n -> zeta_N^{kn} c_n, written in real coordinates as
/// X^{-1} D X.
inline IsometryMatrix action_R(int degree, int power = 1) {
  detail::require_degree(degree);
  const BasisMatrix basis = build_basis(degree);
  Eigen::VectorXcd d(degree - 1);
  for (int n = 1; n < degree; ++n) d[n - 1] = detail::root_of_unity(degree, static_cast<long long>(power) * n);
  const Eigen::MatrixXcd m = basis.inverse() * d.asDiagonal() * basis.entries();
  IsometryMatrix t{IsometryMatrix::Kind::RPower, power, power == 1 ? "R" : "R^" + std::to_string(power),
                   detail::realify(m, "R")};
  detail::require_orthogonal(t, "R");
  return t;
}

/// C: c_n -> conj(c_n), i.e. X^{-1} conj(X). In these coordinates it flips
/// the sign of the imaginary-block coordinates.
inline IsometryMatrix action_C(int degree) {
  detail::require_degree(degree);
  const BasisMatrix basis = build_basis(degree);
  const Eigen::MatrixXcd m = basis.inverse() * basis.entries().conjugate();
  IsometryMatrix t{IsometryMatrix::Kind::C, 0, "C", detail::realify(m, "C")};
  detail::require_orthogonal(t, "C");
  return t;
}

inline IsometryMatrix compose(const IsometryMatrix& a, const IsometryMatrix& b) {
  return {IsometryMatrix::Kind::Composite, 0, a.word + b.word, a.matrix * b.matrix};
}

/// Closure of {R, C} under multiplication; two matrices are the same
/// element when their operator-norm distance is at most `same_tol`.
inline std::vector<IsometryMatrix> dihedral_closure(int degree, double same_tol = 1e-6) {
  const IsometryMatrix r = action_R(degree), c = action_C(degree);
  const Eigen::Index m = degree - 1;
  std::vector<IsometryMatrix> group{
      {IsometryMatrix::Kind::Composite, 0, "I", Eigen::MatrixXd::Identity(m, m)}};
  auto known = [&](const Eigen::MatrixXd& x) {
    return std::any_of(group.begin(), group.end(), [&](const IsometryMatrix& g) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.matrix - x);
      return svd.singularValues()[0] <= same_tol;
    });
  };
  // Breadth-first over words; bounded so a broken generator cannot loop.
  for (std::size_t i = 0; i < group.size() && group.size() <= 4 * static_cast<std::size_t>(degree) + 4; ++i) {
    for (const IsometryMatrix* gen : {&r, &c}) {
      IsometryMatrix next = compose(group[i], *gen);
      if (next.word.size() > 1 && next.word[0] == 'I') next.word.erase(0, 1);
      if (!known(next.matrix)) group.push_back(std::move(next));
    }
  }
  return group;
}

struct IsometryReport {
  /// max | ||Ta - Tb|| - ||a - b|| |
  double max_distortion = 0.0;
  /// Images whose classify verdict was Exterior.
  int exterior_images = 0;
  int images_checked = 0;
};

/// Distance distortion of T over the given pairs; optionally classifies
/// every image as well.
inline IsometryReport verify_isometry(const IsometryMatrix& t,
                                      const std::vector<std::pair<RealCoeffVector, RealCoeffVector>>& pairs,
                                      bool check_images = true, const ToleranceBundle& tol = {}) {
  IsometryReport rep;
  for (const auto& [a, b] : pairs) {
    const Eigen::VectorXd ta = t.matrix * a.coords(), tb = t.matrix * b.coords();
    rep.max_distortion = std::max(rep.max_distortion, std::abs((ta - tb).norm() - (a.coords() - b.coords()).norm()));
    if (check_images) {
      for (const Eigen::VectorXd* img : {&ta, &tb}) {
        ++rep.images_checked;
        if (classify(RealCoeffVector(a.degree(), *img), tol).status == Status::Exterior) ++rep.exterior_images;
      }
    }
  }
  return rep;
}

/// (1/2pi) int_0^{2pi} |w_1(e^{it}) - w_2(e^{it})|^2 dt by the trapezoidal
/// rule on `points` equispaced nodes, exact once points > 2N. Equals
/// ||a1 - a2||^2.
inline double parseval_distance(const RealCoeffVector& a1, const RealCoeffVector& a2, int points) {
  require_same_degree(a1.degree(), a2.degree());
  const int n = a1.degree();
  if (points <= 2 * n)
    throw invalid_argument("quadrature needs more than " + std::to_string(2 * n) + " points, got " +
                           std::to_string(points));
  // The x^N and constant terms cancel in the difference.
  const Eigen::VectorXcd d = build_basis(n).entries() * (a1.coords() - a2.coords()).cast<complex>();
  double sum = 0.0;
  for (int k = 0; k < points; ++k) {
    const complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    complex v(0.0);
    for (int j = 0; j < n - 1; ++j) v = v * z + d[j];
    v *= z;  // lowest listed term is c_{N-1} x
    sum += std::norm(v);
  }
  return sum / points;
}

/// f(theta) = |1 + e^{i theta}|^N = (2 + 2 cos theta)^{N/2}
inline double vertex_profile(int degree, double theta) {
  return std::pow(std::max(0.0, 2.0 + 2.0 * std::cos(theta)), 0.5 * degree);
}

/// f*f(t) = (1/pi) int_{-pi}^{pi} f(theta) f(t - theta) dtheta, by adaptive
/// Gauss-Kronrod split at the kink of f(t - .).
inline double convolution_ff(int degree, double t) {
  detail::require_degree(degree);
  if (!(t >= -std::numbers::pi - 1e-12 && t <= std::numbers::pi + 1e-12))
    throw invalid_argument("convolution argument must lie in [-pi, pi]");
  constexpr double pi = std::numbers::pi;
  auto g = [&](double theta) { return vertex_profile(degree, theta) * vertex_profile(degree, t - theta); };
  const double kink = t > 0 ? t - pi : t + pi;
  std::vector<double> cuts{-pi, pi};
  if (kink > -pi && kink < pi) cuts.insert(cuts.begin() + 1, kink);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        g, cuts[i], cuts[i + 1], 12, 1e-11, &err, &l1);
    if (!std::isfinite(v) || err > 1e-9 * std::max(1.0, l1))
      throw numeric_failure("convolution quadrature did not converge (error " + std::to_string(err) + ")");
    total += v;
  }
  return total / pi;
}

namespace detail {

/// (1/pi) int_{-pi}^{pi} g(theta) g(theta - phi) dtheta, g(x) = (2 cos(x/2))^N.
inline double signed_overlap(int degree, double phi) {
  constexpr double pi = std::numbers::pi;
  auto g = [&](double x) { return std::pow(2.0 * std::cos(0.5 * x), degree); };
  auto h = [&](double theta) { return g(theta) * g(theta - phi); };
  std::vector<double> cuts{-pi, pi};
  if (phi - pi > -pi && phi - pi < pi) cuts.insert(cuts.begin() + 1, phi - pi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        h, cuts[i], cuts[i + 1], 12, 1e-11, &err, &l1);
    if (!std::isfinite(v) || err > 1e-9 * std::max(1.0, l1))
      throw numeric_failure("overlap quadrature did not converge");
    total += v;
  }
  return total / pi;
}

}  // namespace detail

struct VertexDistance {
  /// ||v_N - v_k||^2 from the coordinates
  double direct;
  /// 2 C(2N,N) + (-1)^{k+1} f*f(2 pi k / N), f = |1 + e^{i theta}|^N
  double formula;
  /// 2 C(2N,N) - (-1)^k (1/pi) int g(theta) g(theta - 2 pi k/N) dtheta with
  /// g(theta) = (2 cos(theta/2))^N. Unlike `formula` this keeps the sign of
  /// (e^{i theta} + zeta^k)^N, which flips where cos((theta - 2 pi k/N)/2) < 0;
  /// the two agree for even N only.
  double signed_formula;
};

/// Both routes to ||v_N - v_k||^2 for 1 <= k <= N-1.
inline VertexDistance vertex_distance_squared(int degree, int k) {
  detail::require_degree(degree);
  if (k < 1 || k > degree - 1)
    throw invalid_argument("vertex distance index must lie in 1.." + std::to_string(degree - 1));
  const double direct = (vertex(degree, degree).coords() - vertex(degree, k).coords()).squaredNorm();
  double t = 2.0 * std::numbers::pi * k / degree;
  if (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;  // f*f is 2pi-periodic and even
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  const double central = 2.0 * binomial(2 * degree, degree);
  return {direct, central + sign * convolution_ff(degree, t),
          central + sign * detail::signed_overlap(degree, 2.0 * std::numbers::pi * k / degree)};
}

/// ||v_m - v_m'||^2 with indices taken mod N.
inline double vertex_pair_distance_squared(int degree, int m, int mp) {
  auto idx = [&](int i) { return ((i - 1) % degree + degree) % degree + 1; };
  return (vertex(degree, idx(m)).coords() - vertex(degree, idx(mp)).coords()).squaredNorm();
}

}  // namespace crpoly
