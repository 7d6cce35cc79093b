#pragma once

// Volume of W_N: the Jacobian of the root-to-coordinate map, the closed
// form (volume of the (N-1)-ball of radius 2), two Monte Carlo estimators,
// and the boundary curves for N = 3, 4.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "crpoly/crmap.hpp"
#include "crpoly/error.hpp"
#include "crpoly/polyroots.hpp"
#include "crpoly/rng.hpp"
#include "crpoly/wn_set.hpp"

namespace crpoly {

/// Products of more factors than this are accumulated as sums of logs.
inline constexpr int kLogProductDegree = 20;

/// log prod_{m<n} |xi_n - xi_m|
inline double log_vandermonde_abs(std::span<const complex> roots) {
  double s = 0.0;
  for (std::size_t n = 1; n < roots.size(); ++n)
    for (std::size_t m = 0; m < n; ++m) s += std::log(std::abs(roots[n] - roots[m]));
  return s;
}

inline double vandermonde_abs(std::span<const complex> roots) {
  if (roots.size() > static_cast<std::size_t>(kLogProductDegree)) return std::exp(log_vandermonde_abs(roots));
  double p = 1.0;
  for (std::size_t n = 1; n < roots.size(); ++n)
    for (std::size_t m = 0; m < n; ++m) p *= std::abs(roots[n] - roots[m]);
  return p;
}

/// |Jac E_{N,omega}| at xi_n = e^{i theta_n}, n < N, with xi_N fixed by the
/// product constraint: prod_{1 <= m < n <= N} |xi_n - xi_m|.
inline double jacobian_abs(std::span<const double> thetas, complex omega = 1.0) {
  const RootVector rv = RootVector::from_angles(thetas, omega);
  return vandermonde_abs(rv.roots());
}

inline double jacobian_abs(const std::vector<double>& thetas, complex omega = 1.0) {
  return jacobian_abs(std::span<const double>(thetas), omega);
}

inline double log_jacobian_abs(std::span<const double> thetas, complex omega = 1.0) {
  const RootVector rv = RootVector::from_angles(thetas, omega);
  return log_vandermonde_abs(rv.roots());
}

/// E_{N,omega} as a map of angles: theta -> real coordinates of the
/// omega-CR polynomial with those roots.
inline Eigen::VectorXd embed_angles(std::span<const double> thetas, const BasisMatrix& basis) {
  return point_from_roots(RootVector::from_angles(thetas, basis.omega()), basis).coords();
}

/// Central-difference Jacobian determinant of embed_angles, compared with
/// jacobian_abs. Returns | |det J_fd| - jacobian_abs | / jacobian_abs.
/// Raises numeric_failure when two roots are closer than 10 * step.
inline double jacobian_fd_check(std::span<const double> thetas, complex omega = 1.0, double step = 1e-5) {
  const int n = static_cast<int>(thetas.size()) + 1;
  detail::require_degree(n);
  if (!(step > 0.0)) throw invalid_argument("finite-difference step must be positive");
  const RootVector rv = RootVector::from_angles(thetas, omega);
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(rv.roots()[i] - rv.roots()[j]));
  if (gap < 10.0 * step)
    throw numeric_failure("near-singular configuration: root gap " + std::to_string(gap) +
                          " below 10 * step");

  const BasisMatrix basis = build_basis(n, omega);
  const int m = n - 1;
  Eigen::MatrixXd jac(m, m);
  std::vector<double> t(thetas.begin(), thetas.end());
  for (int j = 0; j < m; ++j) {
    const double t0 = t[j];
    t[j] = t0 + step;
    const Eigen::VectorXd plus = embed_angles(t, basis);
    t[j] = t0 - step;
    const Eigen::VectorXd minus = embed_angles(t, basis);
    t[j] = t0;
    jac.col(j) = (plus - minus) / (2.0 * step);
  }
  const double exact = vandermonde_abs(rv.roots());
  return std::abs(std::abs(jac.determinant()) - exact) / exact;
}

inline double jacobian_fd_check(const std::vector<double>& thetas, complex omega = 1.0, double step = 1e-5) {
  return jacobian_fd_check(std::span<const double>(thetas), omega, step);
}

enum class VolumeMethod { ClosedForm, MCJacobian, MCHit };

inline const char* to_string(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::ClosedForm: return "closed-form";
    case VolumeMethod::MCJacobian: return "mc-jacobian";
    case VolumeMethod::MCHit: return "mc-hit";
  }
  return "?";
}

struct VolumeEstimate {
  int degree = 0;
  VolumeMethod method = VolumeMethod::ClosedForm;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned streams = 0;
  /// mc-hit only: fraction of box samples that landed in W_N.
  double hit_fraction = 0.0;
};

/// 2^{N-1} pi^{(N-1)/2} / Gamma((N+1)/2)
inline VolumeEstimate volume_closed_form(int degree) {
  detail::require_degree(degree);
  const double k = degree - 1;
  const double log_v = k * std::log(2.0) + 0.5 * k * std::log(std::numbers::pi) - std::lgamma(0.5 * (degree + 1));
  VolumeEstimate v;
  v.degree = degree;
  v.value = std::exp(log_v);
  return v;
}

/// Running mean and sum of squared deviations; merge() combines two
/// accumulators so per-stream results reduce deterministically.
struct Welford {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / n;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const { return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }
};

namespace detail {

struct StreamResult {
  Welford acc;
  unsigned streams;
};

/// Splits `samples` over `streams` workers (stream s draws from
/// rng_stream(seed, s)) and merges their accumulators in stream order.
template <typename Draw>
StreamResult run_streams(std::int64_t samples, std::uint64_t seed, unsigned streams, Draw draw) {
  if (samples < 1) throw invalid_argument("need at least one sample");
  streams = std::max(1u, streams);
  if (static_cast<std::int64_t>(streams) > samples) streams = static_cast<unsigned>(samples);
  std::vector<Welford> acc(streams);
  std::vector<std::exception_ptr> errors(streams);
  auto work = [&](unsigned s) {
    try {
      const std::int64_t share = samples / streams + (static_cast<std::int64_t>(s) < samples % streams ? 1 : 0);
      rng_stream rng(seed, s);
      for (std::int64_t i = 0; i < share; ++i) acc[s].push(draw(rng));
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };
  if (streams == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(streams);
    for (unsigned s = 0; s < streams; ++s) pool.emplace_back(work, s);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Welford total;
  for (const Welford& w : acc) total.merge(w);
  return {total, streams};
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace detail

/// vol(W_N) = (1/N!) int_{[0,2pi)^{N-1}} |Jac E_{N,1}| dtheta, estimated by
/// uniform sampling of the N-1 free angles.
inline VolumeEstimate volume_mc_jacobian(int degree, std::int64_t samples, std::uint64_t seed,
                                         unsigned streams = 1) {
  detail::require_degree(degree);
  const auto [w, used] = detail::run_streams(samples, seed, streams, [degree](rng_stream& rng) {
    std::vector<double> t(degree - 1);
    for (double& x : t) x = rng.angle();
    return jacobian_abs(t);
  });
  const double scale = std::exp((degree - 1) * std::log(2.0 * std::numbers::pi) - detail::log_factorial(degree));
  VolumeEstimate v;
  v.degree = degree;
  v.method = VolumeMethod::MCJacobian;
  v.value = scale * w.mean;
  v.std_error = scale * w.std_error();
  v.samples = samples;
  v.seed = seed;
  v.streams = used;
  return v;
}

/// Half-width of the bounding box [-D, D]^{N-1}, D = sqrt(C(2N,N) - 2).
inline double bounding_half_width(int degree) { return std::sqrt(circumradius_squared(degree)); }

/// Hit-or-miss: uniform points in the bounding box, counted when classify()
/// does not say Exterior. Points outside the coefficient bounds are
/// rejected without root finding.
inline VolumeEstimate volume_mc_hit(int degree, std::int64_t samples, std::uint64_t seed, unsigned streams = 1,
                                    const ToleranceBundle& tol = {}) {
  detail::require_degree(degree);
  const double d = bounding_half_width(degree);
  const auto [w, used] = detail::run_streams(samples, seed, streams, [&](rng_stream& rng) {
    Eigen::VectorXd a(degree - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.uniform(-d, d);
    const RealCoeffVector p(degree, std::move(a));
    if (exceeds_coefficient_bound(p)) return 0.0;
    return classify(p, tol).status == Status::Exterior ? 0.0 : 1.0;
  });
  const double box = std::pow(2.0 * d, degree - 1);
  const double p = w.mean;
  VolumeEstimate v;
  v.degree = degree;
  v.method = VolumeMethod::MCHit;
  v.hit_fraction = p;
  v.value = box * p;
  v.std_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  v.samples = samples;
  v.seed = seed;
  v.streams = used;
  return v;
}

struct BoundaryCurve {
  int degree = 0;
  /// Angle of the repeated root for each emitted point.
  std::vector<double> phis;
  std::vector<RealCoeffVector> points;
  /// (a_1, a_2) for N = 3; (w_1, w_3) = (a_1, a_3) for N = 4.
  std::vector<std::array<double, 2>> projection;
};

/// Boundary family with an (N-1)-fold root e^{i phi} and last root
/// (-1)^N e^{-i (N-1) phi}, for phi = 2 pi k / points. For N = 3 this is the
/// deltoid bounding W_3; for N = 4 its (w_1, w_3) projection is the
/// 4-cusped hypocycloid bounding the projection of W_4.
inline BoundaryCurve boundary_curve(int degree, int points) {
  if (degree != 3 && degree != 4)
    throw invalid_argument("boundary curve is only available for N = 3 or 4, got " + std::to_string(degree));
  if (points < 3) throw invalid_argument("boundary curve needs at least 3 points");
  BoundaryCurve out;
  out.degree = degree;
  const BasisMatrix basis = build_basis(degree);
  const double last_phase = degree % 2 == 0 ? 0.0 : std::numbers::pi;
  for (int k = 0; k < points; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / points;
    std::vector<complex> roots(degree - 1, std::polar(1.0, phi));
    roots.push_back(std::polar(1.0, last_phase - (degree - 1) * phi));
    RealCoeffVector a = point_from_roots(RootVector(std::move(roots)), basis);
    out.projection.push_back(degree == 3 ? std::array<double, 2>{a[0], a[1]} : std::array<double, 2>{a[0], a[2]});
    out.phis.push_back(phi);
    out.points.push_back(std::move(a));
  }
  return out;
}

/// Signed shoelace area of a closed polygon.
inline double polygon_area(const std::vector<std::array<double, 2>>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * s;
}

}  // namespace crpoly
