#pragma once

// Roots <-> coefficients for monic complex polynomials, a simultaneous
// root finder, and discriminants.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "crpoly/error.hpp"

namespace crpoly {

/// x^N + coeffs[0] x^{N-1} + ... + coeffs[N-1]. The leading 1 is implicit.
class MonicPolynomial {
 public:
  MonicPolynomial() = default;
  explicit MonicPolynomial(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {}
  explicit MonicPolynomial(const Eigen::VectorXcd& coeffs)
      : coeffs_(coeffs.data(), coeffs.data() + coeffs.size()) {}

  int degree() const noexcept { return static_cast<int>(coeffs_.size()); }
  const std::vector<complex>& coeffs() const noexcept { return coeffs_; }
  complex operator[](std::size_t k) const { return coeffs_[k]; }

  /// Euclidean norm of (1, coeffs...).
  double norm() const {
    double s = 1.0;
    for (const complex& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
  }

  bool finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const complex& c) {
      return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
  }

  template <typename T = double>
  std::complex<T> operator()(std::complex<T> z) const {
    std::complex<T> v(1);
    for (const complex& c : coeffs_) v = v * z + std::complex<T>(c);
    return v;
  }

 private:
  std::vector<complex> coeffs_;
};

/// Expands prod (x - roots[n]) one linear factor at a time, so the
/// coefficient of x^{N-n} is (-1)^n e_n(roots).
inline MonicPolynomial coeffs_from_roots(std::span<const complex> roots) {
  std::vector<complex> b(roots.size() + 1, complex(0.0));
  b[0] = 1.0;
  std::size_t deg = 0;
  for (const complex& r : roots) {
    ++deg;
    for (std::size_t k = deg; k >= 1; --k) b[k] -= r * b[k - 1];
  }
  return MonicPolynomial(std::vector<complex>(b.begin() + 1, b.end()));
}

inline MonicPolynomial coeffs_from_roots(const std::vector<complex>& roots) {
  return coeffs_from_roots(std::span<const complex>(roots));
}

inline double unit_circle_residual(std::span<const complex> roots) {
  double worst = 0.0;
  for (const complex& z : roots) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  return worst;
}

inline double unit_circle_residual(const std::vector<complex>& roots) {
  return unit_circle_residual(std::span<const complex>(roots));
}

struct RootFinderOptions {
  int max_sweeps = 200;
  /// Converged once every update satisfies |dz| < update_tol * (1 + |z|).
  double update_tol = 1e-14;
  /// Post-condition: backward error |p(z)| / sum |c_k| |z|^{N-k} <= residual_tol.
  double residual_tol = 1e-8;
  /// Newton steps in extended precision after the simultaneous iteration.
  int polish_steps = 3;
};

namespace detail {

using lcomplex = std::complex<long double>;

/// Horner with a running bound on the rounding error of the value.
struct HornerResult {
  lcomplex value;
  lcomplex derivative;
  long double error_bound;
};

inline HornerResult horner(const std::vector<lcomplex>& c, lcomplex z) {
  lcomplex v(1), d(0);
  long double e = 1;
  const long double az = std::abs(z);
  for (const lcomplex& ck : c) {
    d = d * z + v;
    v = v * z + ck;
    e = e * az + std::abs(v);
  }
  return {v, d, 4 * std::numeric_limits<long double>::epsilon() * e};
}

/// Upper bound on root moduli: 2 max_k |c_k|^{1/k} (Fujiwara).
inline double root_bound(const MonicPolynomial& p) {
  double r = 0.0;
  const int n = p.degree();
  for (int k = 1; k <= n; ++k) {
    double a = std::abs(p[k - 1]);
    if (k == n) a /= 2.0;
    if (a > 0.0) r = std::max(r, std::pow(a, 1.0 / k));
  }
  return std::max(2.0 * r, std::numeric_limits<double>::min());
}

inline std::vector<complex> companion_roots(const MonicPolynomial& p) {
  const int n = p.degree();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) comp(0, k) = -p[k];
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) return {};
  const Eigen::VectorXcd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Backward error of each approximate root: |p(z)| / sum_k |c_k| |z|^{N-k}
/// with c_0 = 1.
inline std::vector<double> residuals(const MonicPolynomial& p, const std::vector<complex>& z) {
  std::vector<double> r;
  r.reserve(z.size());
  for (const complex& zi : z) {
    const lcomplex x(zi.real(), zi.imag());
    lcomplex v(1);
    long double scale = 1;
    const long double ax = std::abs(x);
    for (const complex& c : p.coeffs()) {
      v = v * x + lcomplex(c.real(), c.imag());
      scale = scale * ax + std::abs(c);
    }
    r.push_back(static_cast<double>(std::abs(v) / scale));
  }
  return r;
}

inline bool residuals_ok(const std::vector<double>& r, double tol) {
  return std::all_of(r.begin(), r.end(), [&](double x) { return x <= tol; });
}

/// Newton refinement in long double. A step is kept only if it lowers the
/// residual and stays well inside the gap to the nearest other root, so it
/// cannot hop between neighbours.
inline void polish(const std::vector<lcomplex>& c, std::vector<lcomplex>& z, int steps) {
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i) {
    long double gap = std::numeric_limits<long double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) gap = std::min(gap, std::abs(z[i] - z[j]));
    for (int s = 0; s < steps; ++s) {
      const HornerResult h = horner(c, z[i]);
      if (h.derivative == lcomplex(0)) break;
      const lcomplex step = h.value / h.derivative;
      if (std::abs(step) > 0.25L * gap) break;
      const lcomplex next = z[i] - step;
      if (std::abs(horner(c, next).value) >= std::abs(h.value)) break;
      z[i] = next;
    }
  }
}

}  // namespace detail

/// All N roots of p, repeated according to multiplicity.
///
/// Aberth-Ehrlich iteration in long double from points on a circle just
/// outside the Fujiwara root bound, then Newton polishing. If the iteration
/// has not settled after `max_sweeps`, the eigenvalues of the companion
/// matrix are used as the starting point for the polish instead. A root of
/// multiplicity m is only determined to about eps^{1/m}.
inline std::vector<complex> roots_from_coeffs(const MonicPolynomial& p,
                                              const RootFinderOptions& opt = {}) {
  using detail::lcomplex;
  if (!p.finite()) throw invalid_argument("polynomial has non-finite coefficients");
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p[0]};

  std::vector<lcomplex> c;
  c.reserve(n);
  for (const complex& ck : p.coeffs()) c.emplace_back(ck.real(), ck.imag());

  const long double radius = 1.01L * detail::root_bound(p);
  std::vector<lcomplex> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L);

  std::vector<char> done(n, 0);
  bool converged = false;
  for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const detail::HornerResult h = detail::horner(c, z[i]);
      if (std::abs(h.value) <= h.error_bound) {
        done[i] = 1;
        continue;
      }
      lcomplex repulsion(0);
      for (int j = 0; j < n; ++j)
        if (j != i) repulsion += 1.0L / (z[i] - z[j]);
      const lcomplex ratio = h.value / h.derivative;
      lcomplex w = ratio / (1.0L - ratio * repulsion);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        // Stationary point; nudge off it.
        w = lcomplex(1e-8L * (1 + std::abs(z[i])), 0);
      }
      z[i] -= w;
      if (std::abs(w) < opt.update_tol * (1 + std::abs(z[i])))
        done[i] = 1;
      else
        converged = false;
    }
  }

  if (!converged) {
    const std::vector<complex> alt = detail::companion_roots(p);
    if (alt.size() == static_cast<std::size_t>(n))
      for (int k = 0; k < n; ++k) z[k] = lcomplex(alt[k].real(), alt[k].imag());
  }

  detail::polish(c, z, opt.polish_steps);
  std::vector<complex> out;
  out.reserve(n);
  for (const lcomplex& zk : z) out.emplace_back(static_cast<double>(zk.real()), static_cast<double>(zk.imag()));
  const std::vector<double> r = detail::residuals(p, out);
  if (!detail::residuals_ok(r, opt.residual_tol))
    throw numeric_failure("root finder did not converge for degree " + std::to_string(n), out, r);
  return out;
}

/// Roots of many polynomials, split across `threads` workers. Output order
/// matches input order; the first failure is rethrown.
inline std::vector<std::vector<complex>> roots_batch(std::span<const MonicPolynomial> polys,
                                                     unsigned threads = 1,
                                                     const RootFinderOptions& opt = {}) {
  std::vector<std::vector<complex>> out(polys.size());
  std::vector<std::exception_ptr> errors(polys.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = roots_from_coeffs(polys[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(polys.size())));
  if (threads <= 1) {
    work(0, polys.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (polys.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk, e = std::min(polys.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// log|z| and arg z of a value that may overflow a double.
struct LogComplex {
  double log_abs = -std::numeric_limits<double>::infinity();
  double arg = 0.0;

  complex value() const { return std::polar(std::exp(log_abs), arg); }
};

namespace detail {

inline Eigen::MatrixXcd sylvester_with_derivative(const MonicPolynomial& p) {
  const int n = p.degree();
  const int size = 2 * n - 1;
  Eigen::VectorXcd a(n + 1), da(n);
  a[0] = 1.0;
  for (int k = 0; k < n; ++k) a[k + 1] = p[k];
  for (int k = 0; k < n; ++k) da[k] = static_cast<double>(n - k) * a[k];
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < n - 1; ++r) s.block(r, r, 1, n + 1) = a.transpose();
  for (int r = 0; r < n; ++r) s.block(n - 1 + r, r, 1, n) = da.transpose();
  return s;
}

inline double discriminant_sign(int n) {
  return ((static_cast<long long>(n) * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

/// disc(p) = (-1)^{N(N-1)/2} Res(p, p'), with the resultant taken as the
/// determinant of the Sylvester matrix.
inline complex discriminant(const MonicPolynomial& p) {
  detail::require_degree(p.degree());
  const Eigen::MatrixXcd s = detail::sylvester_with_derivative(p);
  return detail::discriminant_sign(p.degree()) * s.partialPivLu().determinant();
}

/// Same quantity, returned as log-magnitude and phase.
inline LogComplex log_discriminant(const MonicPolynomial& p) {
  detail::require_degree(p.degree());
  const Eigen::MatrixXcd s = detail::sylvester_with_derivative(p);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s);
  LogComplex out{0.0, 0.0};
  const Eigen::MatrixXcd& m = lu.matrixLU();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const complex u = m(i, i);
    if (u == complex(0.0)) return {};
    out.log_abs += std::log(std::abs(u));
    out.arg += std::arg(u);
  }
  double sign = lu.permutationP().determinant() * detail::discriminant_sign(p.degree());
  if (sign < 0) out.arg += std::numbers::pi;
  out.arg = std::remainder(out.arg, 2.0 * std::numbers::pi);
  return out;
}

/// prod_{m<n} (xi_n - xi_m)^2
inline complex discriminant_from_roots(std::span<const complex> roots) {
  complex d(1.0);
  for (std::size_t n = 1; n < roots.size(); ++n)
    for (std::size_t m = 0; m < n; ++m) {
      const complex diff = roots[n] - roots[m];
      d *= diff * diff;
    }
  return d;
}

inline LogComplex log_discriminant_from_roots(std::span<const complex> roots) {
  LogComplex out{0.0, 0.0};
  for (std::size_t n = 1; n < roots.size(); ++n)
    for (std::size_t m = 0; m < n; ++m) {
      const complex diff = roots[n] - roots[m];
      if (diff == complex(0.0)) return {};
      out.log_abs += 2.0 * std::log(std::abs(diff));
      out.arg += 2.0 * std::arg(diff);
    }
  out.arg = std::remainder(out.arg, 2.0 * std::numbers::pi);
  return out;
}

}  // namespace crpoly
