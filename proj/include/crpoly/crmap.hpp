#pragma once

// Real <-> complex coordinates for monic omega-conjugate-reciprocal
// polynomials
//
//   f(x) = x^N + c_1 x^{N-1} + ... + c_{N-1} x + omega,
//   c_{N-n} = omega * conj(c_n).
//
// A point a of R^{N-1} is identified with the coefficient vector c = X a,
// where X is the unitary (N-1)x(N-1) matrix built by build_basis().

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "crpoly/error.hpp"

namespace crpoly {

/// Point of R^{N-1}: the real coordinates of a degree-N CR polynomial.
class RealCoeffVector {
 public:
  RealCoeffVector(int degree, Eigen::VectorXd coords) : degree_(degree), coords_(std::move(coords)) {
    detail::require_degree(degree_);
    if (coords_.size() != degree_ - 1)
      throw invalid_argument("dimension mismatch: degree " + std::to_string(degree_) + " needs " +
                             std::to_string(degree_ - 1) + " coordinates, got " +
                             std::to_string(coords_.size()));
    if (!coords_.allFinite()) throw invalid_argument("coordinates must be finite");
  }

  static RealCoeffVector zero(int degree) {
    detail::require_degree(degree);
    return {degree, Eigen::VectorXd::Zero(degree - 1)};
  }

  int degree() const noexcept { return degree_; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  double operator[](Eigen::Index i) const { return coords_[i]; }
  double norm() const { return coords_.norm(); }

 private:
  int degree_;
  Eigen::VectorXd coords_;
};

/// Largest violation of c_{N-n} = omega * conj(c_n), relative to 1 + |c_n|.
inline double cr_violation(const Eigen::VectorXcd& coeffs, complex omega) {
  const Eigen::Index m = coeffs.size();
  double worst = 0.0;
  for (Eigen::Index n = 0; n < m; ++n) {
    const complex expected = omega * std::conj(coeffs[n]);
    worst = std::max(worst, std::abs(coeffs[m - 1 - n] - expected) / (1.0 + std::abs(coeffs[n])));
  }
  return worst;
}

/// Coefficients c_1..c_{N-1} of a monic omega-CR polynomial. The leading
/// coefficient 1 and constant term omega are implicit.
class CRCoefficients {
 public:
  static constexpr double default_tolerance = 1e-9;

  CRCoefficients(int degree, complex omega, Eigen::VectorXcd coeffs,
                 double tol = default_tolerance)
      : degree_(degree), omega_(omega), coeffs_(std::move(coeffs)) {
    detail::require_degree(degree_);
    if (coeffs_.size() != degree_ - 1)
      throw invalid_argument("dimension mismatch: degree " + std::to_string(degree_) + " needs " +
                             std::to_string(degree_ - 1) + " coefficients");
    if (std::abs(std::abs(omega_) - 1.0) > tol) throw invalid_argument("omega must have modulus 1");
    const double v = cr_violation(coeffs_, omega_);
    if (!(v <= tol))
      throw not_cr_error("coefficients violate c[N-n] = omega*conj(c[n]) by " + std::to_string(v));
  }

  int degree() const noexcept { return degree_; }
  complex omega() const noexcept { return omega_; }
  const Eigen::VectorXcd& coeffs() const noexcept { return coeffs_; }

  /// All N coefficients below the leading one: c_1, ..., c_{N-1}, omega.
  Eigen::VectorXcd full() const {
    Eigen::VectorXcd out(degree_);
    out.head(degree_ - 1) = coeffs_;
    out[degree_ - 1] = omega_;
    return out;
  }

 private:
  int degree_;
  complex omega_;
  Eigen::VectorXcd coeffs_;
};

/// The change of basis X_{N,omega} = omega^{1/2} X_N. Unitary, so the
/// inverse is the conjugate transpose.
class BasisMatrix {
 public:
  int degree() const noexcept { return degree_; }
  complex omega() const noexcept { return omega_; }
  /// Principal square root of omega (argument in (-pi/2, pi/2]).
  complex omega_sqrt() const noexcept { return std::sqrt(omega_); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Eigen::MatrixXcd inverse() const { return entries_.adjoint(); }

 private:
  BasisMatrix(int degree, complex omega, Eigen::MatrixXcd entries)
      : degree_(degree), omega_(omega), entries_(std::move(entries)) {}

  friend BasisMatrix build_basis(int, complex);

  int degree_;
  complex omega_;
  Eigen::MatrixXcd entries_;
};

/// Row j (1-based) of X_N:
///   j <  N/2 : (sqrt2/2) (e_j + i e_{N-j})
///   j == N/2 : e_j
///   j >  N/2 : (sqrt2/2) (e_{N-j} - i e_j)
/// This reproduces the displayed X_5 and X_6 patterns. The omega variant
/// scales every row by omega^{1/2}.
inline BasisMatrix build_basis(int degree, complex omega = 1.0) {
  detail::require_degree(degree);
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw invalid_argument("omega must have modulus 1");
  const complex s = std::sqrt(omega);
  const complex i(0.0, 1.0);
  const double h = std::numbers::sqrt2 / 2.0;
  const int m = degree - 1;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(m, m);
  for (int j = 1; j <= m; ++j) {
    const int r = j - 1;
    if (2 * j < degree) {
      x(r, j - 1) = h * s;
      x(r, degree - j - 1) = h * i * s;
    } else if (2 * j == degree) {
      x(r, j - 1) = s;
    } else {
      x(r, degree - j - 1) = h * s;
      x(r, j - 1) = -h * i * s;
    }
  }
  return {degree, omega, std::move(x)};
}

inline void require_same_degree(int a, int b) {
  if (a != b)
    throw invalid_argument("dimension mismatch: degree " + std::to_string(a) + " vs " +
                           std::to_string(b));
}

inline CRCoefficients real_to_cr(const RealCoeffVector& a, const BasisMatrix& basis) {
  require_same_degree(a.degree(), basis.degree());
  Eigen::VectorXcd c = basis.entries() * a.coords().cast<complex>();
  return {a.degree(), basis.omega(), std::move(c)};
}

/// Inverse of real_to_cr. Raises not_cr_error when the relation fails and
/// inconsistency_error when the recovered coordinates are not real, both
/// relative to `tol`.
inline RealCoeffVector cr_to_real(const Eigen::VectorXcd& coeffs, const BasisMatrix& basis,
                                  double tol = CRCoefficients::default_tolerance) {
  if (coeffs.size() != basis.degree() - 1)
    throw invalid_argument("dimension mismatch: basis degree " + std::to_string(basis.degree()) +
                           " vs " + std::to_string(coeffs.size()) + " coefficients");
  const double v = cr_violation(coeffs, basis.omega());
  if (!(v <= tol))
    throw not_cr_error("coefficients violate c[N-n] = omega*conj(c[n]) by " + std::to_string(v));
  const Eigen::VectorXcd a = basis.inverse() * coeffs;
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  const double imag = a.imag().cwiseAbs().maxCoeff();
  if (imag > tol * scale)
    throw inconsistency_error("imaginary residue " + std::to_string(imag) +
                              " in recovered real coordinates");
  return {basis.degree(), a.real()};
}

inline RealCoeffVector cr_to_real(const CRCoefficients& c, const BasisMatrix& basis,
                                  double tol = CRCoefficients::default_tolerance) {
  require_same_degree(c.degree(), basis.degree());
  if (std::abs(c.omega() - basis.omega()) > 1e-12)
    throw invalid_argument("omega of coefficients and basis differ");
  return cr_to_real(c.coeffs(), basis, tol);
}

/// | ||X a|| - ||a|| |
inline double norm_preservation_check(const RealCoeffVector& a, const BasisMatrix& basis) {
  require_same_degree(a.degree(), basis.degree());
  const Eigen::VectorXcd c = basis.entries() * a.coords().cast<complex>();
  return std::abs(c.norm() - a.norm());
}

/// || X^H X - I ||_max
inline double unitarity_residual(const BasisMatrix& basis) {
  const Eigen::Index m = basis.entries().rows();
  return (basis.entries().adjoint() * basis.entries() - Eigen::MatrixXcd::Identity(m, m))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace crpoly
