#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crpoly {

using complex = std::complex<double>;

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad degree, mismatched dimensions, out-of-range index or resolution.
class invalid_argument : public error {
 public:
  using error::error;
};

/// Complex coefficients that do not satisfy c[N-n] = omega * conj(c[n]).
class not_cr_error : public error {
 public:
  using error::error;
};

/// A result that should be real carries an imaginary part above tolerance.
class inconsistency_error : public error {
 public:
  using error::error;
};

/// A root of the polynomial lies off the unit circle where the caller
/// required it on.
class domain_error : public error {
 public:
  using error::error;
};

/// Iterative method did not converge, or an evaluation is ill-conditioned.
class numeric_failure : public error {
 public:
  explicit numeric_failure(const std::string& what,
                           std::vector<complex> best_iterate = {},
                           std::vector<double> residuals = {})
      : error(what),
        best_iterate_(std::move(best_iterate)),
        residuals_(std::move(residuals)) {}

  const std::vector<complex>& best_iterate() const noexcept { return best_iterate_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<complex> best_iterate_;
  std::vector<double> residuals_;
};

namespace detail {

inline void require_degree(int n, int min_degree = 2) {
  if (n < min_degree)
    throw invalid_argument("invalid degree " + std::to_string(n) + " (need N >= " +
                           std::to_string(min_degree) + ")");
}

}  // namespace detail
}  // namespace crpoly
