#pragma once

// Membership in W_N (CR polynomials with every root on the unit circle),
// sampling of root vectors, and the cyclic multiplicity partition that
// labels the face a point lies on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "crpoly/crmap.hpp"
#include "crpoly/error.hpp"
#include "crpoly/polyroots.hpp"
#include "crpoly/rng.hpp"

namespace crpoly {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

/// Squared radius of the smallest origin-centred sphere containing W_N.
inline double circumradius_squared(int degree) { return binomial(2 * degree, degree) - 2.0; }

struct ToleranceBundle {
  /// Allowed | |xi| - 1 | for a simple root. A root in a cluster of size m
  /// gets base^{1/m}.
  double base = 1e-9;
  /// Roots closer than this (chordal distance, ~ radians on the circle) are
  /// treated as one repeated root.
  double cluster_angle = 1e-5;
  /// Boundary cross-check: |disc| divided by the squared distances between
  /// roots of different clusters counts as zero below this.
  double disc_threshold = 1e-8;
  /// Adjacent clusters also merge when the merged spread is within this
  /// factor of the radius a multiplicity-m root is perturbed by rounding.
  double spread_factor = 4.0;

  double cluster_tolerance(int multiplicity) const {
    return std::pow(base, 1.0 / std::max(1, multiplicity));
  }

  /// Defaults, with `base` taken from CRPOLY_TOL when that is set.
  static ToleranceBundle from_env() {
    ToleranceBundle t;
    if (const char* s = std::getenv("CRPOLY_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw invalid_argument(std::string("CRPOLY_TOL is not a positive number: ") + s);
      t.base = v;
    }
    return t;
  }
};

/// Cyclically ordered multiplicities (n_1, ..., n_M) summing to N. Two
/// partitions are equal when one is a rotation of the other; reflections
/// are not identified (see reflection_equivalent).
class Partition {
 public:
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw invalid_argument("partition must have at least one part");
    for (int p : parts_)
      if (p <= 0) throw invalid_argument("partition parts must be positive");
    canonical_ = canonicalize(parts_);
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  /// The lexicographically greatest rotation of parts().
  const std::vector<int>& canonical() const noexcept { return canonical_; }
  std::size_t size() const noexcept { return parts_.size(); }
  int sum() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  int max_part() const { return *std::max_element(parts_.begin(), parts_.end()); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.canonical_ == b.canonical_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.canonical_ < b.canonical_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < canonical_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(canonical_[i]);
    }
    return s + ")";
  }

  static std::vector<int> canonicalize(const std::vector<int>& parts) {
    std::vector<int> best = parts, rot = parts;
    for (std::size_t r = 1; r < parts.size(); ++r) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rot > best) best = rot;
    }
    return best;
  }

 private:
  std::vector<int> parts_;
  std::vector<int> canonical_;
};

/// Equal up to rotation and reversal of the cyclic order.
inline bool reflection_equivalent(const Partition& a, const Partition& b) {
  if (a == b) return true;
  std::vector<int> rev(a.parts().rbegin(), a.parts().rend());
  return Partition(std::move(rev)) == b;
}

/// Every partition reachable by merging one pair of cyclically adjacent
/// parts, canonicalized and deduplicated.
inline std::vector<Partition> partition_reduce(const Partition& p) {
  std::set<Partition> out;
  const std::size_t m = p.size();
  if (m < 2) return {};
  const std::vector<int>& parts = p.parts();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    std::vector<int> merged;
    merged.reserve(m - 1);
    if (j == 0) {
      merged.push_back(parts[m - 1] + parts[0]);
      for (std::size_t k = 1; k + 1 < m; ++k) merged.push_back(parts[k]);
    } else {
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i)
          merged.push_back(parts[i] + parts[j]);
        else if (k != j)
          merged.push_back(parts[k]);
      }
    }
    out.insert(Partition(std::move(merged)));
  }
  return {out.begin(), out.end()};
}

/// True when `to` is reachable from `from` by zero or more reductions,
/// i.e. to precedes-or-equals from in the face order.
inline bool reduces_to(const Partition& from, const Partition& to) {
  if (from.sum() != to.sum() || to.size() > from.size()) return false;
  std::set<Partition> frontier{from}, seen{from};
  while (!frontier.empty()) {
    if (frontier.count(to)) return true;
    std::set<Partition> next;
    for (const Partition& p : frontier)
      for (Partition& q : partition_reduce(p))
        if (q.size() >= to.size() && seen.insert(q).second) next.insert(std::move(q));
    frontier = std::move(next);
  }
  return false;
}

/// A group of computed roots taken to be one root of multiplicity
/// members.size().
struct RootCluster {
  complex center;
  std::vector<complex> members;
  /// max | |z| - 1 | over members
  double unit_residual = 0.0;

  int multiplicity() const { return static_cast<int>(members.size()); }
  double angle() const {
    const double a = std::arg(center);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
  }
};

namespace detail {

inline double positive_angle(complex z) {
  const double a = std::arg(z);
  return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

inline RootCluster make_cluster(std::vector<complex> members) {
  RootCluster c;
  complex sum(0.0);
  for (const complex& z : members) {
    sum += z;
    c.unit_residual = std::max(c.unit_residual, std::abs(std::abs(z) - 1.0));
  }
  c.center = sum / static_cast<double>(members.size());
  c.members = std::move(members);
  return c;
}

inline double diameter(const std::vector<complex>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

/// Radius by which rounding in the coefficients of p can scatter a root of
/// multiplicity m located at z0: (eta / |p^(m)(z0)/m!|)^{1/m}.
inline double perturbation_radius(const MonicPolynomial& p, complex z0, int m) {
  const int n = p.degree();
  // Taylor coefficients of p at z0 by repeated synthetic division.
  std::vector<complex> t(n + 1);
  t[0] = 1.0;
  for (int k = 0; k < n; ++k) t[k + 1] = p[k];
  double eta = 0.0;
  const double az = std::abs(z0);
  for (int k = 0; k <= n; ++k) eta = eta * az + std::abs(t[k]);
  eta *= 2.0 * std::numeric_limits<double>::epsilon();
  for (int pass = 0; pass < n; ++pass)
    for (int k = 1; k <= n - pass; ++k) t[k] += z0 * t[k - 1];
  // t[n - j] is now the j-th Taylor coefficient.
  const double q = std::abs(t[n - m]);
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(eta / q, 1.0 / m);
}

}  // namespace detail

/// Groups roots into clusters listed in increasing angle on [0, 2 pi).
/// Angularly consecutive roots closer than tol.cluster_angle join the same
/// cluster (around the wrap-around too); adjacent clusters are then merged
/// while the union is no wider than the rounding scatter expected of a
/// root of that multiplicity.
inline std::vector<RootCluster> cluster_roots(const MonicPolynomial& p, std::span<const complex> roots,
                                              const ToleranceBundle& tol) {
  std::vector<complex> z(roots.begin(), roots.end());
  if (z.empty()) return {};
  std::sort(z.begin(), z.end(), [](complex a, complex b) {
    return detail::positive_angle(a) < detail::positive_angle(b);
  });
  std::vector<std::vector<complex>> groups{{z[0]}};
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (std::abs(z[i] - z[i - 1]) < tol.cluster_angle)
      groups.back().push_back(z[i]);
    else
      groups.push_back({z[i]});
  }
  if (groups.size() > 1 && std::abs(z.front() - z.back()) < tol.cluster_angle) {
    groups.back().insert(groups.back().end(), groups.front().begin(), groups.front().end());
    groups.erase(groups.begin());
  }

  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < groups.size() && groups.size() > 1; ++i) {
      const std::size_t j = (i + 1) % groups.size();
      std::vector<complex> u = groups[i];
      u.insert(u.end(), groups[j].begin(), groups[j].end());
      complex center(0.0);
      for (const complex& w : u) center += w;
      center /= static_cast<double>(u.size());
      const double spread = detail::diameter(u);
      const double radius = detail::perturbation_radius(p, center, static_cast<int>(u.size()));
      if (spread <= tol.spread_factor * radius) {
        groups[i] = std::move(u);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
        break;
      }
    }
  }

  std::vector<RootCluster> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(detail::make_cluster(std::move(g)));
  std::sort(out.begin(), out.end(),
            [](const RootCluster& a, const RootCluster& b) { return a.angle() < b.angle(); });
  return out;
}

inline Partition partition_of(const std::vector<RootCluster>& clusters) {
  std::vector<int> parts;
  parts.reserve(clusters.size());
  for (const RootCluster& c : clusters) parts.push_back(c.multiplicity());
  return Partition(std::move(parts));
}

/// Cyclic multiplicity partition of a root multiset on the unit circle.
/// Raises domain_error if some root is off the circle by more than the
/// tolerance for its cluster size.
inline Partition classify_partition(std::span<const complex> roots, const ToleranceBundle& tol = {}) {
  if (roots.empty()) throw invalid_argument("no roots");
  const MonicPolynomial p = coeffs_from_roots(roots);
  const std::vector<RootCluster> clusters = cluster_roots(p, roots, tol);
  for (const RootCluster& c : clusters)
    if (c.unit_residual > tol.cluster_tolerance(c.multiplicity()))
      throw domain_error("root off the unit circle by " + std::to_string(c.unit_residual));
  return partition_of(clusters);
}

inline Partition classify_partition(const std::vector<complex>& roots, const ToleranceBundle& tol = {}) {
  return classify_partition(std::span<const complex>(roots), tol);
}

enum class Status { Interior, Boundary, Exterior };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Interior: return "Interior";
    case Status::Boundary: return "Boundary";
    case Status::Exterior: return "Exterior";
  }
  return "?";
}

struct MembershipVerdict {
  Status status = Status::Exterior;
  /// max | |xi| - 1 | over the computed roots
  double unit_residual = 0.0;
  /// |disc| via the Sylvester resultant (may underflow to 0; see log_disc)
  double disc_magnitude = 0.0;
  double log_disc = -std::numeric_limits<double>::infinity();
  std::optional<Partition> partition;
  std::vector<complex> roots;
  /// Non-empty when the root-cluster and discriminant criteria disagree.
  std::string diagnostic;
};

/// The polynomial x^N + c_1 x^{N-1} + ... + c_{N-1} x + 1 attached to a.
inline MonicPolynomial polynomial_of(const RealCoeffVector& a) {
  const BasisMatrix basis = build_basis(a.degree());
  return MonicPolynomial(real_to_cr(a, basis).full());
}

/// Interior / Boundary / Exterior verdict for a point of R^{N-1}.
inline MembershipVerdict classify(const RealCoeffVector& a, const ToleranceBundle& tol = {}) {
  const MonicPolynomial p = polynomial_of(a);
  MembershipVerdict v;
  v.roots = roots_from_coeffs(p);
  v.unit_residual = unit_circle_residual(v.roots);
  const LogComplex ld = log_discriminant(p);
  v.log_disc = ld.log_abs;
  v.disc_magnitude = std::exp(ld.log_abs);

  const std::vector<RootCluster> clusters = cluster_roots(p, v.roots, tol);
  bool off_circle = false;
  bool repeated = false;
  for (const RootCluster& c : clusters) {
    if (c.unit_residual > tol.cluster_tolerance(c.multiplicity())) off_circle = true;
    if (c.multiplicity() >= 2) repeated = true;
  }
  if (off_circle) {
    v.status = Status::Exterior;
    return v;
  }
  v.partition = partition_of(clusters);
  v.status = repeated ? Status::Boundary : Status::Interior;

  // Cross-check against the resultant: divided by the factors between
  // distinct clusters, what is left of disc is the within-cluster part,
  // which should vanish exactly when some cluster is repeated.
  double log_between = 0.0;
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j)
      for (const complex& x : clusters[i].members)
        for (const complex& y : clusters[j].members) log_between += 2.0 * std::log(std::abs(x - y));
  const bool disc_zero = v.log_disc - log_between < std::log(tol.disc_threshold);
  if (disc_zero != repeated)
    v.diagnostic = std::string("root clusters say ") + (repeated ? "repeated" : "simple") +
                   " but the resultant gives |disc| = " + std::to_string(v.disc_magnitude);
  return v;
}

/// Coefficient shortcut: a is certainly outside W_N if some |c_n| exceeds
/// C(N, n) or ||a||^2 exceeds C(2N, N) - 2 (each by more than `slack`).
inline bool exceeds_coefficient_bound(const RealCoeffVector& a, double slack = 1e-8) {
  const int n = a.degree();
  if (a.coords().squaredNorm() > circumradius_squared(n) + slack) return true;
  const Eigen::VectorXcd c = build_basis(n).entries() * a.coords().cast<complex>();
  for (int k = 1; k < n; ++k)
    if (std::abs(c[k - 1]) > binomial(n, k) + slack) return true;
  return false;
}

/// N points on the unit circle whose product is (-1)^N omega.
class RootVector {
 public:
  RootVector(std::vector<complex> roots, complex omega = 1.0) : roots_(std::move(roots)), omega_(omega) {
    detail::require_degree(degree(), 1);
  }

  int degree() const noexcept { return static_cast<int>(roots_.size()); }
  const std::vector<complex>& roots() const noexcept { return roots_; }
  complex omega() const noexcept { return omega_; }

  /// Arguments of the roots on [0, 2 pi).
  std::vector<double> thetas() const {
    std::vector<double> t;
    t.reserve(roots_.size());
    for (const complex& z : roots_) t.push_back(detail::positive_angle(z));
    return t;
  }

  /// | prod xi - (-1)^N omega |
  double product_residual() const {
    complex prod(1.0);
    for (const complex& z : roots_) prod *= z;
    const double sign = degree() % 2 == 0 ? 1.0 : -1.0;
    return std::abs(prod - sign * omega_);
  }

  double unit_residual() const { return unit_circle_residual(roots_); }

  /// Root vector from N-1 free angles; the last root is fixed by the
  /// product constraint, xi_N = (-1)^N omega / (xi_1 ... xi_{N-1}).
  static RootVector from_angles(std::span<const double> thetas, complex omega = 1.0) {
    const int n = static_cast<int>(thetas.size()) + 1;
    detail::require_degree(n);
    std::vector<complex> roots;
    roots.reserve(n);
    double sum = 0.0;
    for (double t : thetas) {
      roots.push_back(std::polar(1.0, t));
      sum += t;
    }
    // Phase of the last root computed from the angle sum keeps it exactly
    // unimodular.
    const double phase = (n % 2 == 0 ? 0.0 : std::numbers::pi) + std::arg(omega) - sum;
    roots.push_back(std::polar(1.0, std::remainder(phase, 2.0 * std::numbers::pi)));
    return {std::move(roots), omega};
  }

 private:
  std::vector<complex> roots_;
  complex omega_;
};

/// theta_1..theta_{N-1} iid uniform on [0, 2 pi); xi_N from the product
/// constraint with omega = 1.
inline RootVector sample_root_vector(int degree, rng_stream& rng) {
  detail::require_degree(degree);
  std::vector<double> t(degree - 1);
  for (double& x : t) x = rng.angle();
  return RootVector::from_angles(t);
}

/// E_{N,omega}: the real coordinates of prod (x - xi_n).
inline RealCoeffVector point_from_roots(const RootVector& rv, const BasisMatrix& basis,
                                        double tol = CRCoefficients::default_tolerance) {
  require_same_degree(rv.degree(), basis.degree());
  const MonicPolynomial p = coeffs_from_roots(rv.roots());
  const Eigen::Map<const Eigen::VectorXcd> all(p.coeffs().data(), p.degree());
  return cr_to_real(Eigen::VectorXcd(all.head(p.degree() - 1)), basis, tol);
}

inline RealCoeffVector point_from_roots(const RootVector& rv) {
  return point_from_roots(rv, build_basis(rv.degree(), rv.omega()));
}

}  // namespace crpoly
