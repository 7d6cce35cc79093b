#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "crpoly/crpoly.hpp"

namespace crpoly::test {

inline std::vector<double> read_golden(const std::string& name) {
  std::ifstream in(std::string(CRPOLY_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << "missing golden file " << name;
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(std::stod(line));
  }
  return out;
}

inline RealCoeffVector random_coords(int n, rng_stream& rng, double half_width = 10.0) {
  Eigen::VectorXd a(n - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.uniform(-half_width, half_width);
  return {n, a};
}

/// Angles at least `gap` apart on the circle once the forced last root is
/// added; retries until that holds.
inline std::vector<double> separated_angles(int n, rng_stream& rng, double gap) {
  for (;;) {
    std::vector<double> t(n - 1);
    for (double& x : t) x = rng.angle();
    const RootVector rv = RootVector::from_angles(t);
    double d = 10.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d = std::min(d, std::abs(rv.roots()[i] - rv.roots()[j]));
    if (d > gap) return t;
  }
}

/// Max distance from each element of `got` to its nearest unused element of
/// `want`.
inline double multiset_distance(std::vector<complex> got, std::vector<complex> want) {
  double worst = 0.0;
  for (const complex& g : got) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < want.size(); ++i)
      if (std::abs(want[i] - g) < std::abs(want[best] - g)) best = i;
    worst = std::max(worst, std::abs(want[best] - g));
    want.erase(want.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace crpoly::test
