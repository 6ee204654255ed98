#ifndef RPD_TEST_SUPPORT_HPP
#define RPD_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rpd/rpd.hpp"

namespace rpd::test {

/// Brute-force median: full sort, then the order-statistic rule.
inline double sorted_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[(n + 1) / 2 - 1] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

inline double sorted_mad(const std::vector<double>& v) {
  const double m = sorted_median(v);
  std::vector<double> dev;
  for (double z : v)
    dev.push_back(std::abs(z - m));
  return sorted_median(dev);
}

/// k-th order statistic found by scanning for the smallest k with k >= u*n.
inline double sorted_quantile(std::vector<double> v, double u) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  for (std::size_t k = 1; k <= n; ++k)
    if (static_cast<double>(k) >= u * static_cast<double>(n) - 1e-9)
      return v[k - 1];
  return v.back();
}

inline double count_halfspace_depth(double u, const std::vector<double>& s) {
  std::size_t lo = 0, hi = 0;
  for (double z : s) {
    if (z <= u) ++lo;
    if (z >= u) ++hi;
  }
  return static_cast<double>(std::min(lo, hi)) / static_cast<double>(s.size());
}

inline std::vector<double> gaussian_vector(std::size_t d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> v(d);
  for (double& x : v)
    x = g(rng);
  return v;
}

/// n curves on a uniform grid with independent N(0, s_j^2) values whose
/// scale decays along the grid, plus a random offset curve.
inline FunctionalSample random_sample(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                      GridPtr grid = nullptr) {
  if (!grid)
    grid = Grid::uniform(d);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> offset(d);
  for (double& x : offset)
    x = g(rng);
  std::vector<Curve> curves;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(d);
    for (std::size_t j = 0; j < d; ++j)
      v[j] = offset[j] + g(rng) / (1.0 + 0.5 * static_cast<double>(j));
    curves.emplace_back(std::move(v), grid);
  }
  return FunctionalSample(std::move(curves));
}

inline Curve random_curve(const GridPtr& grid, std::mt19937_64& rng, double scale = 1.0) {
  return Curve(gaussian_vector(grid->count(), rng, scale), grid);
}

} // namespace rpd::test

#endif // RPD_TEST_SUPPORT_HPP
