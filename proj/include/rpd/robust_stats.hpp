#ifndef RPD_ROBUST_STATS_HPP
#define RPD_ROBUST_STATS_HPP

// Sample median, MAD and lower empirical quantile.
//
// Median of Z_1..Z_n: Z_((n+1)/2) for odd n, (Z_(n/2) + Z_(n/2+1)) / 2 for
// even n. MAD: median of |Z_i - median|. All selections are exact
// (nth_element), so results are reproducible bit-for-bit.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "rpd/errors.hpp"

namespace rpd {

namespace detail {

inline void require_sample(std::span<const double> s, const char* what) {
  if (s.empty())
    throw StructuralError(std::string(what) + " of an empty sample");
  for (double z : s)
    if (!std::isfinite(z))
      throw DomainError(std::string(what) + " of a sample with non-finite values");
}

} // namespace detail

/// Median computed by partially reordering `scratch`. No validation.
inline double median_inplace(std::span<double> scratch) {
  const std::size_t n = scratch.size();
  const std::size_t hi = n / 2;
  std::nth_element(scratch.begin(), scratch.begin() + hi, scratch.end());
  const double upper = scratch[hi];
  if (n % 2 == 1)
    return upper;
  // after nth_element everything left of `hi` is <= upper
  const double lower = *std::max_element(scratch.begin(), scratch.begin() + hi);
  return (lower + upper) / 2.0;
}

/// MAD around `center`, overwriting `scratch` with absolute deviations.
inline double mad_inplace(std::span<double> scratch, double center) {
  for (double& z : scratch)
    z = std::abs(z - center);
  return median_inplace(scratch);
}

struct MedianMad {
  double median;
  double mad;
};

/// Median and MAD in one pass over a scratch copy.
inline MedianMad median_mad_inplace(std::span<double> scratch) {
  const double med = median_inplace(scratch);
  return {med, mad_inplace(scratch, med)};
}

inline double sample_median(std::span<const double> s) {
  detail::require_sample(s, "median");
  std::vector<double> tmp(s.begin(), s.end());
  return median_inplace(tmp);
}

inline double sample_mad(std::span<const double> s) {
  detail::require_sample(s, "MAD");
  std::vector<double> tmp(s.begin(), s.end());
  return median_mad_inplace(tmp).mad;
}

/// Smallest index k with k >= u*n, clamped to at least 1 (1-based).
/// A product u*n within rounding of an integer counts as that integer, so
/// u = 0.01 with n = 10000 selects k = 100.
inline std::size_t quantile_rank(std::size_t n, double u) {
  double x = u * static_cast<double>(n);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest))
    x = nearest;
  const auto k = static_cast<std::size_t>(std::ceil(x));
  return std::clamp<std::size_t>(k, 1, n);
}

/// Lower empirical quantile: the k-th order statistic, k = max(1, ceil(u*n)).
inline double empirical_quantile(std::span<const double> s, double u) {
  if (!(u >= 0.0 && u < 1.0))
    throw DomainError("quantile level must lie in [0, 1), got " + std::to_string(u));
  detail::require_sample(s, "quantile");
  std::vector<double> tmp(s.begin(), s.end());
  const std::size_t k = quantile_rank(tmp.size(), u);
  std::nth_element(tmp.begin(), tmp.begin() + (k - 1), tmp.end());
  return tmp[k - 1];
}

} // namespace rpd

#endif // RPD_ROBUST_STATS_HPP
