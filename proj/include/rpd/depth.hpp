#ifndef RPD_DEPTH_HPP
#define RPD_DEPTH_HPP

// Regularized projection depth over a fixed pool of directions:
//
//   depth(x) = 1 / (1 + max_k |<x, v_k> - med_k| / mad_k)
//
// where k ranges over the directions whose projected MAD is at least beta.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rpd/core.hpp"
#include "rpd/directions.hpp"
#include "rpd/parallel.hpp"
#include "rpd/robust_stats.hpp"

namespace rpd {

struct DepthValue {
  double value = 1.0;
  /// Position in the regularized pool's kept list of the direction that
  /// attains the maximal outlyingness.
  std::size_t worst_direction = 0;
};

inline double outlyingness(double projection, double median, double mad) {
  if (!(mad > 0.0))
    throw DomainError("outlyingness needs a positive MAD, got " + std::to_string(mad));
  return std::abs(projection - median) / mad;
}

inline double outlyingness(const Curve& x, const Direction& v, double median, double mad) {
  return outlyingness(inner_product(x, v), median, mad);
}

/// Outlyingness extended to MAD = 0: infinite for a nonzero offset, zero for
/// a point sitting on the median.
inline double extended_outlyingness(double projection, double median, double mad) {
  const double offset = std::abs(projection - median);
  if (mad > 0.0)
    return offset / mad;
  return offset > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

namespace detail {

inline void require_dimension(std::size_t got, std::size_t want) {
  if (got != want)
    throw StructuralError("query dimension " + std::to_string(got) +
                          " does not match pool dimension " + std::to_string(want));
}

/// Scans the kept directions in order; `project(pos)` returns the projection
/// onto kept direction `pos`. Ties keep the first maximizer.
template <class Project>
DepthValue depth_scan(const RegularizedPool& pool, Project&& project) {
  double worst = -1.0;
  std::size_t arg = 0;
  for (std::size_t pos = 0; pos < pool.size(); ++pos) {
    const double o = std::abs(project(pos) - pool.median(pos)) / pool.mad(pos);
    if (o > worst) {
      worst = o;
      arg = pos;
    }
  }
  return {1.0 / (1.0 + worst), arg};
}

} // namespace detail

inline DepthValue rpd(const Curve& x, const RegularizedPool& pool) {
  detail::require_dimension(x.size(), pool.dimension());
  return detail::depth_scan(
      pool, [&](std::size_t pos) { return inner_product(x, pool.direction(pos)); });
}

/// rpd for every query, in query order.
inline std::vector<DepthValue> rpd_batch(const FunctionalSample& queries,
                                         const RegularizedPool& pool,
                                         unsigned threads = 0) {
  detail::require_dimension(queries.dimension(), pool.dimension());
  std::vector<DepthValue> out(queries.size());
  parallel_for(queries.size(), threads,
               [&](std::size_t i) { out[i] = rpd(queries[i], pool); });
  return out;
}

/// rpd of the reference curves themselves, reusing the projection matrix the
/// pool was built from. Bit-identical to rpd_batch on the same curves.
inline std::vector<DepthValue> rpd_reference_batch(const ProjectionMatrix& proj,
                                                   const RegularizedPool& pool,
                                                   unsigned threads = 0) {
  if (proj.directions() != pool.parent().size())
    throw StructuralError("projection matrix rows do not match the pool size");
  std::vector<DepthValue> out(proj.curves());
  const auto kept = pool.kept();
  parallel_for(proj.curves(), threads, [&](std::size_t i) {
    out[i] = detail::depth_scan(pool,
                                [&](std::size_t pos) { return proj.row(kept[pos])[i]; });
  });
  return out;
}

/// Maximal outlyingness over pool directions with projected MAD >= t.
/// Non-increasing in t.
inline double max_outlyingness(const Curve& x, const DirectionPool& pool, double t) {
  detail::require_dimension(x.size(), pool.dimension());
  if (!(t > 0.0))
    throw DomainError("MAD threshold t must be positive");
  bool any = false;
  double worst = 0.0;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (!(pool.mad(k) >= t))
      continue;
    any = true;
    worst = std::max(worst, std::abs(inner_product(x, pool.direction(k)) - pool.median(k)) /
                                pool.mad(k));
  }
  if (!any)
    throw EmptyDirectionSetError(t, pool.max_mad());
  return worst;
}

/// Projection depth over every pool direction with no MAD threshold, using
/// extended_outlyingness for zero-MAD directions (so the value may be 0).
inline double unregularized_depth(const Curve& x, const DirectionPool& pool) {
  detail::require_dimension(x.size(), pool.dimension());
  double worst = 0.0;
  for (std::size_t k = 0; k < pool.size(); ++k)
    worst = std::max(worst, extended_outlyingness(inner_product(x, pool.direction(k)),
                                                  pool.median(k), pool.mad(k)));
  return 1.0 / (1.0 + worst);
}

/// Lower bound (1 + (||x|| + med_i ||X_i||) / beta)^-1 that every depth
/// value over a pool with MADs >= beta respects.
inline double rpd_lower_bound(const Curve& x, const FunctionalSample& sample, double beta) {
  std::vector<double> norms(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    norms[i] = norm(sample[i]);
  return 1.0 / (1.0 + (norm(x) + median_inplace(norms)) / beta);
}

/// Average 1-based positions of tied values, in input order.
inline std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && values[order[hi]] == values[order[lo]])
      ++hi;
    // positions lo+1 .. hi share their average
    const double mid = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
    for (std::size_t j = lo; j < hi; ++j)
      ranks[order[j]] = mid;
    lo = hi;
  }
  return ranks;
}

/// Normalized midranks: the least deep curve gets about 1/n, the deepest 1.
inline std::vector<double> depth_ranks(std::span<const double> depths) {
  if (depths.empty())
    throw StructuralError("cannot rank an empty list of depths");
  std::vector<double> r = midranks(depths);
  const double n = static_cast<double>(depths.size());
  for (double& x : r)
    x /= n;
  return r;
}

inline std::vector<double> depth_values(const std::vector<DepthValue>& depths) {
  std::vector<double> v(depths.size());
  std::transform(depths.begin(), depths.end(), v.begin(),
                 [](const DepthValue& d) { return d.value; });
  return v;
}

inline std::vector<double> depth_ranks(const std::vector<DepthValue>& depths) {
  return depth_ranks(depth_values(depths));
}

struct MedianEstimate {
  std::size_t index;
  DepthValue depth;
  Curve curve;
};

/// Deepest sample curve; ties go to the smallest index.
inline MedianEstimate rpd_median(const FunctionalSample& sample, const RegularizedPool& pool,
                                 unsigned threads = 0) {
  const std::vector<DepthValue> d = rpd_batch(sample, pool, threads);
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i].value > d[best].value)
      best = i;
  return {best, d[best], sample[best]};
}

} // namespace rpd

#endif // RPD_DEPTH_HPP
