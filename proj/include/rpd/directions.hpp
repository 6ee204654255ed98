#ifndef RPD_DIRECTIONS_HPP
#define RPD_DIRECTIONS_HPP

// Random unit directions, their projection statistics over a reference
// sample, beta tuning and the MAD >= beta filter.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rpd/core.hpp"
#include "rpd/parallel.hpp"
#include "rpd/robust_stats.hpp"

namespace rpd {

using Rng = std::mt19937_64;

/// Uniform draw from the unit sphere: a standard Gaussian vector scaled to
/// unit length.
inline Direction sample_unit_direction(std::size_t dim, Rng& rng) {
  if (dim == 0)
    throw DomainError("direction dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> coords(dim);
  for (;;) {
    for (double& c : coords)
      c = gauss(rng);
    if (norm(coords) > 0.0)
      return Direction::normalized(std::move(coords));
  }
}

/// M directions drawn one after another from a generator seeded with `seed`.
/// The first k directions of a pool of size M equal the pool of size k.
inline std::vector<Direction> sample_directions(std::size_t dim, std::size_t count,
                                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Direction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(sample_unit_direction(dim, rng));
  return out;
}

/// FNV-1a over the bit patterns of every sample value.
inline std::uint64_t sample_checksum(const FunctionalSample& sample) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(sample.size());
  mix(sample.dimension());
  for (const Curve& c : sample)
    for (double v : c.values())
      mix(std::bit_cast<std::uint64_t>(v));
  return h;
}

/// Projections of every sample curve onto every direction; row k holds the
/// n projections onto direction k.
class ProjectionMatrix {
public:
  ProjectionMatrix(std::size_t directions, std::size_t curves)
      : rows_(directions), cols_(curves), data_(directions * curves) {}

  std::size_t directions() const noexcept { return rows_; }
  std::size_t curves() const noexcept { return cols_; }
  std::span<double> row(std::size_t k) { return {data_.data() + k * cols_, cols_}; }
  std::span<const double> row(std::size_t k) const {
    return {data_.data() + k * cols_, cols_};
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

inline void require_dimension(const FunctionalSample& sample, const Direction& v) {
  if (v.size() != sample.dimension())
    throw StructuralError("direction dimension " + std::to_string(v.size()) +
                          " does not match sample dimension " +
                          std::to_string(sample.dimension()));
}

inline ProjectionMatrix project(const FunctionalSample& sample,
                                std::span<const Direction> directions,
                                unsigned threads = 0) {
  for (const Direction& v : directions)
    require_dimension(sample, v);
  ProjectionMatrix out(directions.size(), sample.size());
  parallel_for(directions.size(), threads, [&](std::size_t k) {
    auto row = out.row(k);
    for (std::size_t i = 0; i < sample.size(); ++i)
      row[i] = inner_product(sample[i], directions[k]);
  });
  return out;
}

/// Median and MAD of the sample projected onto `v`.
inline MedianMad projection_stats(const FunctionalSample& sample, const Direction& v) {
  require_dimension(sample, v);
  std::vector<double> proj(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    proj[i] = inner_product(sample[i], v);
  return median_mad_inplace(proj);
}

/// M directions with the median and MAD of the reference sample projected on
/// each. Immutable once built.
class DirectionPool {
public:
  DirectionPool(std::vector<Direction> directions, std::vector<double> proj_median,
                std::vector<double> proj_mad, std::uint64_t source_checksum,
                std::uint64_t seed)
      : directions_(std::move(directions)), median_(std::move(proj_median)),
        mad_(std::move(proj_mad)), checksum_(source_checksum), seed_(seed) {
    if (directions_.empty())
      throw StructuralError("a direction pool needs at least one direction");
    if (median_.size() != directions_.size() || mad_.size() != directions_.size())
      throw StructuralError("direction pool statistics have mismatched lengths");
    const std::size_t dim = directions_.front().size();
    for (std::size_t k = 0; k < directions_.size(); ++k) {
      if (directions_[k].size() != dim)
        throw StructuralError("pool directions have mixed dimensions");
      if (!(mad_[k] >= 0.0) || !std::isfinite(mad_[k]) || !std::isfinite(median_[k]))
        throw DomainError("pool statistics must be finite with MAD >= 0 (direction " +
                          std::to_string(k) + ")");
    }
  }

  std::size_t size() const noexcept { return directions_.size(); }
  std::size_t dimension() const noexcept { return directions_.front().size(); }
  const Direction& direction(std::size_t k) const { return directions_[k]; }
  const std::vector<Direction>& directions() const noexcept { return directions_; }
  double median(std::size_t k) const { return median_[k]; }
  double mad(std::size_t k) const { return mad_[k]; }
  std::span<const double> medians() const noexcept { return median_; }
  std::span<const double> mads() const noexcept { return mad_; }
  std::uint64_t source_checksum() const noexcept { return checksum_; }
  std::uint64_t seed() const noexcept { return seed_; }
  double max_mad() const { return *std::max_element(mad_.begin(), mad_.end()); }

private:
  std::vector<Direction> directions_;
  std::vector<double> median_;
  std::vector<double> mad_;
  std::uint64_t checksum_;
  std::uint64_t seed_;
};

/// Statistics from a precomputed projection matrix (rows match `directions`).
inline DirectionPool pool_from_projections(const FunctionalSample& sample,
                                           std::vector<Direction> directions,
                                           const ProjectionMatrix& proj,
                                           std::uint64_t seed, unsigned threads = 0) {
  if (proj.directions() != directions.size() || proj.curves() != sample.size())
    throw StructuralError("projection matrix does not match sample and directions");
  std::vector<double> med(directions.size()), mad(directions.size());
  parallel_for(directions.size(), threads, [&](std::size_t k) {
    auto row = proj.row(k);
    std::vector<double> scratch(row.begin(), row.end());
    const MedianMad mm = median_mad_inplace(scratch);
    med[k] = mm.median;
    mad[k] = mm.mad;
  });
  return DirectionPool(std::move(directions), std::move(med), std::move(mad),
                       sample_checksum(sample), seed);
}

/// Pool over caller-supplied directions, e.g. reusing the directions of
/// another pool on a transformed sample.
inline DirectionPool pool_from_directions(const FunctionalSample& sample,
                                          std::vector<Direction> directions,
                                          std::uint64_t seed = 0, unsigned threads = 0) {
  for (const Direction& v : directions)
    require_dimension(sample, v);
  std::vector<double> med(directions.size()), mad(directions.size());
  parallel_for(directions.size(), threads, [&](std::size_t k) {
    std::vector<double> scratch(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i)
      scratch[i] = inner_product(sample[i], directions[k]);
    const MedianMad mm = median_mad_inplace(scratch);
    med[k] = mm.median;
    mad[k] = mm.mad;
  });
  return DirectionPool(std::move(directions), std::move(med), std::move(mad),
                       sample_checksum(sample), seed);
}

/// Draws M directions sequentially from `seed`, then computes the projection
/// median and MAD per direction (in parallel when `threads` allows). The
/// result depends only on (sample, M, seed).
inline DirectionPool build_pool(const FunctionalSample& sample, std::size_t M,
                                std::uint64_t seed, unsigned threads = 0) {
  if (M == 0)
    throw DomainError("pool size M must be positive");
  return pool_from_directions(sample, sample_directions(sample.dimension(), M, seed),
                              seed, threads);
}

/// True when every stored median/MAD equals a fresh recomputation from
/// `sample` bit-for-bit and the checksum matches.
inline bool verify_pool(const DirectionPool& pool, const FunctionalSample& sample) {
  if (pool.source_checksum() != sample_checksum(sample) ||
      pool.dimension() != sample.dimension())
    return false;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const MedianMad mm = projection_stats(sample, pool.direction(k));
    if (mm.median != pool.median(k) || mm.mad != pool.mad(k))
      return false;
  }
  return true;
}

/// beta as the lower u-quantile of a list of projected MADs.
///
/// When that quantile is zero but some MADs are positive, the smallest
/// positive MAD is returned instead so the threshold stays positive.
inline double beta_from_mads(std::span<const double> mads, double u) {
  if (!(u >= 0.0 && u < 1.0))
    throw DomainError("quantile level u must lie in [0, 1), got " + std::to_string(u));
  if (mads.empty())
    throw StructuralError("cannot tune beta on an empty pool");
  const double largest = *std::max_element(mads.begin(), mads.end());
  if (!(largest > 0.0))
    throw DegenerateSampleError(
        "every sampled direction has zero projected MAD; the sample is constant "
        "along all sampled directions");
  const double beta = empirical_quantile(mads, u);
  if (beta > 0.0)
    return beta;
  double smallest_positive = largest;
  for (double m : mads)
    if (m > 0.0)
      smallest_positive = std::min(smallest_positive, m);
  return smallest_positive;
}

inline double tune_beta(const DirectionPool& pool, double u) {
  return beta_from_mads(pool.mads(), u);
}

/// The directions of a pool whose projected MAD is at least beta.
class RegularizedPool {
public:
  RegularizedPool(std::shared_ptr<const DirectionPool> parent, double beta)
      : parent_(std::move(parent)), beta_(beta) {
    if (!parent_)
      throw StructuralError("regularized pool without a parent pool");
    if (!(beta_ > 0.0) || !std::isfinite(beta_))
      throw DomainError("beta must be positive and finite, got " + std::to_string(beta_));
    for (std::size_t k = 0; k < parent_->size(); ++k)
      if (parent_->mad(k) >= beta_)
        kept_.push_back(k);
    if (kept_.empty())
      throw EmptyDirectionSetError(beta_, parent_->max_mad());
  }

  const DirectionPool& parent() const noexcept { return *parent_; }
  const std::shared_ptr<const DirectionPool>& parent_ptr() const noexcept { return parent_; }
  double beta() const noexcept { return beta_; }
  std::span<const std::size_t> kept() const noexcept { return kept_; }
  std::size_t size() const noexcept { return kept_.size(); }
  std::size_t dimension() const noexcept { return parent_->dimension(); }

  // Accessors by position in the kept list.
  const Direction& direction(std::size_t pos) const { return parent_->direction(kept_[pos]); }
  double median(std::size_t pos) const { return parent_->median(kept_[pos]); }
  double mad(std::size_t pos) const { return parent_->mad(kept_[pos]); }

private:
  std::shared_ptr<const DirectionPool> parent_;
  double beta_;
  std::vector<std::size_t> kept_;
};

inline RegularizedPool filter_pool(std::shared_ptr<const DirectionPool> pool, double beta) {
  return RegularizedPool(std::move(pool), beta);
}

inline RegularizedPool filter_pool(const DirectionPool& pool, double beta) {
  return RegularizedPool(std::make_shared<const DirectionPool>(pool), beta);
}

} // namespace rpd

#endif // RPD_DIRECTIONS_HPP
