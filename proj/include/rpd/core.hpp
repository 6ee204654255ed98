#ifndef RPD_CORE_HPP
#define RPD_CORE_HPP

// Domain types shared by every module: a discretization grid, curves sampled
// on it, unit directions, and the reference sample. Curves are treated as
// plain vectors of grid values; the inner product is the unweighted
// Euclidean dot product.

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rpd/errors.hpp"

namespace rpd {

class Grid {
public:
  /// Validates that `points` is strictly increasing inside [0, 1] with at
  /// least two entries.
  explicit Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2)
      throw StructuralError("grid needs at least 2 points, got " +
                            std::to_string(points_.size()));
    for (std::size_t j = 0; j < points_.size(); ++j) {
      if (!std::isfinite(points_[j]))
        throw StructuralError("grid point " + std::to_string(j) + " is not finite");
      if (j > 0 && !(points_[j] > points_[j - 1]))
        throw StructuralError("grid points must be strictly increasing (index " +
                              std::to_string(j) + ")");
    }
    if (points_.front() < 0.0 || points_.back() > 1.0)
      throw StructuralError("grid points must lie in [0, 1]");
  }

  /// `count` equispaced points from 0 to 1 inclusive.
  static std::shared_ptr<const Grid> uniform(std::size_t count) {
    if (count < 2)
      throw StructuralError("uniform grid needs at least 2 points");
    std::vector<double> pts(count);
    for (std::size_t j = 0; j < count; ++j)
      pts[j] = static_cast<double>(j) / static_cast<double>(count - 1);
    return std::make_shared<const Grid>(std::move(pts));
  }

  std::size_t count() const noexcept { return points_.size(); }
  std::span<const double> points() const noexcept { return points_; }
  double operator[](std::size_t j) const { return points_[j]; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

private:
  std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Plain Euclidean dot product.
inline double inner_product(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw StructuralError("inner product of vectors with dimensions " +
                          std::to_string(a.size()) + " and " + std::to_string(b.size()));
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    acc += a[j] * b[j];
  return acc;
}

inline double norm(std::span<const double> a) {
  double acc = 0.0;
  for (double x : a)
    acc += x * x;
  return std::sqrt(acc);
}

/// One functional observation: a value per grid point.
class Curve {
public:
  Curve(std::vector<double> values, GridPtr grid)
      : values_(std::move(values)), grid_(std::move(grid)) {
    if (!grid_)
      throw StructuralError("curve without a grid");
    if (values_.size() != grid_->count())
      throw StructuralError("curve has " + std::to_string(values_.size()) +
                            " values but the grid has " + std::to_string(grid_->count()) +
                            " points");
    for (double v : values_)
      if (!std::isfinite(v))
        throw DomainError("curve values must be finite");
  }

  std::span<const double> values() const noexcept { return values_; }
  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }

private:
  std::vector<double> values_;
  GridPtr grid_;
};

/// A unit vector in grid-value space.
class Direction {
public:
  /// Rescales `coords` to unit length. The zero vector is rejected.
  static Direction normalized(std::vector<double> coords) {
    const double len = norm(coords);
    if (!(len > 0.0) || !std::isfinite(len))
      throw DomainError("cannot normalize a zero or non-finite vector into a direction");
    for (double& c : coords)
      c /= len;
    return Direction(std::move(coords), 0);
  }

  /// Takes `coords` as-is after checking their norm is 1 within 1e-12.
  static Direction from_unit(std::vector<double> coords) {
    const double len = norm(coords);
    if (coords.empty() || !(std::abs(len - 1.0) <= kUnitTolerance))
      throw DomainError("direction coordinates must have unit norm (got " +
                        std::to_string(len) + ")");
    return Direction(std::move(coords), 0);
  }

  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t j) const { return coords_[j]; }

  Direction operator-() const {
    std::vector<double> flipped(coords_);
    for (double& c : flipped)
      c = -c;
    return Direction(std::move(flipped), 0);
  }

  static constexpr double kUnitTolerance = 1e-12;

private:
  Direction(std::vector<double> coords, int) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

inline double inner_product(const Curve& a, const Curve& b) {
  if (!same_grid(a.grid(), b.grid()))
    throw StructuralError("inner product of curves on different grids");
  return inner_product(a.values(), b.values());
}
inline double inner_product(const Curve& x, const Direction& v) {
  return inner_product(x.values(), v.coords());
}
inline double inner_product(const Direction& v, const Curve& x) {
  return inner_product(v.coords(), x.values());
}
inline double inner_product(const Direction& a, const Direction& b) {
  return inner_product(a.coords(), b.coords());
}
inline double norm(const Curve& a) { return norm(a.values()); }

/// The reference sample: n >= 1 curves on one grid.
class FunctionalSample {
public:
  explicit FunctionalSample(std::vector<Curve> curves) : curves_(std::move(curves)) {
    if (curves_.empty())
      throw StructuralError("a functional sample needs at least one curve");
    const GridPtr& g = curves_.front().grid();
    for (std::size_t i = 1; i < curves_.size(); ++i)
      if (!same_grid(curves_[i].grid(), g))
        throw StructuralError("curve " + std::to_string(i) + " is on a different grid");
  }

  /// Builds a sample from rows of grid values.
  static FunctionalSample from_rows(const std::vector<std::vector<double>>& rows,
                                    GridPtr grid) {
    std::vector<Curve> curves;
    curves.reserve(rows.size());
    for (const auto& r : rows)
      curves.emplace_back(r, grid);
    return FunctionalSample(std::move(curves));
  }

  std::size_t size() const noexcept { return curves_.size(); }
  std::size_t dimension() const noexcept { return curves_.front().size(); }
  const GridPtr& grid() const noexcept { return curves_.front().grid(); }
  const Curve& operator[](std::size_t i) const { return curves_[i]; }
  const std::vector<Curve>& curves() const noexcept { return curves_; }
  auto begin() const noexcept { return curves_.begin(); }
  auto end() const noexcept { return curves_.end(); }

private:
  std::vector<Curve> curves_;
};

inline void require_same_grid(const Curve& x, const FunctionalSample& s) {
  if (!same_grid(x.grid(), s.grid()))
    throw StructuralError("query curve and sample live on different grids");
}

} // namespace rpd

#endif // RPD_CORE_HPP
