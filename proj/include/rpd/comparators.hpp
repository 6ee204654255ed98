#ifndef RPD_COMPARATORS_HPP
#define RPD_COMPARATORS_HPP

// Baseline functional depths built from the univariate halfspace depth
// HD(u; Q) = min(Q((-inf, u]), Q([u, inf))):
//   FD: grid average of the pointwise HD profile (integrated depth)
//   ID: grid minimum of the pointwise HD profile (infimal depth)

#include <algorithm>
#include <span>
#include <vector>

#include "rpd/core.hpp"
#include "rpd/parallel.hpp"

namespace rpd {

inline double hd_univariate(double u, std::span<const double> s) {
  if (s.empty())
    throw StructuralError("halfspace depth with respect to an empty sample");
  std::size_t below = 0, above = 0;
  for (double z : s) {
    below += z <= u;
    above += z >= u;
  }
  return static_cast<double>(std::min(below, above)) / static_cast<double>(s.size());
}

/// Same as hd_univariate but on a sorted sample, in O(log n).
inline double hd_univariate_sorted(double u, std::span<const double> sorted) {
  const auto n = sorted.size();
  const auto below = static_cast<std::size_t>(
      std::upper_bound(sorted.begin(), sorted.end(), u) - sorted.begin());
  const auto above = n - static_cast<std::size_t>(
                             std::lower_bound(sorted.begin(), sorted.end(), u) - sorted.begin());
  return static_cast<double>(std::min(below, above)) / static_cast<double>(n);
}

/// The marginal values of a sample at each grid point, sorted once so that
/// many queries can be profiled cheaply.
class MarginalTable {
public:
  explicit MarginalTable(const FunctionalSample& sample)
      : grid_(sample.grid()), n_(sample.size()), d_(sample.dimension()),
        sorted_(sample.size() * sample.dimension()) {
    for (std::size_t j = 0; j < d_; ++j) {
      auto col = column(j);
      for (std::size_t i = 0; i < n_; ++i)
        col[i] = sample[i][j];
      std::sort(col.begin(), col.end());
    }
  }

  std::span<const double> column(std::size_t j) const { return {sorted_.data() + j * n_, n_}; }
  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t dimension() const noexcept { return d_; }

  /// HD(x(t_j); P_X(t_j)) for every grid point.
  std::vector<double> profile(const Curve& x) const {
    if (!same_grid(x.grid(), grid_))
      throw StructuralError("query curve and sample live on different grids");
    std::vector<double> out(d_);
    for (std::size_t j = 0; j < d_; ++j)
      out[j] = hd_univariate_sorted(x[j], column(j));
    return out;
  }

private:
  std::span<double> column(std::size_t j) { return {sorted_.data() + j * n_, n_}; }

  GridPtr grid_;
  std::size_t n_;
  std::size_t d_;
  std::vector<double> sorted_;
};

inline std::vector<double> pointwise_profile(const Curve& x, const FunctionalSample& sample) {
  require_same_grid(x, sample);
  std::vector<double> out(sample.dimension());
  std::vector<double> col(sample.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (std::size_t i = 0; i < sample.size(); ++i)
      col[i] = sample[i][j];
    out[j] = hd_univariate(x[j], col);
  }
  return out;
}

inline double fd_from_profile(std::span<const double> profile) {
  double acc = 0.0;
  for (double h : profile)
    acc += h;
  return acc / static_cast<double>(profile.size());
}

inline double id_from_profile(std::span<const double> profile) {
  return *std::min_element(profile.begin(), profile.end());
}

inline double fd(const Curve& x, const FunctionalSample& sample) {
  return fd_from_profile(pointwise_profile(x, sample));
}

inline double id(const Curve& x, const FunctionalSample& sample) {
  return id_from_profile(pointwise_profile(x, sample));
}

struct HalfspaceDepths {
  std::vector<double> fd;
  std::vector<double> id;
};

/// FD and ID of every query with respect to `sample`.
inline HalfspaceDepths halfspace_depths(const FunctionalSample& queries,
                                        const FunctionalSample& sample, unsigned threads = 0) {
  const MarginalTable table(sample);
  HalfspaceDepths out{std::vector<double>(queries.size()), std::vector<double>(queries.size())};
  parallel_for(queries.size(), threads, [&](std::size_t i) {
    const auto p = table.profile(queries[i]);
    out.fd[i] = fd_from_profile(p);
    out.id[i] = id_from_profile(p);
  });
  return out;
}

} // namespace rpd

#endif // RPD_COMPARATORS_HPP
