#ifndef RPD_SIMULATION_HPP
#define RPD_SIMULATION_HPP

// Seeded data generation and Monte Carlo studies:
//
//  * an orthonormal polynomial basis on the grid,
//  * Gaussian coefficient models for clean curves (equicorrelated) and shape
//    outliers (mean 1, inverse covariance / 100),
//  * the outlier-ranking experiment comparing RPD with FD and ID,
//  * the degeneracy table contrasting unregularized and regularized depth,
//  * the elliptical MAD check,
//  * contamination and consistency probes.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rpd/comparators.hpp"
#include "rpd/core.hpp"
#include "rpd/depth.hpp"
#include "rpd/directions.hpp"
#include "rpd/parallel.hpp"
#include "rpd/robust_stats.hpp"

namespace rpd {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent child seed for stream `stream` of `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// ---------------------------------------------------------------------------
// Basis

/// Orthonormal (Euclidean grid product) polynomials of degree 0..J-1 stored
/// column by column.
class BasisMatrix {
public:
  BasisMatrix(GridPtr grid, std::vector<std::vector<double>> columns)
      : grid_(std::move(grid)), columns_(std::move(columns)) {}

  std::size_t size() const noexcept { return columns_.size(); }
  const GridPtr& grid() const noexcept { return grid_; }
  std::span<const double> column(std::size_t j) const { return columns_[j]; }

  /// sum_j coef[j] * column j
  std::vector<double> combine(std::span<const double> coef) const {
    if (coef.size() != columns_.size())
      throw StructuralError("coefficient vector length does not match the basis size");
    std::vector<double> out(grid_->count(), 0.0);
    for (std::size_t j = 0; j < columns_.size(); ++j)
      for (std::size_t t = 0; t < out.size(); ++t)
        out[t] += coef[j] * columns_[j][t];
    return out;
  }

private:
  GridPtr grid_;
  std::vector<std::vector<double>> columns_;
};

/// Gram-Schmidt on the monomials 1, t, ..., t^(J-1) with the grid inner
/// product. Each column is orthogonalized twice against its predecessors
/// to keep the Gram matrix at identity to rounding error.
inline BasisMatrix build_basis(GridPtr grid, std::size_t J) {
  if (!grid)
    throw StructuralError("basis without a grid");
  if (J == 0 || J > grid->count())
    throw DomainError("basis size must lie in [1, grid points], got " + std::to_string(J));
  const std::size_t d = grid->count();
  std::vector<std::vector<double>> cols;
  cols.reserve(J);
  for (std::size_t j = 0; j < J; ++j) {
    std::vector<double> c(d);
    for (std::size_t t = 0; t < d; ++t)
      c[t] = std::pow((*grid)[t], static_cast<double>(j));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) {
        const double proj = inner_product(c, q);
        for (std::size_t t = 0; t < d; ++t)
          c[t] -= proj * q[t];
      }
    const double len = norm(c);
    if (!(len > 0.0))
      throw DomainError("monomials are linearly dependent on this grid");
    for (double& x : c)
      x /= len;
    cols.push_back(std::move(c));
  }
  return BasisMatrix(std::move(grid), std::move(cols));
}

// ---------------------------------------------------------------------------
// Coefficient models

struct CoefficientModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Zero mean, unit variances, every correlation equal to `rho`.
inline CoefficientModel clean_model(std::size_t J = 6, double rho = 0.95) {
  CoefficientModel m;
  m.mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(J));
  m.covariance = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(J),
                                           static_cast<Eigen::Index>(J), rho);
  m.covariance.diagonal().setOnes();
  return m;
}

/// Mean (1, ..., 1), covariance = inverse of the clean covariance / `scale`.
inline CoefficientModel outlier_model(std::size_t J = 6, double rho = 0.95,
                                      double scale = 100.0) {
  const CoefficientModel clean = clean_model(J, rho);
  const Eigen::LLT<Eigen::MatrixXd> llt(clean.covariance);
  if (llt.info() != Eigen::Success)
    throw DomainError("clean covariance is not positive definite");
  const auto n = static_cast<Eigen::Index>(J);
  CoefficientModel m;
  m.mean = Eigen::VectorXd::Ones(n);
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n)) / scale;
  m.covariance = (inv + inv.transpose()) / 2.0;
  return m;
}

/// Lower-triangular L with L L^T = covariance. The zero matrix gives L = 0.
inline Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols())
    throw StructuralError("covariance must be square");
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("covariance must be symmetric");
  if (cov.cwiseAbs().maxCoeff() == 0.0)
    return Eigen::MatrixXd::Zero(cov.rows(), cov.cols());
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw DomainError("covariance is not positive definite");
  return llt.matrixL();
}

/// `count` curves basis * (mean + L z), z standard normal, drawn from `rng`.
inline std::vector<Curve> generate_curve_list(const CoefficientModel& model,
                                              const BasisMatrix& basis, std::size_t count,
                                              Rng& rng) {
  const auto J = static_cast<Eigen::Index>(basis.size());
  if (model.mean.size() != J || model.covariance.rows() != J)
    throw StructuralError("coefficient model and basis sizes differ");
  const Eigen::MatrixXd L = covariance_factor(model.covariance);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Curve> out;
  out.reserve(count);
  Eigen::VectorXd z(J);
  for (std::size_t i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < J; ++j)
      z[j] = gauss(rng);
    const Eigen::VectorXd c = model.mean + L * z;
    out.emplace_back(basis.combine(std::span<const double>(c.data(), static_cast<std::size_t>(J))),
                     basis.grid());
  }
  return out;
}

inline FunctionalSample generate_curves(const CoefficientModel& model, const BasisMatrix& basis,
                                        std::size_t count, Rng& rng) {
  if (count == 0)
    throw DomainError("curve count must be positive");
  return FunctionalSample(generate_curve_list(model, basis, count, rng));
}

// ---------------------------------------------------------------------------
// Outlier-ranking experiment

enum class DepthNotion { rpd, fd, id };

inline std::string to_string(DepthNotion n) {
  switch (n) {
  case DepthNotion::rpd: return "RPD";
  case DepthNotion::fd: return "FD";
  case DepthNotion::id: return "ID";
  }
  return "?";
}

inline DepthNotion parse_depth_notion(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "rpd") return DepthNotion::rpd;
  if (s == "fd") return DepthNotion::fd;
  if (s == "id") return DepthNotion::id;
  throw DomainError("unknown depth notion '" + s + "' (expected rpd, fd or id)");
}

struct ExperimentConfig {
  std::size_t n_clean = 500;
  std::size_t n_outliers = 50;
  std::size_t grid_points = 101;
  std::size_t M = 10000;
  std::vector<double> u{0.01};
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  std::vector<DepthNotion> depths{DepthNotion::rpd, DepthNotion::fd, DepthNotion::id};
  /// Worker threads; 0 = all hardware threads. Never affects results.
  unsigned threads = 0;

  bool wants(DepthNotion n) const {
    return std::find(depths.begin(), depths.end(), n) != depths.end();
  }

  void validate() const {
    if (n_clean == 0) throw DomainError("n_clean must be positive");
    if (grid_points < 2) throw DomainError("grid_points must be at least 2");
    if (grid_points < 6) throw DomainError("grid_points must be at least the basis size 6");
    if (M == 0) throw DomainError("M must be positive");
    if (runs == 0) throw DomainError("runs must be positive");
    if (depths.empty()) throw DomainError("at least one depth notion is required");
    if (wants(DepthNotion::rpd) && u.empty())
      throw DomainError("RPD needs at least one quantile level u");
    for (double x : u)
      if (!(x >= 0.0 && x < 1.0))
        throw DomainError("quantile levels must lie in [0, 1)");
  }
};

/// Result of one Monte Carlo run. Mean outlier ranks are keyed by
/// "RPD@<index of u>", "FD", "ID"; absent when the run failed or there are
/// no outliers.
struct RunResult {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string failure;
  std::vector<double> betas;                  // one per u, RPD only
  std::vector<double> rpd_mean_rank;          // one per u
  std::optional<double> fd_mean_rank;
  std::optional<double> id_mean_rank;
};

struct SummaryCell {
  DepthNotion notion;
  std::optional<double> u;    // RPD only
  std::size_t runs_used = 0;
  std::optional<double> mean; // absent when the metric is undefined
  std::optional<double> sd;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RunResult> runs;
  std::vector<SummaryCell> summary;
  std::size_t failed_runs = 0;
  bool aborted = false;      // more than 5% of runs failed
  bool single_run = false;   // sd reported as 0
  bool metric_defined = true; // false when there are no outliers

  const SummaryCell* find(DepthNotion n, std::optional<double> u = std::nullopt) const {
    for (const auto& c : summary)
      if (c.notion == n && (n != DepthNotion::rpd || c.u == u))
        return &c;
    return nullptr;
  }
};

inline double mean_of_tail(std::span<const double> ranks, std::size_t first) {
  double acc = 0.0;
  for (std::size_t i = first; i < ranks.size(); ++i)
    acc += ranks[i];
  return acc / static_cast<double>(ranks.size() - first);
}

/// One run: clean curves followed by outliers, all depths taken with respect
/// to the pooled sample, mean normalized midrank of the outliers.
inline RunResult run_once(const ExperimentConfig& cfg, const BasisMatrix& basis,
                          const CoefficientModel& clean, const CoefficientModel& outl,
                          std::size_t r, unsigned threads) {
  RunResult res;
  res.run = r;
  res.seed = derive_seed(cfg.seed, r);
  Rng data_rng(derive_seed(res.seed, 1));
  std::vector<Curve> curves = generate_curve_list(clean, basis, cfg.n_clean, data_rng);
  if (cfg.n_outliers > 0) {
    auto extra = generate_curve_list(outl, basis, cfg.n_outliers, data_rng);
    curves.insert(curves.end(), extra.begin(), extra.end());
  }
  const FunctionalSample pooled(std::move(curves));
  const bool has_outliers = cfg.n_outliers > 0;

  if (cfg.wants(DepthNotion::rpd)) {
    const std::uint64_t pool_seed = derive_seed(res.seed, 2);
    auto dirs = sample_directions(pooled.dimension(), cfg.M, pool_seed);
    const ProjectionMatrix proj = project(pooled, dirs, threads);
    auto pool = std::make_shared<const DirectionPool>(
        pool_from_projections(pooled, std::move(dirs), proj, pool_seed, threads));
    for (double u : cfg.u) {
      try {
        const double beta = tune_beta(*pool, u);
        const RegularizedPool reg(pool, beta);
        const auto ranks = depth_ranks(rpd_reference_batch(proj, reg, threads));
        res.betas.push_back(beta);
        if (has_outliers)
          res.rpd_mean_rank.push_back(mean_of_tail(ranks, cfg.n_clean));
      } catch (const Error& e) {
        res.failed = true;
        res.failure = "u=" + std::to_string(u) + ": " + e.what();
        return res;
      }
    }
  }
  if (cfg.wants(DepthNotion::fd) || cfg.wants(DepthNotion::id)) {
    const HalfspaceDepths hs = halfspace_depths(pooled, pooled, threads);
    if (has_outliers) {
      if (cfg.wants(DepthNotion::fd))
        res.fd_mean_rank = mean_of_tail(depth_ranks(hs.fd), cfg.n_clean);
      if (cfg.wants(DepthNotion::id))
        res.id_mean_rank = mean_of_tail(depth_ranks(hs.id), cfg.n_clean);
    }
  }
  return res;
}

/// Two-pass mean and sample standard deviation (n - 1 denominator; 0 for n = 1).
inline std::pair<double, double> mean_sd(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs)
    sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2)
    return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs)
    ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const GridPtr grid = Grid::uniform(cfg.grid_points);
  const BasisMatrix basis = build_basis(grid, 6);
  const CoefficientModel clean = clean_model();
  const CoefficientModel outl = outlier_model();

  ExperimentReport rep;
  rep.config = cfg;
  rep.runs.resize(cfg.runs);
  const unsigned workers = resolve_threads(cfg.threads);
  // Parallelize across runs when there are enough of them, otherwise inside
  // each run. Every path computes identical numbers.
  if (cfg.runs >= workers && workers > 1) {
    parallel_for(cfg.runs, workers, [&](std::size_t r) {
      rep.runs[r] = run_once(cfg, basis, clean, outl, r, 1);
    });
  } else {
    for (std::size_t r = 0; r < cfg.runs; ++r)
      rep.runs[r] = run_once(cfg, basis, clean, outl, r, workers);
  }

  std::vector<const RunResult*> ok;
  for (const auto& r : rep.runs) {
    if (r.failed)
      ++rep.failed_runs;
    else
      ok.push_back(&r);
  }
  rep.aborted = static_cast<double>(rep.failed_runs) > 0.05 * static_cast<double>(cfg.runs);
  rep.single_run = ok.size() == 1;
  rep.metric_defined = cfg.n_outliers > 0;

  auto cell = [&](DepthNotion n, std::optional<double> u, auto&& pick) {
    SummaryCell c{n, u, ok.size(), std::nullopt, std::nullopt};
    if (!rep.aborted && rep.metric_defined && !ok.empty()) {
      std::vector<double> xs;
      for (const RunResult* r : ok)
        xs.push_back(pick(*r));
      const auto [m, s] = mean_sd(xs);
      c.mean = m;
      c.sd = s;
    }
    rep.summary.push_back(c);
  };
  if (cfg.wants(DepthNotion::rpd))
    for (std::size_t k = 0; k < cfg.u.size(); ++k)
      cell(DepthNotion::rpd, cfg.u[k], [k](const RunResult& r) { return r.rpd_mean_rank[k]; });
  if (cfg.wants(DepthNotion::fd))
    cell(DepthNotion::fd, std::nullopt, [](const RunResult& r) { return *r.fd_mean_rank; });
  if (cfg.wants(DepthNotion::id))
    cell(DepthNotion::id, std::nullopt, [](const RunResult& r) { return *r.id_mean_rank; });
  return rep;
}

// ---------------------------------------------------------------------------
// Degeneracy table

struct DegeneracyConfig {
  std::size_t dim = 101;
  std::size_t n = 500;
  std::vector<std::size_t> M_schedule{1000, 10000, 100000, 200000};
  std::uint64_t seed = 0;
  double u = 0.05;
  /// Coordinate j (1-based) has standard deviation j^-decay.
  double decay = 2.0;
  unsigned threads = 0;
};

struct DegeneracyRow {
  std::size_t M = 0;
  /// min over sample points of the depth over all M directions, no threshold
  double min_unregularized_depth = 1.0;
  double beta = 0.0;
  /// min over sample points of the regularized depth at the tuned beta
  double min_regularized_depth = 1.0;
  /// min over sample points of (regularized depth - lower bound)
  double min_bound_margin = 0.0;
  bool bound_respected = true;
};

/// Gaussian sample with independent coordinates of standard deviation
/// j^-decay, drawn from `seed`.
inline FunctionalSample decaying_gaussian_sample(std::size_t dim, std::size_t n, double decay,
                                                 std::uint64_t seed) {
  const GridPtr grid = Grid::uniform(dim);
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Curve> curves;
  curves.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (std::size_t j = 0; j < dim; ++j)
      v[j] = std::pow(static_cast<double>(j + 1), -decay) * gauss(rng);
    curves.emplace_back(std::move(v), grid);
  }
  return FunctionalSample(std::move(curves));
}

/// For each M in an increasing schedule, evaluates on the first M directions
/// of one seeded stream: the minimum unregularized depth over the sample
/// points, and the regularized depth at beta tuned on those M directions
/// together with its lower bound.
inline std::vector<DegeneracyRow> run_degeneracy(const DegeneracyConfig& cfg) {
  if (cfg.M_schedule.empty())
    throw DomainError("M schedule must not be empty");
  for (std::size_t i = 0; i < cfg.M_schedule.size(); ++i)
    if (cfg.M_schedule[i] == 0 || (i > 0 && cfg.M_schedule[i] <= cfg.M_schedule[i - 1]))
      throw DomainError("M schedule must be positive and strictly increasing");
  if (cfg.dim < 2 || cfg.n == 0)
    throw DomainError("degeneracy study needs dim >= 2 and n >= 1");

  const FunctionalSample sample =
      decaying_gaussian_sample(cfg.dim, cfg.n, cfg.decay, derive_seed(cfg.seed, 1));
  const std::size_t total = cfg.M_schedule.back();
  const std::size_t levels = cfg.M_schedule.size();
  const std::size_t n = sample.size();
  const auto dirs = sample_directions(cfg.dim, total, derive_seed(cfg.seed, 2));

  // Directions are processed in fixed blocks; each block keeps its own
  // per-level maxima, combined afterwards with max (order independent).
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<double> med(total), mad(total);
  std::vector<double> unreg(blocks * levels * n, 0.0);

  auto projections = [&](std::size_t k, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = inner_product(sample[i], dirs[k]);
  };

  parallel_for(blocks, cfg.threads, [&](std::size_t b) {
    std::vector<double> p(n), scratch(n);
    double* acc = unreg.data() + b * levels * n;
    for (std::size_t k = b * kBlock; k < std::min(total, (b + 1) * kBlock); ++k) {
      projections(k, p);
      scratch = p;
      const MedianMad mm = median_mad_inplace(scratch);
      med[k] = mm.median;
      mad[k] = mm.mad;
      for (std::size_t l = 0; l < levels; ++l) {
        if (k >= cfg.M_schedule[l])
          continue;
        for (std::size_t i = 0; i < n; ++i)
          acc[l * n + i] =
              std::max(acc[l * n + i], extended_outlyingness(p[i], mm.median, mm.mad));
      }
    }
  });

  std::vector<double> betas(levels);
  for (std::size_t l = 0; l < levels; ++l)
    betas[l] = beta_from_mads(std::span<const double>(mad.data(), cfg.M_schedule[l]), cfg.u);

  std::vector<double> reg(blocks * levels * n, 0.0);
  parallel_for(blocks, cfg.threads, [&](std::size_t b) {
    std::vector<double> p(n);
    double* acc = reg.data() + b * levels * n;
    for (std::size_t k = b * kBlock; k < std::min(total, (b + 1) * kBlock); ++k) {
      projections(k, p);
      for (std::size_t l = 0; l < levels; ++l) {
        if (k >= cfg.M_schedule[l] || !(mad[k] >= betas[l]))
          continue;
        for (std::size_t i = 0; i < n; ++i)
          acc[l * n + i] = std::max(acc[l * n + i], std::abs(p[i] - med[k]) / mad[k]);
      }
    }
  });

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i)
    norms[i] = norm(sample[i]);
  const double median_norm = sample_median(norms);

  std::vector<DegeneracyRow> rows(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    DegeneracyRow& row = rows[l];
    row.M = cfg.M_schedule[l];
    row.beta = betas[l];
    row.min_bound_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double worst_u = 0.0, worst_r = 0.0;
      for (std::size_t b = 0; b < blocks; ++b) {
        worst_u = std::max(worst_u, unreg[(b * levels + l) * n + i]);
        worst_r = std::max(worst_r, reg[(b * levels + l) * n + i]);
      }
      const double du = 1.0 / (1.0 + worst_u);
      const double dr = 1.0 / (1.0 + worst_r);
      const double bound = 1.0 / (1.0 + (norms[i] + median_norm) / row.beta);
      row.min_unregularized_depth = std::min(row.min_unregularized_depth, du);
      row.min_regularized_depth = std::min(row.min_regularized_depth, dr);
      row.min_bound_margin = std::min(row.min_bound_margin, dr - bound);
    }
    row.bound_respected = row.min_bound_margin >= -1e-10;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Elliptical MAD identity

/// Upper quartile of the standard normal distribution.
inline constexpr double kNormalQuartile = 0.67448975019608174;

struct EllipticalMadConfig {
  std::size_t dim = 6;
  std::size_t n = 5000;
  std::size_t directions = 100;
  double tolerance = 0.05; // relative
  std::uint64_t seed = 0;
};

struct EllipticalMadResult {
  std::vector<double> relative_error; // one per direction
  double fraction_within = 0.0;
};

/// For a Gaussian sample with a random SPD covariance S, compares the MAD of
/// the projections on random unit v with kNormalQuartile * sqrt(v' S v).
inline EllipticalMadResult elliptical_mad_check(const EllipticalMadConfig& cfg) {
  if (cfg.dim == 0 || cfg.n == 0 || cfg.directions == 0)
    throw DomainError("elliptical MAD check needs positive sizes");
  const auto d = static_cast<Eigen::Index>(cfg.dim);
  Rng rng(derive_seed(cfg.seed, 1));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd A(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      A(i, j) = gauss(rng);
  Eigen::MatrixXd S = A * A.transpose() / static_cast<double>(d) +
                      0.1 * Eigen::MatrixXd::Identity(d, d);
  S = ((S + S.transpose()) / 2.0).eval();
  const Eigen::MatrixXd L = covariance_factor(S);

  std::vector<Eigen::VectorXd> xs;
  xs.reserve(cfg.n);
  Eigen::VectorXd z(d);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j)
      z[j] = gauss(rng);
    xs.push_back(L * z);
  }

  Rng dir_rng(derive_seed(cfg.seed, 2));
  EllipticalMadResult res;
  std::vector<double> proj(cfg.n);
  std::size_t within = 0;
  for (std::size_t k = 0; k < cfg.directions; ++k) {
    const Direction v = sample_unit_direction(cfg.dim, dir_rng);
    const Eigen::Map<const Eigen::VectorXd> ve(v.coords().data(), d);
    for (std::size_t i = 0; i < cfg.n; ++i)
      proj[i] = xs[i].dot(ve);
    const double expected = kNormalQuartile * std::sqrt(ve.dot(S * ve));
    const double err = std::abs(sample_mad(proj) - expected) / expected;
    res.relative_error.push_back(err);
    within += err <= cfg.tolerance;
  }
  res.fraction_within = static_cast<double>(within) / static_cast<double>(cfg.directions);
  return res;
}

// ---------------------------------------------------------------------------
// Contamination and consistency probes

/// A contaminated copy of `clean`: the first n - round(epsilon * n) clean
/// curves followed by round(epsilon * n) outliers clustered at R * direction
/// with spread `jitter` (standard normal per grid value).
inline FunctionalSample contaminate(const FunctionalSample& clean, double epsilon, double R,
                                    const Direction& direction, double jitter, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw DomainError("contamination rate must lie in [0, 1]");
  if (direction.size() != clean.dimension())
    throw StructuralError("contamination direction has the wrong dimension");
  const std::size_t n = clean.size();
  const auto m = static_cast<std::size_t>(std::llround(epsilon * static_cast<double>(n)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Curve> curves(clean.curves().begin(), clean.curves().begin() + (n - m));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> v(clean.dimension());
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] = R * direction[j] + jitter * gauss(rng);
    curves.emplace_back(std::move(v), clean.grid());
  }
  return FunctionalSample(std::move(curves));
}

struct BreakdownConfig {
  std::size_t n = 200;
  std::size_t grid_points = 101;
  std::size_t M = 2000;
  double u = 0.01;
  double epsilon = 0.4;
  std::vector<double> radii{10.0, 100.0, 1000.0, 10000.0};
  double jitter = 0.01;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct BreakdownPoint {
  double R;
  std::size_t median_index;
  bool median_is_clean;
  /// max over kept directions of |<median(contaminated) - median(clean), v>|
  double displacement;
};

/// Displacement of the RPD median under contamination at each radius. Both
/// medians use pools with the same direction seed, each tuned at u on its
/// own sample.
inline std::vector<BreakdownPoint> breakdown_probe(const BreakdownConfig& cfg) {
  const GridPtr grid = Grid::uniform(cfg.grid_points);
  const BasisMatrix basis = build_basis(grid, 6);
  Rng rng(derive_seed(cfg.seed, 1));
  const FunctionalSample clean = generate_curves(clean_model(), basis, cfg.n, rng);
  const std::uint64_t pool_seed = derive_seed(cfg.seed, 2);
  const auto dirs = sample_directions(grid->count(), cfg.M, pool_seed);

  auto median_of = [&](const FunctionalSample& s) {
    auto pool = std::make_shared<const DirectionPool>(
        pool_from_directions(s, dirs, pool_seed, cfg.threads));
    RegularizedPool reg(pool, tune_beta(*pool, cfg.u));
    MedianEstimate m = rpd_median(s, reg, cfg.threads);
    return std::make_pair(std::move(m), std::move(reg));
  };
  const auto [clean_median, clean_reg] = median_of(clean);

  Rng dir_rng(derive_seed(cfg.seed, 3));
  const Direction away = sample_unit_direction(grid->count(), dir_rng);
  const std::size_t n_clean_kept =
      cfg.n - static_cast<std::size_t>(std::llround(cfg.epsilon * static_cast<double>(cfg.n)));

  std::vector<BreakdownPoint> out;
  for (double R : cfg.radii) {
    Rng noise(derive_seed(cfg.seed, 4));
    const FunctionalSample cont = contaminate(clean, cfg.epsilon, R, away, cfg.jitter, noise);
    const auto [m, reg] = median_of(cont);
    std::vector<double> diff(grid->count());
    for (std::size_t j = 0; j < diff.size(); ++j)
      diff[j] = m.curve[j] - clean_median.curve[j];
    double disp = 0.0;
    for (std::size_t pos = 0; pos < reg.size(); ++pos)
      disp = std::max(disp, std::abs(inner_product(diff, reg.direction(pos).coords())));
    out.push_back({R, m.index, m.index < n_clean_kept, disp});
  }
  return out;
}

struct ConsistencyConfig {
  std::size_t n_small = 200;
  std::size_t n_large = 5000;
  std::size_t grid_points = 101;
  std::size_t M = 2000;
  double u = 0.01;
  std::size_t queries = 5;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct ConsistencyResult {
  std::vector<double> depth_small;
  std::vector<double> depth_large;
  double mean_abs_change = 0.0;
};

/// Depth of fixed query curves with respect to the first n_small curves and
/// the full n_large sample of the clean model, same directions, beta tuned
/// on the large sample.
inline ConsistencyResult consistency_probe(const ConsistencyConfig& cfg) {
  if (cfg.n_small == 0 || cfg.n_small > cfg.n_large)
    throw DomainError("consistency probe needs 0 < n_small <= n_large");
  const GridPtr grid = Grid::uniform(cfg.grid_points);
  const BasisMatrix basis = build_basis(grid, 6);
  const CoefficientModel model = clean_model();
  Rng rng(derive_seed(cfg.seed, 1));
  const auto all = generate_curve_list(model, basis, cfg.n_large, rng);
  Rng qrng(derive_seed(cfg.seed, 3));
  const FunctionalSample queries = generate_curves(model, basis, cfg.queries, qrng);

  const FunctionalSample large(all);
  const FunctionalSample small(std::vector<Curve>(all.begin(), all.begin() + cfg.n_small));
  const std::uint64_t pool_seed = derive_seed(cfg.seed, 2);
  const auto dirs = sample_directions(grid->count(), cfg.M, pool_seed);
  auto large_pool = std::make_shared<const DirectionPool>(
      pool_from_directions(large, dirs, pool_seed, cfg.threads));
  auto small_pool = std::make_shared<const DirectionPool>(
      pool_from_directions(small, dirs, pool_seed, cfg.threads));
  const double beta = tune_beta(*large_pool, cfg.u);

  ConsistencyResult res;
  res.depth_large = depth_values(rpd_batch(queries, RegularizedPool(large_pool, beta), cfg.threads));
  res.depth_small = depth_values(rpd_batch(queries, RegularizedPool(small_pool, beta), cfg.threads));
  for (std::size_t q = 0; q < queries.size(); ++q)
    res.mean_abs_change += std::abs(res.depth_small[q] - res.depth_large[q]);
  res.mean_abs_change /= static_cast<double>(queries.size());
  return res;
}

} // namespace rpd

#endif // RPD_SIMULATION_HPP
