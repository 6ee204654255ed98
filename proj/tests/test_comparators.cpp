#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_support.hpp"

namespace {

using namespace rpd;
using rpd::test::count_halfspace_depth;

TEST(HalfspaceUnivariate, Examples) {
  const std::vector<double> s{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(hd_univariate(3.0, s), 0.6);
  EXPECT_DOUBLE_EQ(hd_univariate(1.0, s), 0.2);
  EXPECT_EQ(hd_univariate(0.5, s), 0.0);
  EXPECT_EQ(hd_univariate(9.0, s), 0.0);
  const std::vector<double> flat(7, 2.5);
  EXPECT_EQ(hd_univariate(2.5, flat), 1.0);
  EXPECT_THROW(hd_univariate(0.0, std::vector<double>{}), StructuralError);
}

TEST(HalfspaceUnivariate, MatchesCountingOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> nd(1, 12), val(-4, 4);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> s(static_cast<std::size_t>(nd(rng)));
    for (double& x : s)
      x = val(rng) / 2.0; // many ties
    const double u = val(rng) / 2.0 + (t % 3 == 0 ? 0.25 : 0.0);
    const double expected = count_halfspace_depth(u, s);
    ASSERT_EQ(hd_univariate(u, s), expected);
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    ASSERT_EQ(hd_univariate_sorted(u, sorted), expected);
  }
}

FunctionalSample two_curves() {
  const GridPtr g = Grid::uniform(3);
  return FunctionalSample({Curve({0, 0, 0}, g), Curve({1, 1, 1}, g)});
}

TEST(FunctionalHalfspace, TwoCurveExample) {
  const FunctionalSample s = two_curves();
  const Curve mid({0.5, 0.5, 0.5}, s.grid());
  EXPECT_DOUBLE_EQ(fd(mid, s), 0.5);
  EXPECT_DOUBLE_EQ(id(mid, s), 0.5);
  const Curve below({-1, -1, -1}, s.grid());
  EXPECT_EQ(fd(below, s), 0.0);
  EXPECT_EQ(id(below, s), 0.0);
  // crosses the band: inside at two points, below at one
  const Curve cross({0.5, -1, 0.5}, s.grid());
  EXPECT_DOUBLE_EQ(fd(cross, s), 1.0 / 3.0);
  EXPECT_EQ(id(cross, s), 0.0);
}

TEST(FunctionalHalfspace, ConstantProfile) {
  const GridPtr g = Grid::uniform(4);
  const FunctionalSample s({Curve({2, 2, 2, 2}, g), Curve({2, 2, 2, 2}, g)});
  const Curve x({2, 2, 2, 2}, g);
  EXPECT_EQ(fd(x, s), 1.0);
  EXPECT_EQ(id(x, s), 1.0);
}

TEST(FunctionalHalfspace, OrderingAndRange) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const FunctionalSample s = rpd::test::random_sample(3 + t % 20, 2 + t % 9, rng);
    const Curve x = rpd::test::random_curve(s.grid(), rng);
    const double f = fd(x, s), i = id(x, s);
    EXPECT_GE(i, 0.0);
    EXPECT_LE(i, f);
    EXPECT_LE(f, 1.0);
  }
}

TEST(FunctionalHalfspace, GridPermutationInvariance) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 8);
    std::uniform_int_distribution<int> val(-3, 3);
    std::vector<std::vector<double>> rows(7, std::vector<double>(d));
    for (auto& r : rows)
      for (double& x : r)
        x = val(rng) / 4.0; // dyadic: FD sums are exact in any order
    std::vector<double> q(d);
    for (double& x : q)
      x = val(rng) / 4.0;
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    auto apply = [&](const std::vector<double>& v) {
      std::vector<double> out(d);
      for (std::size_t j = 0; j < d; ++j)
        out[j] = v[perm[j]];
      return out;
    };
    const GridPtr g = Grid::uniform(d);
    std::vector<std::vector<double>> prows;
    for (const auto& r : rows)
      prows.push_back(apply(r));
    const FunctionalSample a = FunctionalSample::from_rows(rows, g);
    const FunctionalSample b = FunctionalSample::from_rows(prows, g);
    EXPECT_DOUBLE_EQ(fd(Curve(q, g), a), fd(Curve(apply(q), g), b));
    EXPECT_EQ(id(Curve(q, g), a), id(Curve(apply(q), g), b));
  }
}

TEST(FunctionalHalfspace, GridMismatch) {
  const FunctionalSample s = two_curves();
  const Curve other({0, 0, 0}, std::make_shared<const Grid>(std::vector<double>{0.0, 0.2, 1.0}));
  EXPECT_THROW(fd(other, s), StructuralError);
  EXPECT_THROW(id(other, s), StructuralError);
  EXPECT_THROW(MarginalTable(s).profile(other), StructuralError);
}

TEST(FunctionalHalfspace, BatchMatchesSingleQueries) {
  std::mt19937_64 rng(24);
  const FunctionalSample s = rpd::test::random_sample(40, 12, rng);
  const FunctionalSample q = rpd::test::random_sample(25, 12, rng, s.grid());
  for (unsigned threads : {1U, 3U}) {
    const HalfspaceDepths hs = halfspace_depths(q, s, threads);
    ASSERT_EQ(hs.fd.size(), q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      EXPECT_EQ(hs.fd[i], fd(q[i], s));
      EXPECT_EQ(hs.id[i], id(q[i], s));
    }
  }
}

} // namespace
