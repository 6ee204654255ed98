#include <gtest/gtest.h>

#include <random>

#include "rpd/core.hpp"
#include "test_support.hpp"

using namespace rpd;

TEST(InnerProduct, Examples) {
  EXPECT_EQ(inner_product(std::vector<double>{1, 0, 0}, std::vector<double>{1, 0, 0}), 1.0);
  EXPECT_EQ(inner_product(std::vector<double>{1, 2}, std::vector<double>{-2, 1}), 0.0);
  EXPECT_EQ(inner_product(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6}), 32.0);
}

TEST(InnerProduct, DimensionMismatchIsStructural) {
  EXPECT_THROW(inner_product(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
               StructuralError);
}

TEST(InnerProduct, CurvesOnDifferentGridsAreRejected) {
  const Curve a({1, 2, 3}, Grid::uniform(3));
  const Curve b({1, 2, 3}, std::make_shared<const Grid>(std::vector<double>{0.0, 0.25, 1.0}));
  EXPECT_THROW(inner_product(a, b), StructuralError);
  // equal grids held by different pointers are the same grid
  const Curve c({4, 5, 6}, Grid::uniform(3));
  EXPECT_EQ(inner_product(a, c), 32.0);
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(std::vector<double>{3, 4}), 5.0);
  EXPECT_EQ(norm(std::vector<double>{0, 0, 0}), 0.0);
  EXPECT_EQ(norm(std::vector<double>{1, 1, 1, 1}), 2.0);
}

TEST(InnerProduct, SymmetricBilinearAndCauchySchwarz) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = dim(rng);
    const auto a = test::gaussian_vector(d, rng), b = test::gaussian_vector(d, rng),
               c = test::gaussian_vector(d, rng);
    const double s = g(rng), t = g(rng);
    std::vector<double> lin(d);
    for (std::size_t j = 0; j < d; ++j)
      lin[j] = s * a[j] + t * b[j];
    const double ab = inner_product(a, b);
    EXPECT_EQ(ab, inner_product(b, a));
    const double lhs = inner_product(lin, c);
    const double rhs = s * inner_product(a, c) + t * inner_product(b, c);
    const double scale = std::abs(s) * norm(a) * norm(c) + std::abs(t) * norm(b) * norm(c);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, scale));
    EXPECT_LE(std::abs(ab), norm(a) * norm(b) + 1e-10);
  }
}

TEST(Grid, Invariants) {
  EXPECT_THROW(Grid(std::vector<double>{0.5}), StructuralError);
  EXPECT_THROW(Grid(std::vector<double>{0.0, 0.5, 0.5}), StructuralError);
  EXPECT_THROW(Grid(std::vector<double>{-0.1, 0.5}), StructuralError);
  EXPECT_THROW(Grid(std::vector<double>{0.0, 1.5}), StructuralError);
  const auto g = Grid::uniform(101);
  EXPECT_EQ(g->count(), 101u);
  EXPECT_EQ((*g)[0], 0.0);
  EXPECT_EQ((*g)[100], 1.0);
}

TEST(Curve, Invariants) {
  const auto g = Grid::uniform(3);
  EXPECT_THROW(Curve({1.0, 2.0}, g), StructuralError);
  EXPECT_THROW(Curve({1.0, NAN, 2.0}, g), DomainError);
  EXPECT_THROW(Curve({1.0, 2.0, 3.0}, nullptr), StructuralError);
}

TEST(Direction, RejectsZeroAndNormalizes) {
  EXPECT_THROW(Direction::normalized({0.0, 0.0, 0.0}), DomainError);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto v = Direction::normalized(test::gaussian_vector(7, rng, 100.0));
    EXPECT_NEAR(norm(v.coords()), 1.0, 1e-12);
  }
  EXPECT_THROW(Direction::from_unit({1.0, 1.0}), DomainError);
  const auto e = Direction::from_unit({0.6, 0.8});
  EXPECT_EQ(e[0], 0.6);
  EXPECT_EQ((-e)[1], -0.8);
}

TEST(FunctionalSample, SharedGridRequired) {
  const auto g3 = Grid::uniform(3);
  const auto other = std::make_shared<const Grid>(std::vector<double>{0.0, 0.1, 0.2});
  EXPECT_THROW(FunctionalSample(std::vector<Curve>{}), StructuralError);
  EXPECT_THROW(FunctionalSample({Curve({1, 2, 3}, g3), Curve({1, 2, 3}, other)}),
               StructuralError);
  const FunctionalSample s({Curve({1, 2, 3}, g3), Curve({4, 5, 6}, g3)});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.dimension(), 3u);
}
