#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

using namespace rpd::test;

constexpr std::size_t kInstances = 200;

void expect_clean(const PropertyResult& r) {
  EXPECT_EQ(r.instances, kInstances);
  EXPECT_TRUE(r.ok()) << r.name << ": " << r.violations << " of " << r.checks
                      << " checks failed, worst " << r.worst << ", first at " << r.first_failure;
}

TEST(DepthProperties, Range) { expect_clean(check_range(kInstances, 11)); }
TEST(DepthProperties, LowerBound) { expect_clean(check_lower_bound(kInstances, 12)); }
TEST(DepthProperties, Lipschitz) { expect_clean(check_lipschitz(kInstances, 13)); }
TEST(DepthProperties, QuasiConcavity) { expect_clean(check_quasi_concavity(kInstances, 14)); }
TEST(DepthProperties, RayMonotonicity) { expect_clean(check_ray_monotonicity(kInstances, 15)); }
TEST(DepthProperties, ShiftInvariance) { expect_clean(check_shift_invariance(kInstances, 16)); }
TEST(DepthProperties, PermutationInvariance) {
  expect_clean(check_permutation_invariance(kInstances, 17));
}
TEST(DepthProperties, CentralSymmetry) { expect_clean(check_central_symmetry(kInstances, 18)); }
TEST(DepthProperties, Antipodal) { expect_clean(check_antipodal(kInstances, 19)); }
TEST(DepthProperties, ScaleEquivariance) {
  expect_clean(check_scale_equivariance(kInstances, 20));
}

TEST(DepthProperties, SafeBetaStaysBelowKeptMads) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Instance in = random_instance(rng);
    for (std::size_t pos = 0; pos < in.reg.size(); ++pos)
      EXPECT_GE(in.reg.mad(pos), in.beta);
    EXPECT_GT(in.beta, 0.0);
  }
}

} // namespace
