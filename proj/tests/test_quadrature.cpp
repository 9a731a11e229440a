#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nbsloc/quadrature.hpp"
#include "nbsloc/states.hpp"

using namespace nbsloc;

TEST(HalfLineGrid, Examples) {
  const auto g = half_line_grid(200, 12.0);
  EXPECT_NEAR(g.integrate([](double x) { return std::exp(-x * x); }), std::sqrt(std::numbers::pi) / 2.0, 1e-12);
  const auto g2 = half_line_grid(200, 60.0);
  EXPECT_NEAR(g2.integrate([](double x) { return x * std::exp(-x); }), 1.0, 1e-12);
  EXPECT_THROW(half_line_grid(1, 10.0), DomainError);
  EXPECT_THROW(half_line_grid(10, 0.0), DomainError);
}

TEST(HalfLineGrid, LaguerreGramSmall) {
  const double B = 1.25;
  const auto g = half_line_grid(300, default_half_line_cutoff(1, B));
  for (long j = 0; j <= 1; ++j)
    for (long k = 0; k <= 1; ++k)
      EXPECT_NEAR(g.integrate([&](double x) { return laguerre_fn(j, B, x) * laguerre_fn(k, B, x); }),
                  j == k ? 1.0 : 0.0, 1e-10);
}

TEST(HalfLineGrid, LaguerreGramLarge) {
  for (double B : {0.8, 1.5, 3.0}) {
    const auto g = half_line_grid(600, default_half_line_cutoff(20, B));
    for (long j = 0; j <= 20; ++j)
      for (long k = j; k <= 20; ++k)
        EXPECT_NEAR(g.integrate([&](double x) { return laguerre_fn(j, B, x) * laguerre_fn(k, B, x); }),
                    j == k ? 1.0 : 0.0, 1e-8)
            << "B=" << B << " j=" << j << " k=" << k;
  }
}

TEST(GridInvariants, PositiveWeightsInteriorNodes) {
  for (const auto& g : {half_line_grid(50, 5.0), radial_jacobi_grid(30, 0.75), radial_jacobi_grid(30, 3.0),
                        radial_segment_grid(0.0, 0.36, 0.5, 16), radial_segment_grid(0.2, 1.0, -0.5, 16)}) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_GT(g.weights[i], 0.0);
      EXPECT_GT(g.nodes[i], 0.0);
    }
  }
  for (double x : radial_jacobi_grid(30, 0.75).nodes) EXPECT_LT(x, 1.0);
}

TEST(RadialJacobiGrid, Examples) {
  const auto g = radial_jacobi_grid(8, 1.5);
  EXPECT_NEAR(g.integrate([](double r) { return std::pow(r, 4); }), beta(5.0, 2.0), 1e-13);
  EXPECT_NEAR(radial_jacobi_grid(4, 0.75).integrate([](double) { return 1.0; }), 2.0, 1e-12);
  EXPECT_THROW(radial_jacobi_grid(8, 0.5), DomainError);
  EXPECT_THROW(radial_jacobi_grid(1, 1.5), DomainError);
}

TEST(RadialJacobiGrid, ExactToDeclaredDegree) {
  for (double B : {0.6, 0.75, 1.0, 1.25, 2.5, 6.0}) {
    const long n = 10;
    const auto g = radial_jacobi_grid(n, B);
    for (long j = 0; j <= 2 * n - 1; ++j)
      EXPECT_NEAR(g.integrate([&](double r) { return std::pow(r, static_cast<double>(j)); }) /
                      beta(static_cast<double>(j) + 1.0, 2.0 * B - 1.0),
                  1.0, 1e-12)
          << "B=" << B << " j=" << j;
  }
}

TEST(RadialSegmentGrid, RestrictedMatchesRegIncBeta) {
  const double B = 1.25, R = 0.6;
  const auto g = radial_segment_grid(0.0, R * R, 2.0 * B - 2.0);
  const double v = g.integrate([](double r) { return r * r; }) / beta(3.0, 2.0 * B - 1.0);
  EXPECT_NEAR(v, reg_inc_beta(R * R, 3.0, 2.0 * B - 1.0), 1e-10);
}

TEST(RadialSegmentGrid, NearOneAndSingularWeight) {
  // int_a^1 (1-r)^{-1/2} dr = 2 sqrt(1-a)
  EXPECT_NEAR(radial_segment_grid(0.3, 1.0, -0.5).integrate([](double) { return 1.0; }), 2.0 * std::sqrt(0.7), 1e-13);
  // int_0^b (1-r)^{-1/2} dr = 2 (1 - sqrt(1-b)) with b close to 1
  const double b = 1.0 - 1e-10;
  EXPECT_NEAR(radial_segment_grid(0.0, b, -0.5).integrate([](double) { return 1.0; }),
              2.0 * (1.0 - std::sqrt(1.0 - b)), 1e-12);
}

TEST(DiskGrid, Examples) {
  EXPECT_NEAR(disk_grid(4, 8, 1.0).integrate([](cplx) { return 1.0; }), std::numbers::pi, 1e-12);
  const auto g = disk_grid(12, 24, 1.5);
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      if (j != k)
        EXPECT_LT(std::abs(g.integrate([&](cplx z) { return std::pow(z, k) * std::pow(std::conj(z), j); })), 1e-14);
}

TEST(DiskGrid, BergmanOrthonormality) {
  const double B = 1.5;
  const auto g = disk_grid(16, 32, B);
  for (long j = 0; j <= 8; ++j)
    EXPECT_NEAR(std::real(bergman_inner([&](cplx z) { return coeff_C(j, B, DiskPoint(z)); },
                                        [&](cplx z) { return coeff_C(j, B, DiskPoint(z)); }, g)),
                1.0, 1e-10);
}

TEST(HamiltonianResidual, Examples) {
  EXPECT_LE(hamiltonian_residual(0, 1.5, 1e-3), 1e-4);
  EXPECT_LE(hamiltonian_residual(3, 0.8, 1e-3), 1e-3);
  EXPECT_EQ(hamiltonian_residual([](double) { return 0.0; }, 1.0, 1.5, 1e-3), 0.0);
}

TEST(HamiltonianResidual, EigenRelationAllLowLevels) {
  for (double B : {0.8, 1.25, 1.5, 3.0})
    for (long j = 0; j <= 5; ++j) EXPECT_LE(hamiltonian_residual(j, B), 1e-3) << "B=" << B << " j=" << j;
}

TEST(HamiltonianResidual, WrongEigenvalueIsDetected) {
  EXPECT_GT(hamiltonian_residual([](double x) { return laguerre_fn(2, 1.5, x); }, 4.0, 1.5, 1e-3), 0.1);
}

TEST(HamiltonianResidual, Errors) {
  EXPECT_THROW(hamiltonian_residual(0, 1.5, 1e-3, Window{0.0, 8.0}), DomainError);
  EXPECT_THROW(hamiltonian_residual(0, 1.5, 1e-2), DomainError);
}
