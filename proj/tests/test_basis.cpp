#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "movwall/basis.hpp"
#include "oracles.hpp"

using namespace movwall;

TEST(Basis, EigenfunctionValues)
{
    EXPECT_NEAR(eigenfunction(1, 0.5, 1.0), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(eigenfunction(3, 0.0, 2.0), 0.0);
    EXPECT_NEAR(eigenfunction(3, 2.0, 2.0), 0.0, 1e-15);
    EXPECT_THROW(eigenfunction(1, -1e-9, 1.0), DomainError);
    EXPECT_THROW(eigenfunction(1, 1.1, 1.0), DomainError);
}

TEST(Basis, EigenfunctionsAreOrthonormal)
{
    for (double l : {0.5, 1.0, 2.0})
        for (int k = 1; k <= 6; ++k)
            for (int n = 1; n <= 6; ++n) {
                const double v = oracle::integrate([&](double x) { return eigenfunction(k, x, l) * eigenfunction(n, x, l); }, 0.0, l);
                EXPECT_NEAR(v, k == n ? 1.0 : 0.0, 1e-12);
            }
}

TEST(Basis, Energy)
{
    EXPECT_NEAR(energy(1, 1.0), oracle::pi * oracle::pi, 1e-13);
    EXPECT_NEAR(energy(2, 0.5), 16.0 * oracle::pi * oracle::pi, 1e-12);
}

TEST(Basis, CouplingExamples)
{
    const auto g = coupling(100);
    EXPECT_EQ(g.at(1, 1), 0.0);
    EXPECT_NEAR(g.at(1, 2), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(g.at(2, 1), -4.0 / 3.0, 1e-15);
    for (int k = 1; k <= 100; ++k) {
        EXPECT_EQ(g.at(k, k), 0.0);
        for (int n = 1; n <= 100; ++n) ASSERT_EQ(g.at(k, n), -g.at(n, k)) << k << "," << n;
    }
    EXPECT_THROW(coupling(0), DomainError);
}

TEST(Basis, CouplingMatchesOverlapOfTimeDerivative)
{
    // l = 1, l' = 1, so Delta_kn = g_kn
    const auto g = coupling(8);
    for (int k = 1; k <= 8; ++k)
        for (int n = 1; n <= 8; ++n)
            EXPECT_NEAR(g.at(k, n), oracle::coupling_by_quadrature(k, n), 1e-7) << k << "," << n;
}

TEST(Basis, Phase)
{
    EXPECT_EQ(phase(3, 3, 0.7), 0.0);
    EXPECT_NEAR(phase(2, 1, 1.0), 3.0 * oracle::pi * oracle::pi, 1e-13);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> idx(1, 50);
    std::uniform_real_distribution<double> th(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const int k = idx(rng), n = idx(rng);
        const double t = th(rng);
        EXPECT_EQ(phase(k, n, t), -phase(n, k, t));
    }
}

TEST(Basis, AlphaFromWallData)
{
    EXPECT_DOUBLE_EQ(initial_alpha(1.0, -16.0), -4.0);
    EXPECT_DOUBLE_EQ(initial_alpha(1.0, 0.3), 0.075);
}

TEST(Basis, StaticWallDecompositionIsKronecker)
{
    const auto s = decompose_initial(2, 0.0, 10);
    for (int k = 1; k <= 10; ++k) EXPECT_EQ(s.q[std::size_t(k - 1)], (k == 2 ? cplx{1.0, 0.0} : cplx{}));
    EXPECT_EQ(s.captured_norm(), 1.0);
    EXPECT_THROW(decompose_initial(0, 0.1, 10), DomainError);
    EXPECT_THROW(decompose_initial(5, 0.1, 4), DomainError);
}

TEST(Basis, SlowWallLeadingCoefficient)
{
    const double alpha = 3.0 / 40.0;
    const cplx q = initial_coefficient(1, 1, alpha);
    EXPECT_NEAR(q.imag(), (2.0 - 3.0 / (oracle::pi * oracle::pi)) * alpha / 6.0, 2.0 * alpha * alpha * alpha);
    EXPECT_NEAR(q.imag(), 0.0212, 5e-5);
}

TEST(Basis, FresnelFormAgainstQuadrature)
{
    for (double alpha : {3.0 / 40.0, 0.75, 3.0 * oracle::pi * oracle::pi / 10.0, -4.0, 12.0})
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 40; ++k) {
                const cplx q = detail::q_fresnel(j, k, alpha);
                const cplx ref = oracle::initial_coefficient(j, k, alpha);
                ASSERT_NEAR(q.real(), ref.real(), 1e-9) << alpha << " " << j << " " << k;
                ASSERT_NEAR(q.imag(), ref.imag(), 1e-9) << alpha << " " << j << " " << k;
            }
}

TEST(Basis, SymmetricInModeIndices)
{
    for (int j = 1; j <= 5; ++j)
        for (int k = 1; k <= 5; ++k) {
            const cplx a = initial_coefficient(j, k, 0.75), b = initial_coefficient(k, j, 0.75);
            EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12);
        }
}

TEST(Basis, NegativeAlphaConjugates)
{
    for (int k = 1; k <= 10; ++k) {
        const cplx a = initial_coefficient(2, k, 1.3), b = initial_coefficient(2, k, -1.3);
        EXPECT_EQ(a, std::conj(b));
    }
}

TEST(Basis, SmallAlphaSeriesMatchesQuadrature)
{
    for (double alpha : {9e-4, -5e-4, 1e-4})
        for (int k = 1; k <= 10; ++k) {
            const cplx q = initial_coefficient(2, k, alpha);
            const cplx ref = oracle::initial_coefficient(2, k, alpha);
            EXPECT_NEAR(std::abs(q - ref), 0.0, 1e-9) << alpha << " " << k;
        }
}

TEST(Basis, TruncatedDecompositionCapturesNorm)
{
    for (double alpha : {3.0 / 40.0, 0.75, 3.0 * oracle::pi * oracle::pi / 10.0, -4.0})
        for (int j : {1, 2}) {
            const auto s = decompose_initial(j, alpha, 60);
            EXPECT_LT(1.0 - s.captured_norm(), 1e-6) << alpha << " " << j;
            EXPECT_LT(s.captured_norm(), 1.0 + 1e-12);
        }
}
