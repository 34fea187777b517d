#include <gtest/gtest.h>

#include <cmath>

#include "movwall/exact.hpp"
#include "movwall/observables.hpp"
#include "oracles.hpp"

using namespace movwall;

namespace {

SpectralState pure(int k, int K, double t = 0.0, double theta = 0.0)
{
    std::vector<cplx> b(static_cast<std::size_t>(K));
    b[std::size_t(k - 1)] = 1.0;
    return SpectralState::from_coefficients(b, t, theta);
}

GridState grid_mode(int n, int N, double l)
{
    GridState s{0.0, N, {}};
    for (int i = 1; i < N; ++i) s.phi.push_back(eigenfunction(n, l * i / N, l));
    return s;
}

} // namespace

TEST(Observables, NormOfDoescherStart)
{
    EXPECT_EQ(norm(pure(1, 10)), 1.0);
    const WallMotion m(Uniform{1.0, 0.0});
    EXPECT_NEAR(quadrature_norm(pure(1, 10), m), 1.0, 1e-12);
    EXPECT_NEAR(norm(grid_mode(1, 100, 1.0), m), 1.0, 1e-12);
}

TEST(Observables, SpectralTrajectoryConservesNorm)
{
    const WallMotion m(Oscillatory{1.0, 0.3, 10.0});
    const auto init = decompose_initial(2, initial_alpha(1.0, m.velocity(0.0)), 20);
    const auto traj = evolve(init, m, 1.0, {1e-5, 20, 1e-6});
    for (const auto& s : traj.states) EXPECT_NEAR(norm(s) / traj.initial_norm, 1.0, 1e-8);
}

TEST(Observables, MeanPositionOfSymmetricStates)
{
    const WallMotion m(Uniform{1.0, 0.0});
    EXPECT_NEAR(mean_position(pure(1, 5), m), 0.5, 1e-12);
    EXPECT_NEAR(mean_position(pure(2, 5), m), 0.5, 1e-12);
    EXPECT_NEAR(mean_position(grid_mode(1, 100, 1.0), m), 0.5, 1e-12);
    const WallMotion wide(Uniform{3.0, 0.0});
    EXPECT_NEAR(mean_position(pure(3, 5), wide), 1.5, 1e-12);
}

TEST(Observables, MeanPositionOfAsymmetricState)
{
    // (u_1 + u_2)/sqrt 2 leans left: <x> = 1/2 - 16/(9 pi^2)
    const WallMotion m(Uniform{1.0, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = SpectralState::from_coefficients(std::vector<cplx>{r, r});
    EXPECT_NEAR(mean_position(s, m), 0.5 - 16.0 / (9.0 * oracle::pi * oracle::pi), 1e-10);
}

TEST(Observables, ZeroStateThrows)
{
    const WallMotion m(Uniform{1.0, 0.0});
    const auto zero = SpectralState::from_coefficients(std::vector<cplx>(4));
    EXPECT_THROW(mean_position(zero, m), DomainError);
    EXPECT_THROW(mean_energy(zero, m), DomainError);
    EXPECT_THROW(mean_energy(GridState{0.0, 10, std::vector<cplx>(9)}, m), DomainError);
}

TEST(Observables, EnergyOfEigenstates)
{
    const WallMotion still(Uniform{1.0, 0.0});
    EXPECT_NEAR(mean_energy(pure(1, 8), still), oracle::pi * oracle::pi, 1e-13);
    const WallMotion moving(Uniform{1.0, -16.0});
    for (int k = 1; k <= 6; ++k) {
        const double t = 0.04;
        EXPECT_DOUBLE_EQ(mean_energy(pure(k, 8, t), moving), energy(k, moving.length(t)));
    }
    // grid path: discrete eigenvalue of the ground mode, O(N^-2) from pi^2
    const double e = mean_energy(grid_mode(1, 200, 1.0), still);
    const double s = std::sin(oracle::pi / 400.0);
    EXPECT_NEAR(e, 4.0 * 200 * 200 * s * s, 1e-9);
    EXPECT_NEAR(e, oracle::pi * oracle::pi, 1e-3);
}

TEST(Observables, EnergyIsConstantForStaticDoescher)
{
    const WallMotion m(Uniform{1.0, 0.0});
    std::vector<cplx> b(6);
    b[0] = 1.0;
    const auto traj = evolve(std::span<const cplx>(b), m, 2.0, {1e-3, 5, 1e-6});
    for (const auto& s : traj.states) EXPECT_NEAR(mean_energy(s, m), oracle::pi * oracle::pi, 1e-13);
}

TEST(Observables, Densities)
{
    const WallMotion m(Uniform{1.0, 0.0});
    const auto d = density(pure(1, 3), m, 101);
    ASSERT_EQ(d.size(), 101u);
    EXPECT_NEAR(d.front(), 0.0, 1e-30);
    EXPECT_NEAR(d.back(), 0.0, 1e-28);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = double(i) / 100.0;
        EXPECT_NEAR(d[i], 2.0 * std::pow(std::sin(oracle::pi * x), 2), 1e-13);
    }
    const ExactUniformSolution ex{2, 1.0, -16.0};
    const double t = 0.05, l = ex.length(t);
    const auto de = density([&](double x) { return ex.psi(x, t); }, l, 51);
    for (std::size_t i = 0; i < de.size(); ++i) {
        const double x = l * double(i) / 50.0;
        EXPECT_NEAR(de[i], 2.0 / l * std::pow(std::sin(2 * oracle::pi * x / l), 2), 1e-11);
    }
    const auto dg = density(grid_mode(1, 100, 1.0), m, 11);
    EXPECT_EQ(dg.front(), 0.0);
    EXPECT_EQ(dg.back(), 0.0);
}

TEST(Observables, AverageError)
{
    const Sampler a = [](double x) { return cplx(std::sin(x), 0.0); };
    const Sampler b = [](double x) { return cplx(std::sin(x), 0.1 * x); };
    EXPECT_EQ(average_error(a, a, 2.0), 0.0);
    EXPECT_EQ(average_error(a, b, 2.0), average_error(b, a, 2.0));
    // (1/l) int (0.1 x)^2 = 0.01 l^2 / 3
    EXPECT_NEAR(average_error(a, b, 2.0), 0.04 / 3.0, 1e-14);
    EXPECT_GE(average_error(b, a, 0.5), 0.0);
}

TEST(Observables, RelativePositionError)
{
    TimeSeries ref{"position", {0.0, 0.5, 1.0}, {0.5, 0.6, 0.7}};
    auto same = relative_x_error(ref, ref);
    for (double v : same.values) EXPECT_EQ(v, 0.0);
    TimeSeries off = ref;
    for (auto& v : off.values) v *= 1.01;
    for (double v : relative_x_error(off, ref).values) EXPECT_NEAR(v, 0.01, 1e-14);
    TimeSeries shorter{"position", {0.0, 0.5}, {0.5, 0.6}};
    EXPECT_THROW(relative_x_error(shorter, ref), DomainError);
    TimeSeries shifted{"position", {0.0, 0.5, 1.1}, {0.5, 0.6, 0.7}};
    EXPECT_THROW(relative_x_error(shifted, ref), DomainError);
}
