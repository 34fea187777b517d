#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "motion.hpp"
#include "quadrature.hpp"
#include "clock.hpp"

namespace movwall {

/// Finite-difference reference scheme on the scaled coordinate y = x / l(t) in [0, 1].
/// phi holds the N-1 interior values phi(y_n), y_n = n/N; phi(0) = phi(1) = 0 implicitly.
/// The physical wavefunction is psi(x, t) = phi(x / l(t), t).
struct GridState {
    double t = 0.0;
    int N = 0;
    std::vector<cplx> phi;
};

/// dphi/dt = (i / l^2) phi_yy + (l'/l) y phi_y with second-order central differences.
class FdRhs {
public:
    FdRhs(const WallMotion& motion, int N) : motion_(motion), N_(N)
    {
        if (N < 3) throw DomainError("finite-difference grid needs N >= 3");
    }

    void operator()(double t, std::span<const cplx> phi, std::span<cplx> dphi) const
    {
        const double l = motion_.length(t);
        const double rate = motion_.velocity(t) / l;
        const double n2 = double(N_) * N_;
        const double lap = n2 / (l * l);
        const std::size_t M = phi.size();
        for (std::size_t i = 0; i < M; ++i) {
            const cplx left = i == 0 ? cplx{} : phi[i - 1];
            const cplx right = i + 1 == M ? cplx{} : phi[i + 1];
            const cplx d2 = (right - 2.0 * phi[i] + left) * lap;
            // y_n * (phi_{n+1} - phi_{n-1}) * N / 2 with y_n = n / N
            const double n = double(i + 1);
            const cplx ydy = 0.5 * n * (right - left);
            dphi[i] = cplx{-d2.imag(), d2.real()} + rate * ydy;
        }
    }

private:
    const WallMotion& motion_;
    int N_;
};

inline GridState fd_rhs(const GridState& s, const WallMotion& m)
{
    FdRhs f(m, s.N);
    GridState out{s.t, s.N, std::vector<cplx>(s.phi.size())};
    f(s.t, std::span<const cplx>(s.phi), std::span<cplx>(out.phi));
    return out;
}

/// |psi|^2 integrated over [0, l(t)] by composite Simpson on the grid nodes.
inline double norm(const GridState& s, const WallMotion& m)
{
    const double l = m.length(s.t);
    std::vector<double> dens(std::size_t(s.N) + 1, 0.0);
    for (std::size_t i = 0; i < s.phi.size(); ++i) dens[i + 1] = std::norm(s.phi[i]);
    return quad::simpson<double>(dens, l / s.N);
}

struct FdOptions {
    /// RK4 step on the phase clock l(0)^2 theta(t), shared with the spectral solver.
    double dt = 1e-5;
    int n_samples = 1000;
    /// Relative norm drift above which the run is annotated (never fatal).
    double warn_drift = 0.1;
};

struct FdTrajectory {
    std::vector<GridState> states;
    double initial_norm = 0.0;
    double max_norm_drift = 0.0;
    bool norm_warning = false;
    long steps = 0;
};

/// Samples psi0 on x_n = y_n l(0) and integrates with the shared fixed-step RK4.
inline FdTrajectory fd_evolve(const std::function<cplx(double)>& psi0, const WallMotion& motion, int N,
                              double t_max, const FdOptions& options = {})
{
    if (!(options.dt > 0.0)) throw DomainError("fd_evolve: dt must be positive");
    motion.validate(t_max);
    FdRhs f(motion, N);
    const double l0 = motion.length(0.0);
    std::vector<cplx> phi(static_cast<std::size_t>(N - 1));
    for (int n = 1; n < N; ++n) phi[std::size_t(n - 1)] = psi0(l0 * n / N);

    const auto plan = ClockPlan::make(motion, t_max, options.dt, options.n_samples);
    FdTrajectory out;
    out.steps = plan.total_steps();
    out.initial_norm = norm(GridState{0.0, N, phi}, motion);
    if (!(out.initial_norm > 0.0)) throw DomainError("fd_evolve: initial state has zero norm");
    out.states.reserve(plan.sample_times.size());
    march_on_clock<cplx>(f, motion, plan, std::move(phi), [&](std::size_t, double t, std::span<const cplx> y) {
        out.states.push_back(GridState{t, N, std::vector<cplx>(y.begin(), y.end())});
        const double drift = std::abs(norm(out.states.back(), motion) / out.initial_norm - 1.0);
        if (!std::isfinite(drift)) throw IntegrationError("fd_evolve: solution diverged; reduce dt");
        out.max_norm_drift = std::max(out.max_norm_drift, drift);
    });
    out.norm_warning = out.max_norm_drift > options.warn_drift;
    return out;
}

/// Piecewise-cubic (four-node Lagrange) interpolant of psi(x) from a grid state,
/// using the Dirichlet boundary values.
inline std::function<cplx(double)> fd_sampler(const GridState& s, const WallMotion& m)
{
    const double l = m.length(s.t);
    std::vector<cplx> nodes(std::size_t(s.N) + 1, cplx{});
    for (std::size_t i = 0; i < s.phi.size(); ++i) nodes[i + 1] = s.phi[i];
    const int N = s.N;
    return [nodes = std::move(nodes), N, l](double x) -> cplx {
        if (x < 0.0 || x > l) throw DomainError("fd_sampler: x outside [0, l(t)]");
        const double u = x / l * N;
        int i0 = static_cast<int>(std::floor(u)) - 1;
        i0 = std::clamp(i0, 0, N - 3);
        cplx sum{};
        for (int a = 0; a < 4; ++a) {
            double w = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) w *= (u - (i0 + b)) / double(a - b);
            sum += w * nodes[std::size_t(i0 + a)];
        }
        return sum;
    };
}

} // namespace movwall
