#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"
#include "motion.hpp"
#include "rk4.hpp"

namespace movwall {

/// Sampling and stepping plan on the phase clock tau = l(0)^2 theta(t).
///
/// Both solvers are stiff in proportion to 1/l(t)^2 (mode phases pi^2 k^2 theta, grid
/// Laplacian N^2 / l^2). Fixed RK4 steps of size dt in tau keep the per-step phase advance
/// constant as the well shrinks; for a static wall tau = t. Outputs land exactly on
/// n_samples uniformly spaced times in [0, t_max]; between two outputs the clock interval
/// is split into ceil(dtau / dt) equal steps.
struct ClockPlan {
    double l0 = 1.0;
    std::vector<double> sample_times;
    std::vector<double> sample_clock;
    std::vector<long> segment_steps;

    long total_steps() const
    {
        long n = 0;
        for (long s : segment_steps) n += s;
        return n;
    }

    static ClockPlan make(const WallMotion& m, double t_max, double dt, int n_samples)
    {
        if (!(dt > 0.0)) throw DomainError("time step must be positive");
        ClockPlan plan;
        plan.l0 = m.length(0.0);
        const int n = t_max > 0.0 ? std::max(n_samples, 2) : 1;
        plan.sample_times.resize(std::size_t(n));
        plan.sample_clock.resize(std::size_t(n));
        for (int i = 0; i < n; ++i)
            plan.sample_times[std::size_t(i)] = n == 1 ? 0.0 : t_max * double(i) / double(n - 1);
        if (n > 1) plan.sample_times.back() = t_max;
        const double l02 = plan.l0 * plan.l0;
        plan.sample_clock[0] = 0.0;
        for (std::size_t i = 1; i < plan.sample_times.size(); ++i) {
            plan.sample_clock[i] = l02 * m.theta(plan.sample_times[i]);
            const double span = plan.sample_clock[i] - plan.sample_clock[i - 1];
            plan.segment_steps.push_back(std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9))));
        }
        return plan;
    }
};

/// Integrates y' = f(t, y) over the plan, calling on_sample(index, t, y) at every output.
/// `rhs(t, y, dydt)` is the physical-time right-hand side.
template <typename T, typename Rhs, typename OnSample>
void march_on_clock(Rhs& rhs, const WallMotion& m, const ClockPlan& plan, std::vector<T> y, OnSample&& on_sample)
{
    const std::size_t n = y.size();
    const double inv_l02 = 1.0 / (plan.l0 * plan.l0);
    // extended state: y followed by the physical time
    auto clocked = [&](double, std::span<const T> ext, std::span<T> dext) {
        const double t = std::real(ext[n]);
        const double l = m.length(t);
        const double w = l * l * inv_l02;
        rhs(t, ext.first(n), dext.first(n));
        for (std::size_t i = 0; i < n; ++i) dext[i] *= w;
        dext[n] = T(w);
    };
    std::vector<T> ext(y.begin(), y.end());
    ext.push_back(T(0.0));
    Rk4<T> integrator(ext.size());
    on_sample(std::size_t{0}, plan.sample_times[0], std::span<const T>(ext).first(n));
    for (std::size_t seg = 0; seg < plan.segment_steps.size(); ++seg) {
        const double start = plan.sample_clock[seg];
        const double h = (plan.sample_clock[seg + 1] - start) / double(plan.segment_steps[seg]);
        for (long i = 0; i < plan.segment_steps[seg]; ++i)
            integrator.step(clocked, start + h * double(i), ext, h);
        // the carried time agrees with the sample time up to integration error; pin it
        ext[n] = T(plan.sample_times[seg + 1]);
        on_sample(seg + 1, plan.sample_times[seg + 1], std::span<const T>(ext).first(n));
    }
}

} // namespace movwall
