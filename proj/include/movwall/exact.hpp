#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>

#include "basis.hpp"
#include "errors.hpp"
#include "motion.hpp"
#include "quadrature.hpp"

namespace movwall {

/// Closed-form solution for a wall moving at constant velocity a from length L0:
/// Psi_n = sqrt(2/l) exp(i alpha xi (x/l)^2 - i n^2 pi^2 (1 - 1/xi) / (4 alpha)) sin(n pi x / l),
/// with xi = l(t)/L0 and alpha = L0 a / 4.
struct ExactUniformSolution {
    int n = 1;
    double L0 = 1.0;
    double a = 0.0;

    static ExactUniformSolution for_motion(const WallMotion& m, int n)
    {
        const auto* u = std::get_if<Uniform>(&m.law());
        if (!u) throw DomainError("exact solution exists only for uniform wall motion");
        return {n, u->L0, u->a};
    }

    double alpha() const { return initial_alpha(L0, a); }
    double length(double t) const { return L0 + a * t; }

    cplx psi(double x, double t) const
    {
        const double l = checked_length(x, t);
        return std::sqrt(2.0 / l) * std::sin(n * kPi * x / l) * phase_factor(x, t, l);
    }

    /// d Psi / dx; the quadratic phase contributes i (a x / 2 l) Psi.
    cplx dpsi_dx(double x, double t) const
    {
        const double l = checked_length(x, t);
        const double kx = n * kPi / l;
        const cplx shape{kx * std::cos(kx * x), a * x / (2.0 * l) * std::sin(kx * x)};
        return std::sqrt(2.0 / l) * shape * phase_factor(x, t, l);
    }

    /// <H> = int |dPsi/dx|^2 dx by Simpson on n_points.
    double mean_energy(double t, std::size_t n_points = 2001) const
    {
        return quad::simpson([&](double x) { return std::norm(dpsi_dx(x, t)); }, 0.0, length(t), n_points);
    }

private:
    double checked_length(double x, double t) const
    {
        const double l = length(t);
        if (!(l > 0.0)) throw DomainError("exact_psi: non-positive well width");
        if (x < 0.0 || x > l) throw DomainError("exact_psi: x outside [0, l(t)]");
        return l;
    }

    cplx phase_factor(double x, double t, double l) const
    {
        if (a == 0.0) return std::polar(1.0, -energy(n, L0) * t);
        const double s = x / l;
        // n^2 pi^2 (1 - 1/xi) / (4 alpha) written as n^2 pi^2 t / (L0 l), which has no 0/0 as a -> 0
        const double dynamic = double(n) * n * kPi2 * t / (L0 * l);
        return std::polar(1.0, alpha() * (l / L0) * s * s - dynamic);
    }
};

inline cplx exact_psi(const ExactUniformSolution& sol, double x, double t) { return sol.psi(x, t); }

} // namespace movwall
