#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "errors.hpp"

namespace movwall::quad {

/// Composite Simpson rule over uniformly spaced samples with spacing h.
/// An odd number of intervals closes with Simpson's 3/8 rule on the last three.
template <typename T>
T simpson(std::span<const T> f, double h)
{
    const std::size_t n = f.size();
    if (n < 2) return T{};
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    std::size_t intervals = n - 1;
    std::size_t even_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    T sum{};
    for (std::size_t i = 0; i + 2 <= even_end; i += 2)
        sum += f[i] + 4.0 * f[i + 1] + f[i + 2];
    sum *= h / 3.0;
    if (even_end != intervals) {
        const std::size_t i = even_end;
        sum += 3.0 * h / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
    }
    return sum;
}

/// Simpson's rule for a callable on [a, b] with n_points (odd) samples.
template <typename F>
auto simpson(F&& f, double a, double b, std::size_t n_points)
{
    using T = decltype(f(a));
    if (n_points < 3) n_points = 3;
    if (n_points % 2 == 0) ++n_points;
    const double h = (b - a) / static_cast<double>(n_points - 1);
    T sum = f(a) + f(b);
    for (std::size_t i = 1; i + 1 < n_points; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return sum * (h / 3.0);
}

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
struct Segment {
    decltype(std::declval<F&>()(0.0)) kronrod;
    double error;
};

template <typename F>
Segment<F> gk15(F& f, double a, double b)
{
    using T = decltype(f(a));
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T gauss = fc * kWg[3];
    T kronrod = fc * kWgk[7];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

template <typename F>
auto adaptive(F& f, double a, double b, double tol, int depth, double& worst_error)
{
    auto seg = gk15(f, a, b);
    if (seg.error <= tol) return seg.kronrod;
    if (depth == 0) {
        worst_error = std::max(worst_error, seg.error);
        return seg.kronrod;
    }
    const double mid = 0.5 * (a + b);
    return adaptive(f, a, mid, 0.5 * tol, depth - 1, worst_error) +
           adaptive(f, mid, b, 0.5 * tol, depth - 1, worst_error);
}

} // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature by recursive bisection.
/// The target is max(abs_tol, rel_tol * |I|), with |I| from a 16-panel first pass.
/// Throws NumericalError if the depth limit is reached before the tolerance is met.
template <typename F>
auto integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
               int max_depth = 40)
{
    using T = decltype(f(a));
    T coarse{};
    const double width = (b - a) / 16.0;
    for (int i = 0; i < 16; ++i) coarse += detail::gk15(f, a + i * width, a + (i + 1) * width).kronrod;
    const double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
    if (tol == 0.0) return coarse;
    double worst = 0.0;
    T value{};
    for (int i = 0; i < 16; ++i)
        value += detail::adaptive(f, a + i * width, a + (i + 1) * width, tol / 16.0, max_depth, worst);
    if (worst > 0.0) {
        throw NumericalError("adaptive quadrature did not converge: achieved error " +
                             std::to_string(worst) + " against tolerance " + std::to_string(tol));
    }
    return value;
}

} // namespace movwall::quad
