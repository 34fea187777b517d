#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"

namespace movwall {

/// C(x) = int_0^x cos(pi t^2 / 2) dt and S(x) = int_0^x sin(pi t^2 / 2) dt.
struct FresnelPair {
    double c = 0.0;
    double s = 0.0;
};

namespace detail {

// Below this |x| the Maclaurin series is summed; above it the auxiliary
// functions are obtained from a continued fraction.
inline constexpr double kFresnelSwitch = 1.5;

inline FresnelPair fresnel_series(double x)
{
    // C + iS = sum_m (i pi / 2)^m x^(2m+1) / (m! (2m+1))
    const double z = 0.5 * std::numbers::pi * x * x;
    double term = x; // z^m x / m!
    double c = 0.0, s = 0.0;
    for (int m = 0; m < 200; ++m) {
        const double contrib = term / (2 * m + 1);
        switch (m % 4) {
        case 0: c += contrib; break;
        case 1: s += contrib; break;
        case 2: c -= contrib; break;
        default: s -= contrib; break;
        }
        if (std::abs(contrib) < 1e-17 * (std::abs(c) + std::abs(s))) break;
        term *= z / (m + 1);
    }
    return {c, s};
}

// Lentz evaluation of the continued fraction for the complementary error
// function along the diagonal; x > 0.
inline FresnelPair fresnel_continued_fraction(double x)
{
    using cplx = std::complex<double>;
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double pix2 = std::numbers::pi * x * x;
    cplx b(1.0, -pix2);
    cplx cc(1.0 / tiny, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    double n = -1.0;
    for (int k = 2; k < 100000; ++k) {
        n += 2.0;
        const double a = -n * (n + 1.0);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cplx del = cc * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) {
            h *= cplx(x, -x);
            const cplx cs = cplx(0.5, 0.5) * (1.0 - std::polar(1.0, 0.5 * pix2) * h);
            return {cs.real(), cs.imag()};
        }
    }
    throw NumericalError("Fresnel continued fraction did not converge");
}

} // namespace detail

inline FresnelPair fresnel(double x)
{
    if (std::isnan(x)) throw DomainError("fresnel: NaN argument");
    if (std::isinf(x)) return x > 0 ? FresnelPair{0.5, 0.5} : FresnelPair{-0.5, -0.5};
    const double ax = std::abs(x);
    FresnelPair r = ax <= detail::kFresnelSwitch ? detail::fresnel_series(ax)
                                                 : detail::fresnel_continued_fraction(ax);
    if (x < 0.0) {
        r.c = -r.c;
        r.s = -r.s;
    }
    return r;
}

} // namespace movwall
