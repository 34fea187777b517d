#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace movwall {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

/// u_n(x) = sqrt(2/l) sin(n pi x / l), the n-th eigenmode of a well of width l.
inline double eigenfunction(int n, double x, double l)
{
    if (!(l > 0.0)) throw DomainError("eigenfunction: well width must be positive");
    if (x < 0.0 || x > l) throw DomainError("eigenfunction: x outside [0, l]");
    return std::sqrt(2.0 / l) * std::sin(n * kPi * x / l);
}

/// E_n = (n pi / l)^2.
inline double energy(int n, double l) { return kPi2 * n * n / (l * l); }

/// eta_kn = pi^2 (k^2 - n^2) theta.
inline double phase(int k, int n, double theta) { return kPi2 * (double(k) * k - double(n) * n) * theta; }

/// Time-independent part g_kn of the mode coupling Delta_kn(t) = g_kn l'(t) / l(t).
/// Antisymmetric with zero diagonal. Indices are 1-based in at(); storage is row-major.
class CouplingMatrix {
public:
    explicit CouplingMatrix(int k_max) : k_max_(k_max), entries_(std::size_t(k_max) * k_max, 0.0)
    {
        if (k_max < 1) throw DomainError("coupling: k_max must be at least 1");
        for (int k = 1; k <= k_max; ++k) {
            for (int n = 1; n <= k_max; ++n) {
                if (k == n) continue;
                const double sign = ((k + n) % 2 == 0) ? 1.0 : -1.0;
                entries_[index(k, n)] = sign * 2.0 * k * n / (double(k) * k - double(n) * n);
            }
        }
    }

    int k_max() const { return k_max_; }
    double at(int k, int n) const { return entries_[index(k, n)]; }
    const double* row(int k) const { return entries_.data() + std::size_t(k - 1) * k_max_; }

private:
    std::size_t index(int k, int n) const { return std::size_t(k - 1) * k_max_ + std::size_t(n - 1); }

    int k_max_;
    std::vector<double> entries_;
};

inline CouplingMatrix coupling(int k_max) { return CouplingMatrix(k_max); }

/// Decomposition of psi_j(x,0) = u_j(x,0) exp(i alpha x^2 / l0^2) in the instantaneous basis.
/// alpha = l(0) l'(0) / 4 in fixed units; q[k-1] holds q_jk.
struct InitialState {
    int j = 1;
    double alpha = 0.0;
    std::vector<cplx> q;

    double captured_norm() const
    {
        double sum = 0.0;
        for (const auto& v : q) sum += std::norm(v);
        return sum;
    }
};

/// Below this |alpha| the second-order small-alpha expansion replaces the Fresnel forms.
inline constexpr double kAlphaSmall = 1e-3;

/// alpha = (m / 2 hbar) l(0) l'(0) with m = 1/2, hbar = 1.
inline double initial_alpha(double l0, double v0) { return 0.25 * l0 * v0; }

namespace detail {

inline cplx q_fresnel(int j, int k, double alpha)
{
    // q(-alpha) = conj(q(alpha)): the integrand is conjugated.
    if (alpha < 0.0) return std::conj(q_fresnel(j, k, -alpha));
    const double root = std::sqrt(alpha);
    const double scale = std::sqrt(2.0 * kPi) * root;
    const double pref = std::sqrt(kPi / 2.0) / (2.0 * root);
    const auto diff_minus_hi = fresnel((kPi * j + 2.0 * alpha - k * kPi) / scale);
    const auto diff_minus_lo = fresnel((kPi * j - 2.0 * alpha - k * kPi) / scale);
    const auto sum_lo = fresnel(((j + k) * kPi - 2.0 * alpha) / scale);
    const auto sum_hi = fresnel((kPi * (j + k) + 2.0 * alpha) / scale);
    const double phi_minus = kPi2 * double(j - k) * (j - k) / (4.0 * alpha);
    const double phi_plus = kPi2 * double(j + k) * (j + k) / (4.0 * alpha);
    const double cm = std::cos(phi_minus), sm = std::sin(phi_minus);
    const double cp = std::cos(phi_plus), sp = std::sin(phi_plus);

    const double dc_minus = diff_minus_hi.c - diff_minus_lo.c;
    const double ds_minus = diff_minus_hi.s - diff_minus_lo.s;
    const double dc_plus = sum_lo.c - sum_hi.c;
    const double ds_plus = sum_lo.s - sum_hi.s;

    const double re = dc_minus * cm + dc_plus * cp + ds_minus * sm + ds_plus * sp;
    const double im = -dc_minus * sm - dc_plus * sp + ds_minus * cm + ds_plus * cp;
    return {pref * re, pref * im};
}

} // namespace detail

/// Second-order small-alpha expansion of q_jk (real part to alpha^2, imaginary part to alpha).
inline cplx q_small_alpha(int j, int k, double alpha)
{
    const double pi4 = kPi2 * kPi2;
    const double jj = double(j) * j, kk = double(k) * k;
    if (j == k) {
        const double re = 1.0 + (-0.1 + (-3.0 + 2.0 * jj * kPi2) / (4.0 * jj * jj * pi4)) * alpha * alpha;
        const double im = (2.0 - 3.0 / (jj * kPi2)) * alpha / 6.0;
        return {re, im};
    }
    const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
    const double diff = jj - kk;
    const double d2 = diff * diff;
    const double re = -sign * 8.0 * j * k * (-12.0 * (jj + kk) + d2 * kPi2) * alpha * alpha / (d2 * d2 * pi4);
    const double im = sign * 8.0 * j * k * alpha / (d2 * kPi2);
    return {re, im};
}

/// q_jk through the closed Fresnel form (or the small-alpha expansion for |alpha| < kAlphaSmall).
inline cplx initial_coefficient(int j, int k, double alpha)
{
    if (alpha == 0.0) return j == k ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    if (std::abs(alpha) < kAlphaSmall) return q_small_alpha(j, k, alpha);
    return detail::q_fresnel(j, k, alpha);
}

inline InitialState decompose_initial(int j, double alpha, int k_max)
{
    if (j < 1) throw DomainError("decompose_initial: j must be at least 1");
    if (k_max < j) throw DomainError("decompose_initial: k_max must be >= j");
    InitialState state{j, alpha, std::vector<cplx>(std::size_t(k_max))};
    for (int k = 1; k <= k_max; ++k) state.q[std::size_t(k - 1)] = initial_coefficient(j, k, alpha);
    return state;
}

} // namespace movwall
