#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "motion.hpp"
#include "quadrature.hpp"
#include "clock.hpp"

namespace movwall {

/// Truncated expansion b_k = c_k + i d_k in the instantaneous eigenbasis, with
/// psi(x,t) = sum_k b_k u_k(x,t) exp(-i pi^2 k^2 theta(t)).
struct SpectralState {
    double t = 0.0;
    double theta = 0.0;
    std::vector<double> c;
    std::vector<double> d;

    int k_max() const { return static_cast<int>(c.size()); }
    cplx b(int k) const { return {c[std::size_t(k - 1)], d[std::size_t(k - 1)]}; }

    static SpectralState from_coefficients(std::span<const cplx> b, double t = 0.0, double theta = 0.0)
    {
        SpectralState s;
        s.t = t;
        s.theta = theta;
        s.c.reserve(b.size());
        s.d.reserve(b.size());
        for (const auto& v : b) {
            s.c.push_back(v.real());
            s.d.push_back(v.imag());
        }
        return s;
    }
};

/// Right-hand side of the coefficient system on the packed layout (c_1..c_K, d_1..d_K, theta).
/// The phase factor exp(i eta_kn) is split as p_k conj(p_n) with p_k = exp(i pi^2 k^2 theta),
/// which turns the double sum into one real matrix-vector product per component.
class SpectralRhs {
public:
    SpectralRhs(const WallMotion& motion, const CouplingMatrix& g)
        : motion_(motion), g_(g), k_max_(g.k_max()), p_(std::size_t(k_max_)), w_re_(std::size_t(k_max_)),
          w_im_(std::size_t(k_max_))
    {
    }

    void operator()(double t, std::span<const double> y, std::span<double> dydt)
    {
        const std::size_t K = std::size_t(k_max_);
        const double l = motion_.length(t);
        const double rate = motion_.velocity(t) / l;
        const double theta = y[2 * K];
        dydt[2 * K] = 1.0 / (l * l);
        if (rate == 0.0) {
            for (std::size_t i = 0; i < 2 * K; ++i) dydt[i] = 0.0;
            return;
        }
        for (std::size_t n = 0; n < K; ++n) {
            const double kk = double(n + 1) * double(n + 1);
            p_[n] = std::polar(1.0, kPi2 * kk * theta);
            // w_n = b_n conj(p_n)
            const double c = y[n], d = y[K + n];
            w_re_[n] = c * p_[n].real() + d * p_[n].imag();
            w_im_[n] = d * p_[n].real() - c * p_[n].imag();
        }
        for (std::size_t k = 0; k < K; ++k) {
            const double* row = g_.row(int(k + 1));
            double s_re = 0.0, s_im = 0.0;
            for (std::size_t n = 0; n < K; ++n) {
                s_re += row[n] * w_re_[n];
                s_im += row[n] * w_im_[n];
            }
            // bdot_k = -(l'/l) p_k s_k
            dydt[k] = -rate * (p_[k].real() * s_re - p_[k].imag() * s_im);
            dydt[K + k] = -rate * (p_[k].real() * s_im + p_[k].imag() * s_re);
        }
    }

private:
    const WallMotion& motion_;
    const CouplingMatrix& g_;
    int k_max_;
    std::vector<cplx> p_;
    std::vector<double> w_re_, w_im_;
};

inline std::vector<double> pack(const SpectralState& s)
{
    std::vector<double> y;
    y.reserve(2 * s.c.size() + 1);
    y.insert(y.end(), s.c.begin(), s.c.end());
    y.insert(y.end(), s.d.begin(), s.d.end());
    y.push_back(s.theta);
    return y;
}

inline SpectralState unpack(const std::vector<double>& y, double t)
{
    const std::size_t K = (y.size() - 1) / 2;
    SpectralState s;
    s.t = t;
    s.c.assign(y.begin(), y.begin() + std::ptrdiff_t(K));
    s.d.assign(y.begin() + std::ptrdiff_t(K), y.begin() + std::ptrdiff_t(2 * K));
    s.theta = y[2 * K];
    return s;
}

/// Time derivative of a state: (cdot, ddot) and thetadot in a SpectralState-shaped value.
inline SpectralState rhs(const SpectralState& s, const WallMotion& m, const CouplingMatrix& g)
{
    if (g.k_max() != s.k_max()) throw DomainError("rhs: coupling matrix size does not match the state");
    SpectralRhs f(m, g);
    auto y = pack(s);
    std::vector<double> dy(y.size());
    f(s.t, std::span<const double>(y), std::span<double>(dy));
    return unpack(dy, s.t);
}

inline double norm(const SpectralState& s)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < s.c.size(); ++i) sum += s.c[i] * s.c[i] + s.d[i] * s.d[i];
    return sum;
}

struct SpectralOptions {
    /// RK4 step on the phase clock l(0)^2 theta(t); equals the time step for a static wall.
    double dt = 1e-5;
    int n_samples = 1000;
    /// Relative norm drift that aborts the run; <= 0 disables the check.
    double norm_tolerance = 1e-6;
};

struct SpectralTrajectory {
    std::vector<SpectralState> states;
    double initial_norm = 0.0;
    /// max over samples of |P(t)/P(0) - 1|
    double max_norm_drift = 0.0;
    long steps = 0;
};

/// Fixed-step RK4 evolution of the truncated coefficient system over [0, t_max].
inline SpectralTrajectory evolve(std::span<const cplx> initial, const WallMotion& motion, double t_max,
                                 const SpectralOptions& options = {})
{
    if (!(options.dt > 0.0)) throw DomainError("evolve: dt must be positive");
    if (initial.empty()) throw DomainError("evolve: empty coefficient vector");
    motion.validate(t_max);
    const int k_max = static_cast<int>(initial.size());
    const CouplingMatrix g(k_max);
    SpectralRhs f(motion, g);
    const auto plan = ClockPlan::make(motion, t_max, options.dt, options.n_samples);

    SpectralTrajectory out;
    out.steps = plan.total_steps();
    const auto start = SpectralState::from_coefficients(initial);
    out.initial_norm = norm(start);
    if (!(out.initial_norm > 0.0)) throw DomainError("evolve: initial state has zero norm");
    out.states.reserve(plan.sample_times.size());
    march_on_clock<double>(f, motion, plan, pack(start), [&](std::size_t, double t, std::span<const double> y) {
        out.states.push_back(unpack(std::vector<double>(y.begin(), y.end()), t));
        const double drift = std::abs(norm(out.states.back()) / out.initial_norm - 1.0);
        out.max_norm_drift = std::max(out.max_norm_drift, drift);
        if (options.norm_tolerance > 0.0 && !(drift <= options.norm_tolerance)) {
            std::ostringstream msg;
            msg << "spectral evolution: relative norm drift " << drift << " at t = " << t << " exceeds "
                << options.norm_tolerance << "; reduce dt (currently " << options.dt << ")";
            throw IntegrationError(msg.str());
        }
    });
    return out;
}

inline SpectralTrajectory evolve(const InitialState& init, const WallMotion& motion, double t_max,
                                 const SpectralOptions& options = {})
{
    return evolve(std::span<const cplx>(init.q), motion, t_max, options);
}

/// Evaluates psi(x, t) for one spectral state; the phased amplitudes are computed once.
class SpectralWave {
public:
    SpectralWave(const SpectralState& s, const WallMotion& m)
        : l_(m.length(s.t)), norm_factor_(std::sqrt(2.0 / l_)), amp_(static_cast<std::size_t>(s.k_max()))
    {
        for (int k = 1; k <= s.k_max(); ++k)
            amp_[std::size_t(k - 1)] = s.b(k) * std::polar(1.0, -kPi2 * k * k * s.theta);
    }

    double length() const { return l_; }

    cplx operator()(double x) const
    {
        if (x < 0.0 || x > l_) throw DomainError("reconstruct: position outside [0, l(t)]");
        // sin(k z) by the Chebyshev recurrence
        const double z = kPi * x / l_;
        const double two_cos = 2.0 * std::cos(z);
        double s_prev = 0.0, s_cur = std::sin(z);
        cplx sum{};
        for (const auto& a : amp_) {
            sum += a * s_cur;
            const double s_next = two_cos * s_cur - s_prev;
            s_prev = s_cur;
            s_cur = s_next;
        }
        return norm_factor_ * sum;
    }

private:
    double l_;
    double norm_factor_;
    std::vector<cplx> amp_;
};

/// psi(x, t) at the given positions, all in [0, l(t)].
inline std::vector<cplx> reconstruct(const SpectralState& s, const WallMotion& m, std::span<const double> xs)
{
    const SpectralWave wave(s, m);
    std::vector<cplx> psi;
    psi.reserve(xs.size());
    for (double x : xs) psi.push_back(wave(x));
    return psi;
}

inline cplx reconstruct(const SpectralState& s, const WallMotion& m, double x) { return SpectralWave(s, m)(x); }

} // namespace movwall
