#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include "errors.hpp"
#include "quadrature.hpp"

// Units throughout the library: hbar = 1, m = 1/2, so H = -d^2/dx^2 and E_n = (n pi / l)^2.

namespace movwall {

/// l(t) = L0 + a t. Negative a compresses the well.
struct Uniform {
    double L0 = 1.0;
    double a = 0.0;
};

/// l(t) = l0 + a sin(omega t), |a| < l0.
struct Oscillatory {
    double l0 = 1.0;
    double a = 0.0;
    double omega = 1.0;
};

/// l(t) = a - 1 / (1 + b^2 t^2), a > 1.
struct SuddenExpansion {
    double a = 2.0;
    double b = 1.0;
};

/// Trajectory of the right wall; the left wall sits at x = 0. Immutable once built.
class WallMotion {
public:
    using Law = std::variant<Uniform, Oscillatory, SuddenExpansion>;

    WallMotion(Uniform u) : law_(u) {}
    WallMotion(Oscillatory o) : law_(o)
    {
        if (!(std::abs(o.a) < o.l0)) throw DomainError("oscillatory motion requires |a| < l0");
    }
    WallMotion(SuddenExpansion s) : law_(s)
    {
        if (!(s.a > 1.0)) throw DomainError("sudden expansion requires a > 1");
    }

    const Law& law() const { return law_; }
    bool is_uniform() const { return std::holds_alternative<Uniform>(law_); }

    double length(double t) const
    {
        const double l = raw_length(t);
        if (!(l > 0.0)) {
            std::ostringstream msg;
            msg << "wall length " << l << " is not positive at t = " << t;
            throw DomainError(msg.str());
        }
        return l;
    }

    double velocity(double t) const
    {
        return std::visit(
            [t](const auto& m) -> double {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, Uniform>) {
                    return m.a;
                } else if constexpr (std::is_same_v<M, Oscillatory>) {
                    return m.a * m.omega * std::cos(m.omega * t);
                } else {
                    const double q = 1.0 + m.b * m.b * t * t;
                    return 2.0 * m.b * m.b * t / (q * q);
                }
            },
            law_);
    }

    /// theta(t) = int_0^t dtau / l(tau)^2. Closed form for uniform motion,
    /// adaptive quadrature (relative tolerance 1e-10) otherwise.
    double theta(double t) const
    {
        if (t == 0.0) return 0.0;
        if (const auto* u = std::get_if<Uniform>(&law_)) {
            const double l = length(t);
            return t / (u->L0 * l);
        }
        return theta_by_quadrature(t);
    }

    double theta_by_quadrature(double t) const
    {
        if (t == 0.0) return 0.0;
        return quad::integrate(
            [this](double tau) {
                const double l = length(tau);
                return 1.0 / (l * l);
            },
            0.0, t, 1e-10);
    }

    /// Checks l > 0 on a dense uniform sample of [0, t_max] (n_samples + 1 points).
    void validate(double t_max, int n_samples = 10000) const
    {
        if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be finite and non-negative");
        for (int i = 0; i <= n_samples; ++i) {
            const double t = t_max * static_cast<double>(i) / n_samples;
            length(t);
        }
    }

    std::string describe() const
    {
        std::ostringstream out;
        out.precision(17);
        std::visit(
            [&out](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, Uniform>)
                    out << "uniform(L0=" << m.L0 << ", a=" << m.a << ")";
                else if constexpr (std::is_same_v<M, Oscillatory>)
                    out << "oscillatory(l0=" << m.l0 << ", a=" << m.a << ", omega=" << m.omega << ")";
                else
                    out << "sudden_expansion(a=" << m.a << ", b=" << m.b << ")";
            },
            law_);
        return out.str();
    }

private:
    double raw_length(double t) const
    {
        return std::visit(
            [t](const auto& m) -> double {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, Uniform>)
                    return m.L0 + m.a * t;
                else if constexpr (std::is_same_v<M, Oscillatory>)
                    return m.l0 + m.a * std::sin(m.omega * t);
                else
                    return m.a - 1.0 / (1.0 + m.b * m.b * t * t);
            },
            law_);
    }

    Law law_;
};

} // namespace movwall
