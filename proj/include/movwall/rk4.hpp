#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace movwall {

/// Classic fixed-step fourth-order Runge-Kutta for y' = f(t, y) on a flat vector.
/// `rhs(t, y, dydt)` receives spans and must write dydt. Scratch buffers are reused across steps.
template <typename T>
class Rk4 {
public:
    explicit Rk4(std::size_t size) : k1_(size), k2_(size), k3_(size), k4_(size), tmp_(size) {}

    template <typename Rhs>
    void step(Rhs& rhs, double t, std::vector<T>& y, double dt)
    {
        const std::size_t n = y.size();
        const double half = 0.5 * dt;
        rhs(t, std::span<const T>(y), std::span<T>(k1_));
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k1_[i];
        rhs(t + half, std::span<const T>(tmp_), std::span<T>(k2_));
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k2_[i];
        rhs(t + half, std::span<const T>(tmp_), std::span<T>(k3_));
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
        rhs(t + dt, std::span<const T>(tmp_), std::span<T>(k4_));
        const double sixth = dt / 6.0;
        for (std::size_t i = 0; i < n; ++i)
            y[i] += sixth * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }

private:
    std::vector<T> k1_, k2_, k3_, k4_, tmp_;
};

} // namespace movwall
