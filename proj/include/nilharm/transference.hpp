#pragma once

#include "grid.hpp"

#include <cmath>
#include <numbers>
#include <vector>

// Functions on T x G_e sampled at K uniform angles t_k = e^{2 pi i k / K}
// carrying mass 1/K each, times the predual grid.

namespace nilharm
{

class TorusGridFunction
{
public:
    TorusGridFunction(int angles, Grid grid) : k_(angles), grid_(grid), values_(static_cast<std::size_t>(angles) * grid.size())
    {
        if (angles < 8)
            throw Error("torus needs at least 8 angle samples");
    }

    int angles() const { return k_; }
    const Grid& grid() const { return grid_; }
    Complex angle(int k) const { return std::polar(1.0, 2.0 * std::numbers::pi * k / k_); }
    Complex& at(int k, std::size_t x) { return values_[static_cast<std::size_t>(k) * grid_.size() + x]; }
    Complex at(int k, std::size_t x) const { return values_[static_cast<std::size_t>(k) * grid_.size() + x]; }
    const std::vector<Complex>& values() const { return values_; }

private:
    int k_;
    Grid grid_;
    std::vector<Complex> values_;
};

inline constexpr int default_torus_angles = 64;

/// psi#(t, x) = t^{-1} psi(x).
inline TorusGridFunction sharp_map(const SampledSymbol& psi, int angles = default_torus_angles)
{
    TorusGridFunction out(angles, psi.grid());
    for (int k = 0; k < angles; ++k)
    {
        const Complex inv = std::conj(out.angle(k));
        for (std::size_t x = 0; x < psi.grid().size(); ++x)
            out.at(k, x) = inv * psi[x];
    }
    return out;
}

/// phi-flat(x) = int_T phi(s, x) s ds.
inline SampledSymbol flat_map(const TorusGridFunction& phi)
{
    std::vector<Complex> out(phi.grid().size());
    for (int k = 0; k < phi.angles(); ++k)
    {
        const Complex s = phi.angle(k);
        for (std::size_t x = 0; x < out.size(); ++x)
            out[x] += phi.at(k, x) * s;
    }
    for (auto& v : out)
        v /= static_cast<double>(phi.angles());
    return SampledSymbol(phi.grid(), std::move(out));
}

/// (P phi)(t, x) = t^{-1} int_T phi(s, x) s ds.
inline TorusGridFunction proj_p(const TorusGridFunction& phi)
{
    return sharp_map(flat_map(phi), phi.angles());
}

/// (sum_k K^{-1} sum_x |phi|^p h^d density)^{1/p}.
inline double lp_norm(const TorusGridFunction& phi, double p, double density = 1.0)
{
    double s = 0.0;
    for (const auto& v : phi.values())
        s += std::pow(std::abs(v), p);
    return std::pow(s * phi.grid().cell_volume() * density / phi.angles(), 1.0 / p);
}

inline double max_distance(const TorusGridFunction& a, const TorusGridFunction& b)
{
    if (a.angles() != b.angles() || !(a.grid() == b.grid()))
        throw GridMismatch();
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

} // namespace nilharm
