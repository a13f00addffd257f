#pragma once

#include "rational.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace nilharm
{

using Complex = std::complex<double>;

class GridMismatch : public Error
{
public:
    GridMismatch() : Error("symbols live on different grids") {}
};

/// Uniform box [-L, L)^d with N nodes per axis at -L + h k, h = 2L/N.
class Grid
{
public:
    Grid(int d, double half_width, int n) : d_(d), l_(half_width), n_(n)
    {
        if (d < 1 || d > 8)
            throw Error("grid dimension must be between 1 and 8");
        if (!(half_width > 0.0) || !std::isfinite(half_width))
            throw Error("grid half-width must be positive");
        if (n < 8 || (n & (n - 1)) != 0)
            throw Error("points per axis must be a power of two, at least 8");
        h_ = 2.0 * l_ / n_;
        size_ = 1;
        for (int k = 0; k < d_; ++k)
            size_ *= static_cast<std::size_t>(n_);
    }

    int d() const { return d_; }
    double half_width() const { return l_; }
    int points_per_axis() const { return n_; }
    double spacing() const { return h_; }
    std::size_t size() const { return size_; }
    double cell_volume() const { return std::pow(h_, d_); }
    double node(int k) const { return -l_ + h_ * k; }

    /// Node coordinates of a flat index (last axis fastest).
    void point(std::size_t index, double* out) const
    {
        for (int a = d_ - 1; a >= 0; --a)
        {
            out[a] = node(static_cast<int>(index % n_));
            index /= n_;
        }
    }

    void indices(std::size_t index, int* out) const
    {
        for (int a = d_ - 1; a >= 0; --a)
        {
            out[a] = static_cast<int>(index % n_);
            index /= n_;
        }
    }

    /// Flat index of per-axis indices, or -1 when any lies outside [0, N).
    long flat(const int* idx) const
    {
        long f = 0;
        for (int a = 0; a < d_; ++a)
        {
            if (idx[a] < 0 || idx[a] >= n_)
                return -1;
            f = f * n_ + idx[a];
        }
        return f;
    }

    bool operator==(const Grid& o) const { return d_ == o.d_ && l_ == o.l_ && n_ == o.n_; }

private:
    int d_;
    double l_;
    int n_;
    double h_ = 0.0;
    std::size_t size_ = 0;
};

using Analytic = std::function<Complex(const double*)>;

/// Complex samples on a grid plus an optional analytic evaluator.
class SampledSymbol
{
public:
    explicit SampledSymbol(Grid g) : grid_(g), values_(g.size()) {}
    SampledSymbol(Grid g, std::vector<Complex> values) : grid_(g), values_(std::move(values))
    {
        if (values_.size() != grid_.size())
            throw DimensionMismatch("sample count differs from grid size");
    }

    static SampledSymbol from_function(const Grid& g, Analytic f)
    {
        SampledSymbol s(g);
        std::vector<double> x(g.d());
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            g.point(i, x.data());
            s.values_[i] = f(x.data());
        }
        s.analytic_ = std::move(f);
        return s;
    }

    const Grid& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    std::vector<Complex>& values() { return values_; }
    Complex operator[](std::size_t i) const { return values_[i]; }
    bool has_analytic() const { return static_cast<bool>(analytic_); }
    const Analytic& analytic() const { return analytic_; }
    void drop_analytic() { analytic_ = nullptr; }

    /// Value at an arbitrary point: analytic when available, otherwise
    /// multilinear interpolation with zero extension outside the node set.
    Complex evaluate(const double* x) const
    {
        if (analytic_)
            return analytic_(x);
        const int d = grid_.d();
        int base[8];
        double frac[8];
        for (int a = 0; a < d; ++a)
        {
            const double t = (x[a] + grid_.half_width()) / grid_.spacing();
            const double f = std::floor(t);
            if (f < -1.0 || f > grid_.points_per_axis())
                return 0.0;
            base[a] = static_cast<int>(f);
            frac[a] = t - f;
        }
        Complex acc = 0.0;
        int idx[8];
        for (int corner = 0; corner < (1 << d); ++corner)
        {
            double w = 1.0;
            for (int a = 0; a < d; ++a)
            {
                const int bit = (corner >> a) & 1;
                idx[a] = base[a] + bit;
                w *= bit ? frac[a] : 1.0 - frac[a];
            }
            if (w == 0.0)
                continue;
            const long f = grid_.flat(idx);
            if (f >= 0)
                acc += w * values_[static_cast<std::size_t>(f)];
        }
        return acc;
    }

    SampledSymbol& operator*=(Complex s)
    {
        for (auto& v : values_)
            v *= s;
        if (analytic_)
        {
            auto f = analytic_;
            analytic_ = [f, s](const double* x) { return s * f(x); };
        }
        return *this;
    }

private:
    Grid grid_;
    std::vector<Complex> values_;
    Analytic analytic_;
};

inline void require_same_grid(const SampledSymbol& a, const SampledSymbol& b)
{
    if (!(a.grid() == b.grid()))
        throw GridMismatch();
}

/// (sum |f|^p h^d density)^(1/p); p = infinity gives the max modulus.
inline double lp_norm(const SampledSymbol& f, double p, double density = 1.0)
{
    if (std::isinf(p))
    {
        double m = 0.0;
        for (const auto& v : f.values())
            m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : f.values())
        s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid().cell_volume() * density, 1.0 / p);
}

inline double l2_norm(const SampledSymbol& f, double density = 1.0)
{
    double s = 0.0;
    for (const auto& v : f.values())
        s += std::norm(v);
    return std::sqrt(s * f.grid().cell_volume() * density);
}

inline double l2_distance(const SampledSymbol& a, const SampledSymbol& b, double density = 1.0)
{
    require_same_grid(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        s += std::norm(a[i] - b[i]);
    return std::sqrt(s * a.grid().cell_volume() * density);
}

/// Physicists' Hermite polynomial H_n.
inline double hermite(int n, double x)
{
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0)
        return h0;
    for (int k = 1; k < n; ++k)
    {
        double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

/// Product Hermite-Gaussian on R^d with per-axis degree, common width,
/// center and linear phase e^{i <freq, x>}.
struct HermiteGaussian
{
    std::vector<int> degree;
    double width = 1.0;
    std::vector<double> center;
    std::vector<double> freq;
    Complex scale = 1.0;

    Complex operator()(const double* x) const
    {
        double amp = 1.0, phase = 0.0;
        for (std::size_t a = 0; a < degree.size(); ++a)
        {
            const double c = center.empty() ? 0.0 : center[a];
            const double t = (x[a] - c) / width;
            amp *= hermite(degree[a], t) * std::exp(-0.5 * t * t);
            if (!freq.empty())
                phase += freq[a] * x[a];
        }
        return scale * std::polar(amp, phase);
    }
};

/// exp(-|x|^2 / (2 s^2)) normalized to unit mass under density * Lebesgue.
inline Analytic gaussian_bump(int d, double s, const std::vector<double>& center, double density = 1.0)
{
    const double mass = std::pow(2.0 * std::numbers::pi * s * s, 0.5 * d) * density;
    return [d, s, center, mass](const double* x) -> Complex {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a)
        {
            const double t = x[a] - (center.empty() ? 0.0 : center[a]);
            r2 += t * t;
        }
        return std::exp(-0.5 * r2 / (s * s)) / mass;
    };
}

} // namespace nilharm
