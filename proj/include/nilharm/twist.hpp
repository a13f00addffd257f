#pragma once

#include "grid.hpp"
#include "orbit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nilharm
{

namespace detail
{

/// Fast path for an additive law with bilinear alpha: a(x - y) sits on the
/// lattice and e^{i x^T A y} factors over the axes of y, so every output node
/// is one reduction whose innermost axis is a tight loop.
inline void twisted_convolve_lattice(const TwistedGroup& g, const SampledSymbol& a, const SampledSymbol& b,
                                     double scale, std::vector<Complex>& out)
{
    const Grid& grid = a.grid();
    const int d = grid.d(), n = grid.points_per_axis(), half = n / 2;
    const auto& A = g.bilinear_matrix();
    const double* av = reinterpret_cast<const double*>(a.values().data());
    const double* bv = reinterpret_cast<const double*>(b.values().data());
    std::vector<double> nodes(n);
    for (int k = 0; k < n; ++k)
        nodes[k] = grid.node(k);

    std::vector<double> x(d), c(d);
    std::vector<int> kx(d), ly(d);
    // per-axis phase tables e^{i c_j y_j}, interleaved re/im
    std::vector<double> phase(static_cast<std::size_t>(d) * n * 2);
    for (std::size_t o = 0; o < grid.size(); ++o)
    {
        grid.indices(o, kx.data());
        grid.point(o, x.data());
        for (int j = 0; j < d; ++j)
        {
            c[j] = 0.0;
            for (int i = 0; i < d; ++i)
                c[j] += x[i] * A[static_cast<std::size_t>(i * d + j)];
            for (int l = 0; l < n; ++l)
            {
                const double t = c[j] * nodes[l];
                phase[(static_cast<std::size_t>(j) * n + l) * 2] = std::cos(t);
                phase[(static_cast<std::size_t>(j) * n + l) * 2 + 1] = std::sin(t);
            }
        }
        // valid y range per axis so that k - l + N/2 stays in [0, N)
        std::vector<int> lo(d), hi(d);
        bool empty = false;
        for (int j = 0; j < d; ++j)
        {
            lo[j] = std::max(0, kx[j] + half - n + 1);
            hi[j] = std::min(n - 1, kx[j] + half);
            empty = empty || lo[j] > hi[j];
        }
        double sr = 0.0, si = 0.0;
        if (!empty)
        {
            // odometer over the leading d-1 axes of y
            for (int j = 0; j + 1 < d; ++j)
                ly[j] = lo[j];
            const int last = d - 1;
            const double* pl = phase.data() + static_cast<std::size_t>(last) * n * 2;
            while (true)
            {
                double wr = 1.0, wi = 0.0;
                long brow = 0, arow = 0;
                for (int j = 0; j < last; ++j)
                {
                    const double* p = phase.data() + (static_cast<std::size_t>(j) * n + ly[j]) * 2;
                    const double tr = wr * p[0] - wi * p[1];
                    wi = wr * p[1] + wi * p[0];
                    wr = tr;
                    brow = brow * n + ly[j];
                    arow = arow * n + (kx[j] - ly[j] + half);
                }
                brow *= n;
                arow *= n;
                const long ashift = arow + kx[last] + half;
                double ir = 0.0, ii = 0.0;
                for (int l = lo[last]; l <= hi[last]; ++l)
                {
                    const double* bp = bv + (brow + l) * 2;
                    const double* ap = av + (ashift - l) * 2;
                    const double* pp = pl + static_cast<std::size_t>(l) * 2;
                    const double er = pp[0] * bp[0] - pp[1] * bp[1];
                    const double ei = pp[0] * bp[1] + pp[1] * bp[0];
                    ir += er * ap[0] - ei * ap[1];
                    ii += er * ap[1] + ei * ap[0];
                }
                sr += wr * ir - wi * ii;
                si += wr * ii + wi * ir;
                int j = last - 1;
                while (j >= 0 && ++ly[j] > hi[j])
                {
                    ly[j] = lo[j];
                    --j;
                }
                if (j < 0)
                    break;
            }
        }
        out[o] = Complex(sr * scale, si * scale);
    }
}

} // namespace detail

enum class Quadrature
{
    automatic,
    general,
};

/// (a *_e b)(x) = int e^{-i alpha(x,-y)} a(x ._e (-y)) b(y) dmu(y) with
/// dmu = density * Lebesgue, by the node rule on b's grid. The automatic
/// choice reads a on the lattice when the law is additive with bilinear alpha.
inline SampledSymbol twisted_convolve(const TwistedGroup& g, const SampledSymbol& a, const SampledSymbol& b,
                                      double density = 1.0, Quadrature rule = Quadrature::automatic)
{
    require_same_grid(a, b);
    const Grid& grid = b.grid();
    if (grid.d() != g.d())
        throw DimensionMismatch("grid dimension differs from predual dimension");
    const double scale = grid.cell_volume() * density;
    std::vector<Complex> out(grid.size());
    auto vanishes = [](const SampledSymbol& s) {
        return std::all_of(s.values().begin(), s.values().end(), [](Complex v) { return v == 0.0; });
    };
    if (vanishes(a) || vanishes(b))
        return SampledSymbol(grid, std::move(out));
    if (rule == Quadrature::automatic && g.additive() && g.bilinear())
    {
        detail::twisted_convolve_lattice(g, a, b, scale, out);
        return SampledSymbol(grid, std::move(out));
    }
    const int d = grid.d();
    std::vector<double> x(d), y(d), my(d), z(d);
    for (std::size_t o = 0; o < grid.size(); ++o)
    {
        grid.point(o, x.data());
        Complex s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            if (b[i] == 0.0)
                continue;
            grid.point(i, y.data());
            for (int k = 0; k < d; ++k)
                my[k] = -y[k];
            g.product(x.data(), my.data(), z.data());
            s += std::polar(1.0, -g.alpha(x.data(), my.data())) * a.evaluate(z.data()) * b[i];
        }
        out[o] = s * scale;
    }
    return SampledSymbol(grid, std::move(out));
}

/// (phi *_e delta_v)(x) = e^{-i alpha(x,-v)} phi(x ._e (-v)), evaluated pointwise.
inline SampledSymbol delta_action(const TwistedGroup& g, const SampledSymbol& phi, const std::vector<double>& v)
{
    const Grid& grid = phi.grid();
    if (grid.d() != g.d() || static_cast<int>(v.size()) != g.d())
        throw DimensionMismatch("shift dimension differs from predual dimension");
    std::vector<double> mv(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        mv[k] = -v[k];
    Analytic f = [g, phi, mv](const double* x) {
        std::vector<double> z(mv.size());
        g.product(x, mv.data(), z.data());
        return std::polar(1.0, -g.alpha(x, mv.data())) * phi.evaluate(z.data());
    };
    return SampledSymbol::from_function(grid, f);
}

} // namespace nilharm
