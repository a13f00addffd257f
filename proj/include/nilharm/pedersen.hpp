#pragma once

#include "check.hpp"
#include "grid.hpp"
#include "orbit.hpp"
#include "twist.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

// Heisenberg realization on H = L^2(R): for X = q X_2 + p X_3,
//
//   (pi(X) f)(x) = e^{i(q x + q p / 2)} f(x + p),
//
// so T(b) = rho int b(X) pi(X) dX has kernel
//
//   K(x, y) = rho int b(q, y - x) e^{i q (x + y) / 2} dq
//
// and Tr T(b) = 2 pi rho b(0). The line grid shares L and N with the symbol
// grid, which makes every p = y - x a node of the p axis.

namespace nilharm
{

class DimensionNot2 : public Error
{
public:
    DimensionNot2() : Error("the Heisenberg realization needs a 2-dimensional predual") {}
};

inline constexpr double heisenberg_density = 1.0 / (2.0 * std::numbers::pi);

/// Kernel matrix K on the line grid; operators act by (K f)_k = sum_l K_kl f_l w.
class DiscretizedOperator
{
public:
    DiscretizedOperator(int size, double weight)
        : size_(size), weight_(weight), k_(static_cast<std::size_t>(size) * size)
    {
    }

    int size() const { return size_; }
    double weight() const { return weight_; }
    Complex& operator()(int i, int j) { return k_[static_cast<std::size_t>(i) * size_ + j]; }
    Complex operator()(int i, int j) const { return k_[static_cast<std::size_t>(i) * size_ + j]; }
    const std::vector<Complex>& kernel() const { return k_; }

    Complex trace() const
    {
        Complex t = 0.0;
        for (int i = 0; i < size_; ++i)
            t += (*this)(i, i);
        return t * weight_;
    }

    double hs_norm() const
    {
        double s = 0.0;
        for (const auto& v : k_)
            s += std::norm(v);
        return std::sqrt(s) * weight_;
    }

    DiscretizedOperator adjoint() const
    {
        DiscretizedOperator r(size_, weight_);
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j)
                r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    DiscretizedOperator operator*(const DiscretizedOperator& o) const
    {
        check(o);
        DiscretizedOperator r(size_, weight_);
        for (int i = 0; i < size_; ++i)
            for (int m = 0; m < size_; ++m)
            {
                const Complex a = (*this)(i, m) * weight_;
                if (a == 0.0)
                    continue;
                for (int j = 0; j < size_; ++j)
                    r(i, j) += a * o(m, j);
            }
        return r;
    }

    DiscretizedOperator operator-(const DiscretizedOperator& o) const
    {
        check(o);
        DiscretizedOperator r = *this;
        for (std::size_t i = 0; i < k_.size(); ++i)
            r.k_[i] -= o.k_[i];
        return r;
    }

    std::vector<Complex> apply(const std::vector<Complex>& f) const
    {
        std::vector<Complex> out(size_);
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j)
                out[i] += (*this)(i, j) * f[j] * weight_;
        return out;
    }

private:
    void check(const DiscretizedOperator& o) const
    {
        if (o.size_ != size_ || o.weight_ != weight_)
            throw GridMismatch();
    }

    int size_;
    double weight_;
    std::vector<Complex> k_;
};

namespace detail
{

inline void require_heisenberg_grids(const Grid& plane, const Grid& line)
{
    if (plane.d() != 2)
        throw DimensionNot2();
    if (line.d() != 1 || line.half_width() != plane.half_width()
        || line.points_per_axis() != plane.points_per_axis())
        throw GridMismatch();
}

} // namespace detail

/// T(b) with the q integral done by the node rule; p = y - x is read off the
/// p axis directly, and kernel entries whose p leaves the box vanish.
inline DiscretizedOperator pedersen_transform(const SampledSymbol& b, const Grid& line, double density)
{
    const Grid& plane = b.grid();
    detail::require_heisenberg_grids(plane, line);
    const int n = plane.points_per_axis(), half = n / 2;
    const double h = plane.spacing();
    // phase[j][s] = e^{i q_j (x_k + x_l) / 2} with s = k + l
    std::vector<Complex> phase(static_cast<std::size_t>(n) * (2 * n - 1));
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < 2 * n - 1; ++s)
            phase[static_cast<std::size_t>(j) * (2 * n - 1) + s]
                = std::polar(1.0, plane.node(j) * (-plane.half_width() + 0.5 * h * s));
    DiscretizedOperator t(n, line.spacing());
    const auto& v = b.values();
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
        {
            const int m = l - k + half;
            if (m < 0 || m >= n)
                continue;
            Complex s = 0.0;
            for (int j = 0; j < n; ++j)
                s += v[static_cast<std::size_t>(j) * n + m] * phase[static_cast<std::size_t>(j) * (2 * n - 1) + k + l];
            t(k, l) = s * (density * h);
        }
    return t;
}

/// b(X) = Tr(pi(X)^{-1} B) = int e^{i(-q x + q p/2)} K_B(x - p, x) dx at every node.
inline SampledSymbol pedersen_inverse(const DiscretizedOperator& B, const Grid& plane)
{
    if (plane.d() != 2)
        throw DimensionNot2();
    const int n = plane.points_per_axis(), half = n / 2;
    if (B.size() != n || B.weight() != plane.spacing())
        throw GridMismatch();
    const double h = plane.spacing();
    std::vector<Complex> out(plane.size());
    for (int j = 0; j < n; ++j)
    {
        const double q = plane.node(j);
        for (int m = 0; m < n; ++m)
        {
            const int shift = m - half; // p = h * shift
            const double p = plane.node(m);
            Complex s = 0.0;
            for (int k = std::max(0, shift); k < std::min(n, n + shift); ++k)
                s += std::polar(1.0, -q * plane.node(k) + 0.5 * q * p) * B(k - shift, k);
            out[static_cast<std::size_t>(j) * n + m] = s * h;
        }
    }
    return SampledSymbol(plane, std::move(out));
}

/// Standard Gaussian used to fix the measure on the predual.
inline HermiteGaussian calibration_gaussian()
{
    return HermiteGaussian{{0, 0}, 1.0, {}, {}, 1.0};
}

/// rho with Tr T(b) = b(0) for the standard Gaussian.
inline double calibrate_density(const Grid& plane, const Grid& line)
{
    auto b = SampledSymbol::from_function(plane, calibration_gaussian());
    const Complex tr = pedersen_transform(b, line, 1.0).trace();
    return 1.0 / tr.real();
}

/// (pi(q, h m) f)_k = e^{i(q x_k + q h m / 2)} f_{k+m}, zero past the ends.
inline std::vector<Complex> apply_pi(const Grid& line, double q, int m, const std::vector<Complex>& f)
{
    const int n = line.points_per_axis();
    const double p = line.spacing() * m;
    std::vector<Complex> out(n);
    for (int k = 0; k < n; ++k)
    {
        const int src = k + m;
        if (src >= 0 && src < n)
            out[k] = std::polar(1.0, q * line.node(k) + 0.5 * q * p) * f[src];
    }
    return out;
}

inline int lattice_shift(const Grid& line, double p)
{
    const double m = p / line.spacing();
    if (std::abs(m - std::round(m)) > 1e-12)
        throw Error("shift is not lattice aligned");
    return static_cast<int>(std::lround(m));
}

/// max over test vectors of |pi(u)pi(v)f - e^{i alpha(u,v)} pi(u.v)f|_inf / |rhs|_inf,
/// with alpha exact from the orbit.
inline double ccr_phase_check(const OrbitData& o, const Vector& u, const Vector& v, const Grid& line,
                              const std::vector<std::vector<Complex>>& tests)
{
    if (o.d() != 2)
        throw DimensionNot2();
    const auto uv = split_product(o, u, v);
    const double a = uv.alpha.get_d();
    const int mu = lattice_shift(line, u[1].get_d()), mv = lattice_shift(line, v[1].get_d());
    const int muv = lattice_shift(line, uv.predual[1].get_d());
    double worst = 0.0;
    for (const auto& f : tests)
    {
        auto lhs = apply_pi(line, u[0].get_d(), mu, apply_pi(line, v[0].get_d(), mv, f));
        auto rhs = apply_pi(line, uv.predual[0].get_d(), muv, f);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
        {
            rhs[k] *= std::polar(1.0, a);
            num = std::max(num, std::abs(lhs[k] - rhs[k]));
            den = std::max(den, std::abs(rhs[k]));
        }
        worst = std::max(worst, den > 0.0 ? num / den : num);
    }
    return worst;
}

/// b-check(X) = conj(b(-X)).
inline SampledSymbol check_symbol(const SampledSymbol& b)
{
    if (!b.has_analytic())
        throw Error("check symbol needs an analytic evaluator");
    auto f = b.analytic();
    const int d = b.grid().d();
    return SampledSymbol::from_function(b.grid(), [f, d](const double* x) {
        double m[8];
        for (int a = 0; a < d; ++a)
            m[a] = -x[a];
        return std::conj(f(m));
    });
}

/// Five Hermite-Gaussian symbols with varied degree, width, center and frequency.
inline std::vector<SampledSymbol> hermite_gaussian_family(const Grid& plane)
{
    const std::vector<HermiteGaussian> specs = {
        {{0, 0}, 0.8, {0.5, -0.25}, {}, 1.0},
        {{1, 0}, 1.2, {}, {}, 1.0},
        {{0, 1}, 1.0, {}, {0.5, 0.0}, 1.0},
        {{1, 1}, 0.9, {0.3, 0.4}, {}, 1.0},
        {{2, 0}, 1.1, {}, {0.0, -0.7}, 1.0},
    };
    std::vector<SampledSymbol> out;
    for (const auto& s : specs)
        out.push_back(SampledSymbol::from_function(plane, s));
    return out;
}

struct PedersenTolerances
{
    double trace = 1e-3;
    double isometry = 1e-3;
    double adjoint = 1e-8;
    double homomorphism = 1e-3;
    double inversion = 1e-3;
};

/// Trace, isometry, adjoint and inversion checks per symbol, homomorphism per
/// pair. Norms on the predual use dmu = density * Lebesgue.
inline std::vector<Check> verify_pedersen_identities(const TwistedGroup& g, const Grid& line, double density,
                                                     const std::vector<SampledSymbol>& symbols,
                                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                                     const PedersenTolerances& tol = {})
{
    std::vector<Check> checks;
    std::vector<DiscretizedOperator> ops;
    for (std::size_t i = 0; i < symbols.size(); ++i)
    {
        const auto& b = symbols[i];
        const std::string tag = "[" + std::to_string(i) + "]";
        ops.push_back(pedersen_transform(b, line, density));
        const auto& t = ops.back();
        double zero[2] = {0.0, 0.0};
        const Complex b0 = b.has_analytic() ? b.analytic()(zero) : b.evaluate(zero);
        checks.push_back(Check::at_most("trace" + tag, std::abs(t.trace() - b0) / (1.0 + std::abs(b0)), tol.trace));
        const double nb = l2_norm(b, density);
        checks.push_back(Check::at_most("hs_isometry" + tag, nb > 0 ? std::abs(t.hs_norm() - nb) / nb : t.hs_norm(),
                                        tol.isometry));
        if (b.has_analytic())
            checks.push_back(Check::at_most(
                "adjoint" + tag, (pedersen_transform(check_symbol(b), line, density) - t.adjoint()).hs_norm(),
                tol.adjoint));
        const auto back = pedersen_inverse(t, b.grid());
        checks.push_back(Check::at_most("inversion" + tag, nb > 0 ? l2_distance(back, b, density) / nb
                                                                  : l2_norm(back, density),
                                        tol.inversion));
    }
    for (const auto& [i, j] : pairs)
    {
        const std::string tag = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
        const auto conv = twisted_convolve(g, symbols[i], symbols[j], density);
        const double scale = l2_norm(symbols[i], density) * l2_norm(symbols[j], density);
        const double r = (pedersen_transform(conv, line, density) - ops[i] * ops[j]).hs_norm();
        checks.push_back(Check::at_most("homomorphism" + tag, scale > 0 ? r / scale : r, tol.homomorphism));
    }
    return checks;
}

} // namespace nilharm
