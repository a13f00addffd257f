#pragma once

#include "check.hpp"
#include "grid.hpp"
#include "orbit.hpp"
#include "twist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace nilharm
{

class CalibrationDiverged : public Error
{
public:
    CalibrationDiverged() : Error("pseudo-distance constants grow with the sample radius") {}
};

class AlphaNonPositive : public Error
{
public:
    AlphaNonPositive() : Error("level alpha must be positive") {}
};

class CoverMissing : public Error
{
public:
    CoverMissing() : Error("covering misses a point where f exceeds alpha") {}
};

class C2TooSmall : public Error
{
public:
    C2TooSmall() : Error("C2 must exceed twice the quasi-triangle constant") {}
};

/// m(x) = max_j |x_j|^{1/w_j}.
class PseudoDistance
{
public:
    explicit PseudoDistance(std::vector<int> weights) : weights_(std::move(weights))
    {
        if (weights_.empty() || std::any_of(weights_.begin(), weights_.end(), [](int w) { return w < 1; }))
            throw Error("pseudo-distance weights must be positive");
    }

    int d() const { return static_cast<int>(weights_.size()); }
    const std::vector<int>& weights() const { return weights_; }
    int homogeneous_dimension() const { return std::accumulate(weights_.begin(), weights_.end(), 0); }

    double operator()(const double* x) const
    {
        double m = 0.0;
        for (std::size_t j = 0; j < weights_.size(); ++j)
        {
            const double a = std::abs(x[j]);
            m = std::max(m, weights_[j] == 1 ? a : std::pow(a, 1.0 / weights_[j]));
        }
        return m;
    }

    /// Lebesgue measure of {m < r}.
    double ball_volume(double r) const
    {
        double v = 1.0;
        for (int w : weights_)
            v *= 2.0 * std::pow(r, w);
        return v;
    }

private:
    std::vector<int> weights_;
};

inline PseudoDistance default_pseudo_distance(const TwistedGroup& g)
{
    return PseudoDistance(g.weights());
}

struct PseudoDistanceConstants
{
    double quasi_constant = 0.0;
    double doubling = 0.0;
    std::vector<double> radii;
    std::vector<double> quasi_by_radius;
};

/// Largest m(xy) / max(m(x), m(y)) over random pairs with m(x), m(y) <= R for
/// each sample radius R, and |B(2r)| / |B(r)|.
inline PseudoDistanceConstants calibrate(const PseudoDistance& m, const TwistedGroup& g, std::mt19937_64& rng,
                                         int samples = 2000, std::vector<double> radii = {1.0, 2.0, 4.0, 8.0})
{
    const int d = m.d();
    if (g.d() != d)
        throw DimensionMismatch("pseudo-distance dimension differs from predual dimension");
    PseudoDistanceConstants c;
    c.radii = radii;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> x(d), y(d), xy(d);
    for (double r : radii)
    {
        double worst = 0.0;
        for (int s = 0; s < samples; ++s)
        {
            for (int j = 0; j < d; ++j)
            {
                const double scale = std::pow(r, m.weights()[j]);
                x[j] = unit(rng) * scale;
                y[j] = unit(rng) * scale;
            }
            const double den = std::max(m(x.data()), m(y.data()));
            if (den == 0.0)
                continue;
            g.product(x.data(), y.data(), xy.data());
            worst = std::max(worst, m(xy.data()) / den);
        }
        c.quasi_by_radius.push_back(worst);
        c.quasi_constant = std::max(c.quasi_constant, worst);
    }
    if (c.quasi_by_radius.back() > 2.0 * c.quasi_by_radius.front())
        throw CalibrationDiverged();
    c.doubling = m.ball_volume(2.0) / m.ball_volume(1.0);
    return c;
}

/// m(y x^{-1}) for grid points, with x^{-1} = -x.
class GridDistance
{
public:
    GridDistance(const TwistedGroup& g, const PseudoDistance& m, const Grid& grid) : g_(g), m_(m), grid_(grid)
    {
        if (g.d() != grid.d() || m.d() != grid.d())
            throw DimensionMismatch("pseudo-distance, group and grid dimensions differ");
    }

    /// Distances from every grid point y to the point x.
    void from(std::size_t x, std::vector<double>& out) const
    {
        const int d = grid_.d();
        std::vector<double> px(d), mx(d), py(d), z(d);
        grid_.point(x, px.data());
        for (int k = 0; k < d; ++k)
            mx[k] = -px[k];
        out.resize(grid_.size());
        for (std::size_t y = 0; y < grid_.size(); ++y)
        {
            grid_.point(y, py.data());
            if (g_.additive())
                for (int k = 0; k < d; ++k)
                    z[k] = py[k] - px[k];
            else
                g_.product(py.data(), mx.data(), z.data());
            out[y] = m_(z.data());
        }
    }

    const Grid& grid() const { return grid_; }
    const PseudoDistance& pseudo_distance() const { return m_; }

private:
    const TwistedGroup& g_;
    const PseudoDistance& m_;
    const Grid& grid_;
};

/// Dyadic radii from one that isolates a node to one that swallows the box.
inline std::vector<double> dyadic_radii(const PseudoDistance& m, const Grid& grid)
{
    double lo = INFINITY, hi = 0.0;
    for (int w : m.weights())
    {
        lo = std::min(lo, std::pow(grid.spacing(), 1.0 / w));
        hi = std::max(hi, std::pow(2.0 * grid.half_width(), 1.0 / w));
    }
    std::vector<double> r;
    for (int k = static_cast<int>(std::floor(std::log2(lo))); std::ldexp(1.0, k - 1) <= hi; ++k)
        r.push_back(std::ldexp(1.0, k));
    return r;
}

struct CoverBall
{
    std::size_t center;
    double radius;
    std::vector<std::size_t> members;
    double volume;
};

struct Covering
{
    double alpha = 0.0;
    double enlargement = 1.0;
    std::vector<CoverBall> balls;
    std::vector<double> maximal;
    std::vector<char> level_set;
    double mean_ratio = 0.0;  // max_i mean_{B_i} f / alpha
    double volume_ratio = 0.0; // alpha sum |B_i| / int f
    double c_prime = 0.0;
    int overlap = 0;
    bool below_alpha_outside = true;
};

namespace detail
{

inline std::vector<double> nonnegative_values(const SampledSymbol& f)
{
    std::vector<double> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (f[i].imag() != 0.0 || f[i].real() < 0.0)
            throw Error("covering needs a nonnegative real function");
        v[i] = f[i].real();
    }
    return v;
}

} // namespace detail

/// Level set of the discrete centered maximal function over dyadic m-balls,
/// then a greedy scan in order of decreasing Mf (ties by index) that opens a
/// ball B(x, K r_x) at every point not yet covered; r_x is the largest dyadic
/// radius whose mean exceeds alpha and K is the least power of two >= C_m.
inline Covering cz_cover(const SampledSymbol& f, double alpha, const GridDistance& dist, double quasi_constant)
{
    if (!(alpha > 0.0))
        throw AlphaNonPositive();
    const Grid& grid = f.grid();
    if (!(grid == dist.grid()))
        throw GridMismatch();
    const auto fv = detail::nonnegative_values(f);
    const auto radii = dyadic_radii(dist.pseudo_distance(), grid);
    const std::size_t n = grid.size(), nr = radii.size();
    const double cell = grid.cell_volume();

    Covering c;
    c.alpha = alpha;
    c.maximal.assign(n, 0.0);
    c.level_set.assign(n, 0);
    std::vector<double> stop(n, 0.0), dx, sum(nr), count(nr);
    for (std::size_t x = 0; x < n; ++x)
    {
        dist.from(x, dx);
        std::fill(sum.begin(), sum.end(), 0.0);
        std::fill(count.begin(), count.end(), 0.0);
        for (std::size_t y = 0; y < n; ++y)
        {
            const auto k = std::upper_bound(radii.begin(), radii.end(), dx[y]) - radii.begin();
            if (static_cast<std::size_t>(k) < nr)
            {
                sum[k] += fv[y];
                count[k] += 1.0;
            }
        }
        double s = 0.0, cnt = 0.0;
        for (std::size_t k = 0; k < nr; ++k)
        {
            s += sum[k];
            cnt += count[k];
            const double mean = s / cnt;
            c.maximal[x] = std::max(c.maximal[x], mean);
            if (mean > alpha)
                stop[x] = radii[k];
        }
        c.level_set[x] = c.maximal[x] > alpha;
    }

    c.enlargement = 1.0;
    while (c.enlargement < quasi_constant)
        c.enlargement *= 2.0;
    std::vector<std::size_t> order;
    for (std::size_t x = 0; x < n; ++x)
        if (c.level_set[x])
            order.push_back(x);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.maximal[a] > c.maximal[b]; });
    std::vector<int> multiplicity(n, 0);
    double total = 0.0;
    for (double v : fv)
        total += v * cell;
    for (std::size_t x : order)
    {
        if (multiplicity[x] > 0)
            continue;
        CoverBall b{x, c.enlargement * stop[x], {}, 0.0};
        dist.from(x, dx);
        double s = 0.0;
        for (std::size_t y = 0; y < n; ++y)
            if (dx[y] < b.radius)
            {
                b.members.push_back(y);
                ++multiplicity[y];
                s += fv[y];
            }
        b.volume = static_cast<double>(b.members.size()) * cell;
        c.mean_ratio = std::max(c.mean_ratio, s * cell / b.volume / alpha);
        c.volume_ratio += b.volume;
        c.balls.push_back(std::move(b));
    }
    c.volume_ratio = total > 0.0 ? alpha * c.volume_ratio / total : 0.0;
    c.c_prime = std::max(c.mean_ratio, c.volume_ratio);
    c.overlap = n ? *std::max_element(multiplicity.begin(), multiplicity.end()) : 0;
    for (std::size_t x = 0; x < n; ++x)
        if (multiplicity[x] == 0 && fv[x] > alpha)
            c.below_alpha_outside = false;
    return c;
}

struct CZResult
{
    Covering covering;
    SampledSymbol good;
    std::vector<SampledSymbol> bad;
    double reconstruction = 0.0; // |f - g - sum b_i|_inf / |f|_inf
    double mean_zero = 0.0;      // max_i |sum_z b_i(z) gamma(z_i, z^{-1}) h^d| / |f|_1
    bool supports_inside = true;
    double good_sup_ratio = 0.0;  // |g|_inf / alpha
    double good_l1_ratio = 0.0;   // |g|_1 / |f|_1
    double bad_l1_ratio = 0.0;    // sum_i |b_i|_1 / |f|_1
    double c_double_prime = 0.0;

    std::vector<Check> checks(double reconstruction_tol = 1e-12, double mean_zero_tol = 1e-12) const
    {
        return {
            Check::holds("f_below_alpha_off_cover", covering.below_alpha_outside),
            Check::at_most("reconstruction", reconstruction, reconstruction_tol),
            Check::holds("good_sup_bounded", std::isfinite(good_sup_ratio) && good_sup_ratio <= c_double_prime),
            Check::holds("good_l1_bounded", std::isfinite(good_l1_ratio) && good_l1_ratio <= c_double_prime),
            Check::holds("bad_support_in_ball", supports_inside),
            Check::at_most("twisted_mean_zero", mean_zero, mean_zero_tol),
            Check::holds("bad_l1_bounded", std::isfinite(bad_l1_ratio) && bad_l1_ratio <= c_double_prime),
            Check::holds("c_double_prime_finite", std::isfinite(c_double_prime)),
            Check::measure("c_prime", covering.c_prime),
            Check::measure("overlap", covering.overlap),
            Check::measure("c_double_prime", c_double_prime),
        };
    }
};

/// f = g + sum b_i with eta_i = chi_i / sum_j chi_j,
///   b_i(z) = f(z) eta_i(z) - |B_i|^{-1} (sum_u f(u) eta_i(u) gamma(z_i, u^{-1}) h^d) chi_i(z) gamma(z_i, z^{-1})^{-1},
/// and g built independently as f off the cover plus the averaged terms.
inline CZResult cz_decompose(const SampledSymbol& f, const Covering& cover, const TwistedGroup& g)
{
    const Grid& grid = f.grid();
    if (g.d() != grid.d())
        throw DimensionMismatch("grid dimension differs from predual dimension");
    const std::size_t n = grid.size();
    const int d = grid.d();
    const double cell = grid.cell_volume();
    std::vector<int> multiplicity(n, 0);
    for (const auto& b : cover.balls)
        for (std::size_t y : b.members)
            ++multiplicity[y];
    const double level = cover.alpha;
    for (std::size_t x = 0; x < n; ++x)
        if (multiplicity[x] == 0 && std::abs(f[x]) > level)
            throw CoverMissing();

    CZResult r{cover, SampledSymbol(grid), {}};
    std::vector<Complex> good(n);
    for (std::size_t x = 0; x < n; ++x)
        if (multiplicity[x] == 0)
            good[x] = f[x];
    std::vector<double> zi(d), pz(d), mz(d);
    double f_l1 = 0.0, f_inf = 0.0;
    for (const auto& v : f.values())
    {
        f_l1 += std::abs(v) * cell;
        f_inf = std::max(f_inf, std::abs(v));
    }
    std::vector<Complex> sum_bad(n);
    for (const auto& ball : cover.balls)
    {
        grid.point(ball.center, zi.data());
        std::vector<Complex> gam(ball.members.size());
        Complex c = 0.0;
        for (std::size_t k = 0; k < ball.members.size(); ++k)
        {
            const std::size_t u = ball.members[k];
            grid.point(u, pz.data());
            for (int a = 0; a < d; ++a)
                mz[a] = -pz[a];
            gam[k] = g.gamma(zi.data(), mz.data());
            c += f[u] / static_cast<double>(multiplicity[u]) * gam[k] * cell;
        }
        const Complex avg = c / ball.volume;
        std::vector<Complex> b(n);
        for (std::size_t k = 0; k < ball.members.size(); ++k)
        {
            const std::size_t z = ball.members[k];
            b[z] = f[z] / static_cast<double>(multiplicity[z]) - avg / gam[k];
            good[z] += avg / gam[k];
        }
        Complex twisted = 0.0;
        double l1 = 0.0;
        std::vector<char> inside(n, 0);
        for (std::size_t k = 0; k < ball.members.size(); ++k)
        {
            twisted += b[ball.members[k]] * gam[k] * cell;
            inside[ball.members[k]] = 1;
        }
        for (std::size_t z = 0; z < n; ++z)
        {
            l1 += std::abs(b[z]) * cell;
            sum_bad[z] += b[z];
            if (b[z] != 0.0 && !inside[z])
                r.supports_inside = false;
        }
        r.mean_zero = std::max(r.mean_zero, f_l1 > 0.0 ? std::abs(twisted) / f_l1 : std::abs(twisted));
        r.bad_l1_ratio += l1;
        r.bad.emplace_back(grid, std::move(b));
    }
    double rec = 0.0, g_inf = 0.0, g_l1 = 0.0;
    for (std::size_t x = 0; x < n; ++x)
    {
        rec = std::max(rec, std::abs(f[x] - good[x] - sum_bad[x]));
        g_inf = std::max(g_inf, std::abs(good[x]));
        g_l1 += std::abs(good[x]) * cell;
    }
    r.reconstruction = f_inf > 0.0 ? rec / f_inf : rec;
    r.good_sup_ratio = g_inf / level;
    r.good_l1_ratio = f_l1 > 0.0 ? g_l1 / f_l1 : g_l1;
    r.bad_l1_ratio = f_l1 > 0.0 ? r.bad_l1_ratio / f_l1 : r.bad_l1_ratio;
    r.c_double_prime = std::max({r.good_sup_ratio, r.good_l1_ratio, r.bad_l1_ratio});
    r.good = SampledSymbol(grid, std::move(good));
    return r;
}

/// Nonzero points of spacing * Z^d inside the box |x_j| <= radius.
inline std::vector<std::vector<double>> punctured_lattice(int d, double spacing, double radius)
{
    const int k = static_cast<int>(std::floor(radius / spacing + 1e-9));
    std::vector<std::vector<double>> out;
    std::vector<int> idx(d, -k);
    while (true)
    {
        if (std::any_of(idx.begin(), idx.end(), [](int i) { return i != 0; }))
        {
            std::vector<double> p(d);
            for (int a = 0; a < d; ++a)
                p[a] = spacing * idx[a];
            out.push_back(std::move(p));
        }
        int a = d - 1;
        while (a >= 0 && ++idx[a] > k)
            idx[a--] = -k;
        if (a < 0)
            break;
    }
    return out;
}

/// sup over u of sum over {z : m(z) > C2 m(u)} of |gamma(z, u^{-1}) k(z u^{-1}) - k(z)| h^d.
inline double hormander_twist_estimate(const TwistedGroup& g, const Analytic& k, const PseudoDistance& m, double c2,
                                       double quasi_constant, const Grid& grid,
                                       const std::vector<std::vector<double>>& shifts)
{
    if (!(c2 > 2.0 * quasi_constant))
        throw C2TooSmall();
    const int d = grid.d();
    if (g.d() != d || m.d() != d)
        throw DimensionMismatch("kernel, group and grid dimensions differ");
    std::vector<double> z(d), mu(d), zu(d);
    std::vector<Complex> kz(grid.size());
    std::vector<double> mz(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        grid.point(i, z.data());
        kz[i] = k(z.data());
        mz[i] = m(z.data());
    }
    double best = 0.0;
    for (const auto& u : shifts)
    {
        const double mu_norm = m(u.data());
        if (mu_norm == 0.0)
            continue;
        for (int a = 0; a < d; ++a)
            mu[a] = -u[a];
        double s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            if (!(mz[i] > c2 * mu_norm))
                continue;
            grid.point(i, z.data());
            g.product(z.data(), mu.data(), zu.data());
            s += std::abs(g.gamma(z.data(), mu.data()) * k(zu.data()) - kz[i]);
        }
        best = std::max(best, s * grid.cell_volume());
    }
    return best;
}

struct Weak11Report
{
    std::vector<double> alphas;
    std::vector<double> ratios; // alpha |{|Kf| > alpha}| / |f|_1
    double a1 = 0.0;
    double spread = 0.0; // max / min over the levels; infinite if a level set is empty
};

inline Weak11Report weak11_ratios(const SampledSymbol& kf, double f_l1, const std::vector<double>& alphas,
                                  double density = 1.0)
{
    Weak11Report r;
    r.alphas = alphas;
    double lo = INFINITY;
    for (double a : alphas)
    {
        if (!(a > 0.0))
            throw AlphaNonPositive();
        std::size_t count = 0;
        for (const auto& v : kf.values())
            count += std::abs(v) > a;
        const double measure = static_cast<double>(count) * kf.grid().cell_volume() * density;
        const double ratio = f_l1 > 0.0 ? a * measure / f_l1 : 0.0;
        r.ratios.push_back(ratio);
        r.a1 = std::max(r.a1, ratio);
        lo = std::min(lo, ratio);
    }
    r.spread = r.a1 == 0.0 ? 1.0 : (lo > 0.0 ? r.a1 / lo : INFINITY);
    return r;
}

/// Empirical weak-(1,1) constant of f -> k *_e f.
inline Weak11Report weak11_empirical(const TwistedGroup& g, const SampledSymbol& k, const SampledSymbol& f,
                                     const std::vector<double>& alphas, double density = 1.0)
{
    return weak11_ratios(twisted_convolve(g, k, f, density), lp_norm(f, 1.0, density), alphas, density);
}

/// Power-iteration estimate of the discrete L2 norm of f -> k *_e f. Exact in
/// the limit when the operator is self-adjoint: k(-x) = conj k(x) and alpha
/// antisymmetric bilinear.
inline double kernel_operator_norm(const TwistedGroup& g, const SampledSymbol& k, SampledSymbol start,
                                   int iterations = 12, double density = 1.0)
{
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it)
    {
        const double n = l2_norm(start, density);
        if (!(n > 0.0))
            return 0.0;
        for (auto& v : start.values())
            v /= n;
        start = twisted_convolve(g, k, start, density);
        estimate = l2_norm(start, density);
    }
    return estimate;
}

} // namespace nilharm
