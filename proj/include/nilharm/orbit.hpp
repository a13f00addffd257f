#pragma once

#include "bch.hpp"
#include "flag.hpp"
#include "lie_algebra.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <vector>

namespace nilharm
{

class PairingNotOne : public Error
{
public:
    PairingNotOne() : Error("<xi0, X1> must equal 1") {}
};

class NotFlat : public Error
{
public:
    NotFlat() : Error("orbit is not flat") {}
};

/// g_xi0 = {X : xi0 o ad X = 0}, the nullspace of B_ij = <xi0, [X_i, X_j]>.
inline linalg::Subspace isotropy_algebra(const LieAlgebra& L, const Vector& xi0)
{
    const int n = L.dim();
    if (xi0.size() != static_cast<std::size_t>(n))
        throw DimensionMismatch("functional length differs from algebra dimension");
    RationalMatrix b(n, zero_vector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[i][j] = dot(xi0, L.basis_bracket(i, j));
    return linalg::Subspace::span(linalg::nullspace(b, n), n);
}

struct OrbitData
{
    LieAlgebra algebra;
    FlagSequence flag;
    Vector xi0;
    linalg::Subspace isotropy;
    std::vector<int> jump_set;         // 1-based flag indices
    std::vector<Vector> predual_basis; // X_j, j in jump_set
    Rational direct_sum_determinant;
    bool flat = false;
    RationalMatrix flag_inverse; // ambient coordinates -> flag coordinates

    int d() const { return static_cast<int>(jump_set.size()); }

    Vector to_ambient(const Vector& x) const
    {
        if (x.size() != predual_basis.size())
            throw DimensionMismatch("predual vector has wrong length");
        Vector v = zero_vector(static_cast<std::size_t>(algebra.dim()));
        for (std::size_t k = 0; k < x.size(); ++k)
            if (sgn(x[k]) != 0)
                v = v + x[k] * predual_basis[k];
        return v;
    }
};

/// e = {j : g_j not contained in g_{j-1} + g_xi0}, with the direct-sum and
/// flatness checks.
inline OrbitData jump_indices(const LieAlgebra& L, const FlagSequence& flag, const Vector& xi0)
{
    const auto n = static_cast<std::size_t>(L.dim());
    if (flag.basis.size() != n || xi0.size() != n)
        throw DimensionMismatch("flag or functional has wrong length");
    if (dot(xi0, flag.basis[0]) != 1)
        throw PairingNotOne();
    if (auto bad = check_flag(L, flag))
        throw Error("flag invariant fails at index " + std::to_string(*bad));

    OrbitData o{L, flag, xi0, isotropy_algebra(L, xi0), {}, {}, 0, false, {}};
    for (std::size_t j = 1; j <= n; ++j)
    {
        std::vector<Vector> gens(flag.basis.begin(), flag.basis.begin() + static_cast<long>(j - 1));
        for (const auto& v : o.isotropy.basis())
            gens.push_back(v);
        if (!linalg::Subspace::span(gens, n).contains(flag.basis[j - 1]))
        {
            o.jump_set.push_back(static_cast<int>(j));
            o.predual_basis.push_back(flag.basis[j - 1]);
        }
    }

    std::vector<Vector> cols = o.isotropy.basis();
    cols.insert(cols.end(), o.predual_basis.begin(), o.predual_basis.end());
    if (cols.size() != n)
        throw Error("isotropy and predual dimensions do not add up");
    RationalMatrix m(n, zero_vector(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            m[i][j] = cols[j][i];
    o.direct_sum_determinant = linalg::determinant(m);
    if (sgn(o.direct_sum_determinant) == 0)
        throw Error("isotropy and predual do not form a direct sum");

    const auto z = L.center();
    o.flat = z.dim() == 1 && o.isotropy == z;
    o.flag_inverse = linalg::inverse(flag.matrix());
    return o;
}

/// Flag with X_1 the first central RREF vector pairing nontrivially with xi0,
/// scaled so the pairing is 1.
inline OrbitData orbit_for(const LieAlgebra& L, const Vector& xi0)
{
    const auto z = L.center();
    for (const auto& v : z.basis())
    {
        Rational p = dot(xi0, v);
        if (sgn(p) == 0)
            continue;
        Vector x1 = Rational(1 / p) * v;
        return jump_indices(L, jordan_holder_flag(L, x1), xi0);
    }
    throw PairingNotOne();
}

struct SplitProduct
{
    Vector predual;
    Rational alpha;
};

/// x.y in g split along g = g_e + z: the jump coordinates and the X_1 coordinate.
inline SplitProduct split_product(const OrbitData& o, const Vector& x, const Vector& y)
{
    if (!o.flat)
        throw NotFlat();
    Vector p = bch_product(o.algebra, o.to_ambient(x), o.to_ambient(y));
    Vector c = linalg::mat_vec(o.flag_inverse, p);
    SplitProduct s;
    s.alpha = c[0];
    for (int j : o.jump_set)
        s.predual.push_back(c[static_cast<std::size_t>(j - 1)]);
    return s;
}

inline Vector product_e(const OrbitData& o, const Vector& x, const Vector& y)
{
    return split_product(o, x, y).predual;
}

inline Rational alpha(const OrbitData& o, const Vector& x, const Vector& y)
{
    return split_product(o, x, y).alpha;
}

inline bool verify_cocycle_identity(const OrbitData& o, const Vector& x, const Vector& y, const Vector& z)
{
    const auto xy = split_product(o, x, y);
    const auto yz = split_product(o, y, z);
    return xy.alpha + alpha(o, xy.predual, z) == alpha(o, x, yz.predual) + yz.alpha;
}

/// Residuals of the five cocycle identities for gamma = exp(i alpha), together
/// with exact checks of their additive forms.
struct GammaReport
{
    std::array<double, 5> residual{};
    std::array<bool, 5> exact{};

    double max_residual() const
    {
        double m = 0.0;
        for (double r : residual)
            m = std::max(m, r);
        return m;
    }
    bool all_exact() const
    {
        for (bool b : exact)
            if (!b)
                return false;
        return true;
    }
};

inline GammaReport gamma_identities(const OrbitData& o, const Vector& x, const Vector& y, const Vector& z)
{
    auto a = [&](const Vector& u, const Vector& v) { return alpha(o, u, v); };
    auto mul = [&](const Vector& u, const Vector& v) { return product_e(o, u, v); };
    auto g = [](const Rational& t) { return std::polar(1.0, t.get_d()); };

    // each identity as lhs = rhs in additive form
    std::array<std::pair<Rational, Rational>, 5> sides = {
        std::make_pair(a(x, y) + a(mul(x, y), z), a(x, mul(y, z)) + a(y, z)),
        std::make_pair(a(-y, -x), Rational(-a(x, y))),
        std::make_pair(a(mul(x, -y), y), Rational(-a(x, -y))),
        std::make_pair(a(x, mul(-x, y)), Rational(-a(-x, y))),
        std::make_pair(a(x, -z) + a(mul(x, -z), mul(z, -y)), a(x, -y) + a(y, -z)),
    };
    // multiplicative forms evaluated factor by factor in floating point
    std::array<std::pair<std::complex<double>, std::complex<double>>, 5> mult = {
        std::make_pair(g(a(x, y)) * g(a(mul(x, y), z)), g(a(x, mul(y, z))) * g(a(y, z))),
        std::make_pair(g(a(-y, -x)), 1.0 / g(a(x, y))),
        std::make_pair(g(a(mul(x, -y), y)), 1.0 / g(a(x, -y))),
        std::make_pair(g(a(x, mul(-x, y))), 1.0 / g(a(-x, y))),
        std::make_pair(g(a(x, -z)) * g(a(mul(x, -z), mul(z, -y))), g(a(x, -y)) * g(a(y, -z))),
    };
    GammaReport r;
    for (std::size_t k = 0; k < 5; ++k)
    {
        r.exact[k] = sides[k].first == sides[k].second;
        r.residual[k] = std::abs(mult[k].first - mult[k].second);
    }
    return r;
}

/// Floating-point group law on a flat predual: x.y and alpha compiled from the
/// symbolic BCH product, plus the structure needed by the grid kernels.
class TwistedGroup
{
public:
    static TwistedGroup from_orbit(const OrbitData& o)
    {
        if (!o.flat)
            throw NotFlat();
        const int d = o.d();
        const int n = o.algebra.dim();
        std::vector<Polynomial> px(n), py(n);
        for (int k = 0; k < d; ++k)
        {
            const Vector& b = o.predual_basis[k];
            for (int i = 0; i < n; ++i)
                if (sgn(b[i]) != 0)
                {
                    px[i] = px[i] + Polynomial(b[i]) * Polynomial::variable(k);
                    py[i] = py[i] + Polynomial(b[i]) * Polynomial::variable(d + k);
                }
        }
        auto prod = bch_product<Polynomial>(o.algebra, px, py);
        auto coord = [&](int flag_index) {
            Polynomial c;
            for (int i = 0; i < n; ++i)
                if (sgn(o.flag_inverse[flag_index][i]) != 0)
                    c = c + Polynomial(o.flag_inverse[flag_index][i]) * prod[i];
            return c;
        };
        TwistedGroup t;
        t.d_ = d;
        t.alpha_exact_ = coord(0);
        for (int j : o.jump_set)
            t.product_exact_.push_back(coord(j - 1));
        t.compile();
        t.weights_ = predual_weights(o);
        return t;
    }

    /// R^d with the additive law and alpha = 0.
    static TwistedGroup abelian(int d)
    {
        TwistedGroup t;
        t.d_ = d;
        for (int k = 0; k < d; ++k)
            t.product_exact_.push_back(Polynomial::variable(k) + Polynomial::variable(d + k));
        t.compile();
        t.weights_.assign(d, 1);
        return t;
    }

    int d() const { return d_; }
    const Polynomial& alpha_polynomial() const { return alpha_exact_; }
    const std::vector<Polynomial>& product_polynomials() const { return product_exact_; }

    double alpha(const double* x, const double* y) const
    {
        double buf[64];
        pack(x, y, buf);
        return alpha_c_(buf);
    }

    void product(const double* x, const double* y, double* out) const
    {
        double buf[64];
        pack(x, y, buf);
        for (int k = 0; k < d_; ++k)
            out[k] = product_c_[k](buf);
    }

    std::complex<double> gamma(const double* x, const double* y) const
    {
        return std::polar(1.0, alpha(x, y));
    }

    /// x.y = x + y on every coordinate.
    bool additive() const { return additive_; }
    /// alpha(x, y) = x^T A y; A is row-major d x d (only when bilinear()).
    bool bilinear() const { return bilinear_; }
    const std::vector<double>& bilinear_matrix() const { return a_; }
    /// Homogeneous weight of each predual axis (depth in the lower central series of G_e).
    const std::vector<int>& weights() const { return weights_; }

private:
    void pack(const double* x, const double* y, double* buf) const
    {
        for (int k = 0; k < d_; ++k)
        {
            buf[k] = x[k];
            buf[d_ + k] = y[k];
        }
    }

    void compile()
    {
        if (2 * d_ > 64)
            throw Error("predual dimension too large");
        alpha_c_ = CompiledPolynomial(alpha_exact_);
        product_c_.clear();
        additive_ = true;
        for (int k = 0; k < d_; ++k)
        {
            product_c_.emplace_back(product_exact_[k]);
            if (!(product_exact_[k] == Polynomial::variable(k) + Polynomial::variable(d_ + k)))
                additive_ = false;
        }
        bilinear_ = true;
        a_.assign(static_cast<std::size_t>(d_ * d_), 0.0);
        for (const auto& [m, c] : alpha_exact_.terms())
        {
            int xi = -1, yi = -1, deg = 0;
            for (std::size_t v = 0; v < m.size(); ++v)
            {
                deg += m[v];
                if (m[v] == 1 && static_cast<int>(v) < d_)
                    xi = static_cast<int>(v);
                else if (m[v] == 1)
                    yi = static_cast<int>(v) - d_;
            }
            if (deg != 2 || xi < 0 || yi < 0)
            {
                bilinear_ = false;
                break;
            }
            a_[static_cast<std::size_t>(xi * d_ + yi)] += c.get_d();
        }
        if (!bilinear_)
            a_.clear();
    }

    /// Depth of each jump vector in the lower central series of g / z.
    static std::vector<int> predual_weights(const OrbitData& o)
    {
        const auto& L = o.algebra;
        const auto z = L.center();
        std::vector<int> w;
        const auto series = L.lower_central_series();
        for (const auto& b : o.predual_basis)
        {
            int depth = 1;
            for (std::size_t k = 1; k < series.size(); ++k)
                if ((series[k] + z).contains(b))
                    depth = static_cast<int>(k) + 1;
            w.push_back(depth);
        }
        return w;
    }

    int d_ = 0;
    Polynomial alpha_exact_;
    std::vector<Polynomial> product_exact_;
    CompiledPolynomial alpha_c_;
    std::vector<CompiledPolynomial> product_c_;
    bool additive_ = false;
    bool bilinear_ = false;
    std::vector<double> a_;
    std::vector<int> weights_;
};

} // namespace nilharm
