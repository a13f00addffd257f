#pragma once

#include "rational.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace nilharm
{

/// Multivariate polynomial with exact rational coefficients. A monomial is an
/// exponent vector with trailing zeros trimmed, so the zero polynomial is the
/// empty map and constants live under the empty monomial.
class Polynomial
{
public:
    using Monomial = std::vector<std::uint8_t>;

    Polynomial() = default;
    Polynomial(const Rational& c) // NOLINT: constants convert implicitly
    {
        if (sgn(c) != 0)
            terms_[{}] = c;
    }

    static Polynomial variable(std::size_t index)
    {
        Polynomial p;
        Monomial m(index + 1, 0);
        m[index] = 1;
        p.terms_[m] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    std::size_t degree() const
    {
        std::size_t d = 0;
        for (const auto& [m, c] : terms_)
        {
            std::size_t t = 0;
            for (auto e : m)
                t += e;
            d = std::max(d, t);
        }
        return d;
    }

    Polynomial operator+(const Polynomial& o) const
    {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_)
            r.add_term(m, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const
    {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_)
            r.add_term(m, -c);
        return r;
    }

    Polynomial operator*(const Polynomial& o) const
    {
        Polynomial r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
            {
                Monomial m(std::max(ma.size(), mb.size()), 0);
                for (std::size_t i = 0; i < ma.size(); ++i)
                    m[i] += ma[i];
                for (std::size_t i = 0; i < mb.size(); ++i)
                    m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    Rational evaluate(const Vector& point) const
    {
        Rational s = 0;
        for (const auto& [m, c] : terms_)
        {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e)
                    t *= point.at(i);
            s += t;
        }
        return s;
    }

private:
    void add_term(const Monomial& m, const Rational& c)
    {
        auto it = terms_.find(m);
        if (it == terms_.end())
        {
            if (sgn(c) != 0)
                terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }

    std::map<Monomial, Rational> terms_;
};

template <>
struct ScalarTraits<Polynomial>
{
    static Polynomial zero() { return {}; }
    static Polynomial from(const Rational& q) { return Polynomial(q); }
    static bool is_zero(const Polynomial& p) { return p.is_zero(); }
};

/// Double-precision evaluator for a fixed polynomial.
class CompiledPolynomial
{
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const Polynomial& p)
    {
        for (const auto& [m, c] : p.terms())
        {
            Term t;
            t.coeff = c.get_d();
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i])
                {
                    t.factors.push_back({static_cast<int>(i), m[i]});
                    nvars_ = std::max(nvars_, i + 1);
                }
            terms_.push_back(std::move(t));
        }
    }

    double operator()(const double* point) const
    {
        double s = 0.0;
        for (const auto& t : terms_)
        {
            double v = t.coeff;
            for (const auto& [var, e] : t.factors)
            {
                double p = point[var];
                double r = p;
                for (int k = 1; k < e; ++k)
                    r *= p;
                v *= r;
            }
            s += v;
        }
        return s;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t num_vars() const { return nvars_; }

    /// True when every monomial has total degree exactly one.
    bool is_linear() const
    {
        for (const auto& t : terms_)
            if (t.factors.size() != 1 || t.factors[0].second != 1)
                return false;
        return true;
    }

    struct Term
    {
        double coeff = 0.0;
        std::vector<std::pair<int, int>> factors;
    };
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
    std::size_t nvars_ = 0;
};

} // namespace nilharm
