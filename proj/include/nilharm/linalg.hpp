#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

// Exact linear algebra over Q. Rows are cleared of denominators and reduced
// with fraction-free (Bareiss) elimination; the pivot is always the first
// nonzero entry found scanning columns left to right.

namespace nilharm::linalg
{

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct Echelon
{
    IntMatrix rows;           // row echelon form, zero rows trimmed
    std::vector<int> pivots;  // pivot column of each retained row
    int swaps = 0;
};

inline IntMatrix clear_denominators(const RationalMatrix& a)
{
    IntMatrix m;
    m.reserve(a.size());
    for (const auto& row : a)
    {
        mpz_class l = 1;
        for (const auto& q : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> r(row.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            r[j] = row[j].get_num() * (l / row[j].get_den());
        m.push_back(std::move(r));
    }
    return m;
}

inline Echelon bareiss(IntMatrix m)
{
    Echelon out;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
        {
            std::swap(m[p], m[r]);
            ++out.swaps;
        }
        for (std::size_t i = r + 1; i < rows; ++i)
        {
            for (std::size_t j = c + 1; j < cols; ++j)
            {
                mpz_class t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const RationalMatrix& a)
{
    if (a.empty())
        return 0;
    return bareiss(clear_denominators(a)).pivots.size();
}

/// Determinant of a square matrix; for Bareiss the last pivot is the
/// determinant of the row-scaled matrix.
inline Rational determinant(const RationalMatrix& a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    for (const auto& row : a)
        if (row.size() != n)
            throw DimensionMismatch("determinant of a non-square matrix");
    mpz_class scale = 1;
    for (const auto& row : a)
    {
        mpz_class l = 1;
        for (const auto& q : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        scale *= l;
    }
    Echelon e = bareiss(clear_denominators(a));
    if (e.pivots.size() < n)
        return 0;
    Rational d(e.rows[n - 1][n - 1], scale);
    d.canonicalize();
    return (e.swaps % 2) ? Rational(-d) : d;
}

/// Reduced row echelon form with unit pivots; zero rows dropped.
inline RationalMatrix rref(const RationalMatrix& a, std::vector<int>* pivots_out = nullptr)
{
    if (a.empty())
        return {};
    Echelon e = bareiss(clear_denominators(a));
    const std::size_t cols = a[0].size();
    RationalMatrix r(e.rows.size(), Vector(cols));
    for (std::size_t i = 0; i < e.rows.size(); ++i)
    {
        const mpz_class& piv = e.rows[i][e.pivots[i]];
        for (std::size_t j = 0; j < cols; ++j)
        {
            r[i][j] = Rational(e.rows[i][j], piv);
            r[i][j].canonicalize();
        }
    }
    for (std::size_t i = e.rows.size(); i-- > 0;)
    {
        const int pc = e.pivots[i];
        for (std::size_t k = 0; k < i; ++k)
        {
            if (sgn(r[k][pc]) == 0)
                continue;
            Rational f = r[k][pc];
            for (std::size_t j = pc; j < cols; ++j)
                r[k][j] -= f * r[i][j];
        }
    }
    if (pivots_out)
        *pivots_out = e.pivots;
    return r;
}

/// Basis of {x : A x = 0}; `cols` is needed when A has no rows.
inline std::vector<Vector> nullspace(const RationalMatrix& a, std::size_t cols)
{
    std::vector<int> piv;
    RationalMatrix r = a.empty() ? RationalMatrix{} : rref(a, &piv);
    std::vector<bool> is_pivot(cols, false);
    for (int p : piv)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f)
    {
        if (is_pivot[f])
            continue;
        Vector v = zero_vector(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < r.size(); ++i)
            v[piv[i]] = -r[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Vector mat_vec(const RationalMatrix& a, const Vector& x)
{
    Vector y = zero_vector(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (a[i].size() != x.size())
            throw DimensionMismatch("matrix-vector product");
        for (std::size_t j = 0; j < x.size(); ++j)
            if (sgn(a[i][j]) != 0 && sgn(x[j]) != 0)
                y[i] += a[i][j] * x[j];
    }
    return y;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b)
{
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    RationalMatrix c(n, zero_vector(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
        {
            if (sgn(a[i][l]) == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                if (sgn(b[l][j]) != 0)
                    c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline RationalMatrix transpose(const RationalMatrix& a)
{
    if (a.empty())
        return {};
    RationalMatrix t(a[0].size(), Vector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

inline RationalMatrix identity(std::size_t n)
{
    RationalMatrix m(n, zero_vector(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline bool is_zero(const RationalMatrix& a)
{
    for (const auto& row : a)
        if (!nilharm::is_zero(row))
            return false;
    return true;
}

/// Solves A x = b for a square invertible A.
inline Vector solve(const RationalMatrix& a, const Vector& b)
{
    const std::size_t n = a.size();
    RationalMatrix aug(n, Vector(n + 1));
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = a[i][j];
        aug[i][n] = b[i];
    }
    std::vector<int> piv;
    RationalMatrix r = rref(aug, &piv);
    if (piv.size() != n || piv.back() != static_cast<int>(n - 1))
        throw Error("solve: singular system");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = r[i][n];
    return x;
}

inline RationalMatrix inverse(const RationalMatrix& a)
{
    const std::size_t n = a.size();
    RationalMatrix aug(n, Vector(2 * n));
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    std::vector<int> piv;
    RationalMatrix r = rref(aug, &piv);
    if (piv.size() != n || piv.back() != static_cast<int>(n - 1))
        throw Error("inverse: singular matrix");
    RationalMatrix inv(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = r[i][n + j];
    return inv;
}

/// A linear subspace of Q^n held as an RREF basis, so equal subspaces have
/// identical representations.
class Subspace
{
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient)
    {
        Subspace s(ambient);
        std::vector<Vector> nonzero;
        for (const auto& v : vectors)
        {
            if (v.size() != ambient)
                throw DimensionMismatch("span: vector length differs from ambient dimension");
            if (!nilharm::is_zero(v))
                nonzero.push_back(v);
        }
        if (!nonzero.empty())
            s.basis_ = rref(nonzero, &s.pivots_);
        return s;
    }

    static Subspace whole(std::size_t n)
    {
        std::vector<Vector> e;
        for (std::size_t i = 0; i < n; ++i)
            e.push_back(unit_vector(n, i));
        return span(e, n);
    }

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient() const { return ambient_; }
    const std::vector<Vector>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const Vector& v) const
    {
        if (v.size() != ambient_)
            throw DimensionMismatch("membership test: wrong length");
        Vector r = v;
        for (std::size_t i = 0; i < basis_.size(); ++i)
        {
            const int p = pivots_[i];
            if (sgn(r[p]) == 0)
                continue;
            Rational f = r[p];
            for (std::size_t j = p; j < ambient_; ++j)
                r[j] -= f * basis_[i][j];
        }
        return nilharm::is_zero(r);
    }

    bool contains(const Subspace& other) const
    {
        for (const auto& v : other.basis_)
            if (!contains(v))
                return false;
        return true;
    }

    Subspace operator+(const Subspace& other) const
    {
        std::vector<Vector> all = basis_;
        all.insert(all.end(), other.basis_.begin(), other.basis_.end());
        return span(all, ambient_);
    }

    bool operator==(const Subspace& other) const
    {
        return ambient_ == other.ambient_ && basis_ == other.basis_;
    }

    /// Rows spanning the annihilator: Q with Q v = 0 iff v in this subspace.
    RationalMatrix annihilator() const
    {
        return nullspace(basis_, ambient_);
    }

private:
    std::size_t ambient_;
    std::vector<Vector> basis_;
    std::vector<int> pivots_;
};

} // namespace nilharm::linalg
