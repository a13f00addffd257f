#pragma once

#include "lie_algebra.hpp"
#include "linalg.hpp"

#include <optional>
#include <vector>

namespace nilharm
{

/// Basis of Der(g). Each element is stored as the matrix acting on coordinate
/// columns, so (D x) = op * x and column k holds the coordinates of D(X_k);
/// in the row-per-generator notation D(X_k) = sum_j a_kj X_j this is a^T.
struct DerivationSpace
{
    int dim = 0;
    std::vector<RationalMatrix> operators;

    /// a_kj: coefficient of X_j in D(X_k) for basis element `which`.
    const Rational& coefficient(std::size_t which, int k, int j) const
    {
        return operators.at(which)[j][k];
    }
};

namespace detail
{

inline std::vector<std::vector<Vector>> bracket_table(const LieAlgebra& L)
{
    const int n = L.dim();
    std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            c[i][j] = L.basis_bracket(i, j);
    return c;
}

inline Vector flatten(const RationalMatrix& m)
{
    Vector v;
    for (const auto& row : m)
        v.insert(v.end(), row.begin(), row.end());
    return v;
}

} // namespace detail

/// Leibniz residual D[x,y] - [Dx,y] - [x,Dy] for an operator matrix.
inline Vector leibniz_residual(const LieAlgebra& L, const RationalMatrix& op, const Vector& x,
                               const Vector& y)
{
    return linalg::mat_vec(op, L.bracket(x, y)) - L.bracket(linalg::mat_vec(op, x), y)
           - L.bracket(x, linalg::mat_vec(op, y));
}

/// Solves the Leibniz system on all basis pairs i<j exactly.
inline DerivationSpace derivation_space(const LieAlgebra& L)
{
    const int n = L.dim();
    const auto c = detail::bracket_table(L);
    auto u = [n](int k, int j) { return static_cast<std::size_t>(k * n + j); };
    RationalMatrix rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = 0; l < n; ++l)
            {
                Vector row = zero_vector(static_cast<std::size_t>(n * n));
                for (int k = 0; k < n; ++k)
                    if (sgn(c[i][j][k]) != 0)
                        row[u(k, l)] += c[i][j][k];
                for (int m = 0; m < n; ++m)
                {
                    if (sgn(c[m][j][l]) != 0)
                        row[u(i, m)] -= c[m][j][l];
                    if (sgn(c[i][m][l]) != 0)
                        row[u(j, m)] -= c[i][m][l];
                }
                if (!is_zero(row))
                    rows.push_back(std::move(row));
            }
    DerivationSpace out;
    out.dim = n;
    for (const auto& sol : linalg::nullspace(rows, static_cast<std::size_t>(n * n)))
    {
        RationalMatrix op(n, zero_vector(n));
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                op[j][k] = sol[u(k, j)];
        out.operators.push_back(std::move(op));
    }
    return out;
}

/// True when [D1, D2] stays in the span for every pair of basis derivations.
inline bool closed_under_commutator(const DerivationSpace& space)
{
    const auto nn = static_cast<std::size_t>(space.dim * space.dim);
    std::vector<Vector> flat;
    for (const auto& op : space.operators)
        flat.push_back(detail::flatten(op));
    auto span = linalg::Subspace::span(flat, nn);
    for (std::size_t a = 0; a < space.operators.size(); ++a)
        for (std::size_t b = a + 1; b < space.operators.size(); ++b)
        {
            RationalMatrix ab = linalg::mat_mul(space.operators[a], space.operators[b]);
            RationalMatrix ba = linalg::mat_mul(space.operators[b], space.operators[a]);
            RationalMatrix comm(ab.size(), zero_vector(ab.size()));
            for (std::size_t i = 0; i < ab.size(); ++i)
                for (std::size_t j = 0; j < ab.size(); ++j)
                    comm[i][j] = ab[i][j] - ba[i][j];
            if (!span.contains(detail::flatten(comm)))
                return false;
        }
    return true;
}

struct NilpotencyCertificate
{
    bool success = false;
    /// On success: v_1..v_n with D v_k ∈ span{v_1..v_{k-1}} for every D.
    std::vector<Vector> flag;
    /// On failure: 1-based stage where no common vector exists modulo the flag so far.
    std::size_t failed_stage = 0;
};

/// Engel-style simultaneous strict triangularization of a space of operators.
inline NilpotencyCertificate engel_flag(const std::vector<RationalMatrix>& operators, int n)
{
    NilpotencyCertificate cert;
    linalg::Subspace current(n);
    while (static_cast<int>(cert.flag.size()) < n)
    {
        RationalMatrix q = current.annihilator();
        RationalMatrix rows;
        for (const auto& op : operators)
        {
            RationalMatrix qa = linalg::mat_mul(q, op);
            rows.insert(rows.end(), qa.begin(), qa.end());
        }
        linalg::Subspace w = linalg::Subspace::span(linalg::nullspace(rows, n), n);
        std::optional<Vector> pick;
        for (const auto& v : w.basis())
            if (!current.contains(v))
            {
                pick = v;
                break;
            }
        if (!pick)
        {
            cert.failed_stage = cert.flag.size() + 1;
            return cert;
        }
        cert.flag.push_back(*pick);
        current = linalg::Subspace::span(cert.flag, n);
    }
    cert.success = true;
    return cert;
}

inline NilpotencyCertificate is_characteristically_nilpotent(const LieAlgebra& L,
                                                             const DerivationSpace& space)
{
    return engel_flag(space.operators, L.dim());
}

inline NilpotencyCertificate is_characteristically_nilpotent(const LieAlgebra& L)
{
    return is_characteristically_nilpotent(L, derivation_space(L));
}

inline bool is_nilpotent_operator(const RationalMatrix& op)
{
    RationalMatrix p = op;
    for (std::size_t k = 1; k < op.size(); ++k)
        p = linalg::mat_mul(p, op);
    return linalg::is_zero(p);
}

} // namespace nilharm
