#pragma once

#include "linalg.hpp"
#include "rational.hpp"
#include "scalar.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace nilharm
{

class JacobiViolation : public Error
{
public:
    JacobiViolation(int i, int j, int k, Vector residual)
        : Error(describe(i, j, k)), i(i), j(j), k(k), residual(std::move(residual))
    {
    }
    int i, j, k; // 1-based basis indices
    Vector residual;

private:
    static std::string describe(int i, int j, int k)
    {
        std::ostringstream os;
        os << "Jacobi identity fails on basis triple (" << i << "," << j << "," << k << ")";
        return os.str();
    }
};

class NotNilpotent : public Error
{
public:
    explicit NotNilpotent(std::size_t stable_dim)
        : Error("lower central series stabilizes at a nonzero subspace of dimension "
                + std::to_string(stable_dim)),
          stable_dim(stable_dim)
    {
    }
    std::size_t stable_dim;
};

class InvalidStructure : public Error
{
public:
    using Error::Error;
};

/// One structure constant [X_i, X_j] ∋ c X_k with i < j (0-based internally).
struct StructureConstant
{
    int i, j, k;
    Rational c;
};

/// Raw user input: [X_i, X_j] = sum_k c_k X_k for i < j, 1-based.
struct BracketSpec
{
    int i, j;
    std::vector<std::pair<int, Rational>> terms;
};

/// A nilpotent Lie algebra given by exact structure constants on a fixed
/// basis X_1..X_n. Instances only come out of `LieAlgebra::validate`, so
/// antisymmetry, the Jacobi identity and nilpotency always hold.
class LieAlgebra
{
public:
    static LieAlgebra validate(int dim, const std::vector<BracketSpec>& brackets,
                               std::vector<std::string> labels = {})
    {
        if (dim <= 0)
            throw InvalidStructure("dimension must be positive");
        LieAlgebra L;
        L.dim_ = dim;
        std::map<std::pair<int, int>, bool> seen;
        std::map<std::tuple<int, int, int>, Rational> acc;
        for (const auto& b : brackets)
        {
            if (b.i < 1 || b.j < 1 || b.i > dim || b.j > dim)
                throw InvalidStructure("bracket index out of range");
            if (b.i >= b.j)
                throw InvalidStructure("only pairs i<j may be given (got " + std::to_string(b.i)
                                       + "," + std::to_string(b.j) + ")");
            if (seen.count({b.i, b.j}))
                throw InvalidStructure("duplicate bracket for pair (" + std::to_string(b.i) + ","
                                       + std::to_string(b.j) + ")");
            seen[{b.i, b.j}] = true;
            for (const auto& [k, c] : b.terms)
            {
                if (k < 1 || k > dim)
                    throw InvalidStructure("bracket term index out of range");
                acc[{b.i - 1, b.j - 1, k - 1}] += c;
            }
        }
        for (auto& [key, c] : acc)
            if (sgn(c) != 0)
                L.entries_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
        if (!labels.empty() && labels.size() != static_cast<std::size_t>(dim))
            throw InvalidStructure("label count differs from dimension");
        L.labels_ = std::move(labels);
        for (const auto& e : L.entries_)
            L.coeffs_d_.push_back(e.c.get_d());
        L.check_jacobi();
        L.check_nilpotent();
        return L;
    }

    static LieAlgebra abelian(int dim) { return validate(dim, {}); }

    int dim() const { return dim_; }
    const std::vector<StructureConstant>& entries() const { return entries_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(int k) const
    {
        if (!labels_.empty())
            return labels_.at(k);
        return "X" + std::to_string(k + 1);
    }

    /// [x, y] over any scalar ring adapted by ScalarTraits.
    template <typename S>
    std::vector<S> bracket(const std::vector<S>& x, const std::vector<S>& y) const
    {
        if (x.size() != static_cast<std::size_t>(dim_) || y.size() != x.size())
            throw DimensionMismatch("bracket: vector length differs from algebra dimension");
        using T = ScalarTraits<S>;
        std::vector<S> out(dim_, T::zero());
        for (std::size_t n = 0; n < entries_.size(); ++n)
        {
            const auto& e = entries_[n];
            const bool a = !T::is_zero(x[e.i]) && !T::is_zero(y[e.j]);
            const bool b = !T::is_zero(x[e.j]) && !T::is_zero(y[e.i]);
            if (!a && !b)
                continue;
            S t = a ? S(x[e.i] * y[e.j]) : T::zero();
            if (b)
                t = t - x[e.j] * y[e.i];
            if constexpr (std::is_same_v<S, double>)
                out[e.k] += coeffs_d_[n] * t;
            else
                out[e.k] = out[e.k] + T::from(e.c) * t;
        }
        return out;
    }

    Vector basis_bracket(int i, int j) const
    {
        return bracket(unit_vector(dim_, i), unit_vector(dim_, j));
    }

    /// Matrix of ad(x) acting on coordinate columns: column j is [x, X_j].
    RationalMatrix ad(const Vector& x) const
    {
        RationalMatrix m(dim_, zero_vector(dim_));
        for (int j = 0; j < dim_; ++j)
        {
            Vector c = bracket(x, unit_vector(dim_, j));
            for (int i = 0; i < dim_; ++i)
                m[i][j] = c[i];
        }
        return m;
    }

    /// g^0 = g, g^k = [g, g^{k-1}], ending with the first zero term.
    std::vector<linalg::Subspace> lower_central_series() const { return series_; }

    /// Least k with g^k = 0.
    int nilpotency_step() const { return static_cast<int>(series_.size()) - 1; }

    linalg::Subspace center() const
    {
        // X central iff [X_i, X] = 0 for all i: stack the ad matrices.
        RationalMatrix rows;
        for (int i = 0; i < dim_; ++i)
        {
            RationalMatrix a = ad(unit_vector(dim_, i));
            rows.insert(rows.end(), a.begin(), a.end());
        }
        return linalg::Subspace::span(linalg::nullspace(rows, dim_), dim_);
    }

    /// [g, S] as a subspace.
    linalg::Subspace bracket_with(const linalg::Subspace& s) const
    {
        std::vector<Vector> gens;
        for (int i = 0; i < dim_; ++i)
            for (const auto& v : s.basis())
                gens.push_back(bracket(unit_vector(dim_, i), v));
        return linalg::Subspace::span(gens, dim_);
    }

    bool is_ideal(const linalg::Subspace& s) const { return s.contains(bracket_with(s)); }

    /// Jacobi residual of an arbitrary triple (used by property tests).
    Vector jacobi_residual(const Vector& x, const Vector& y, const Vector& z) const
    {
        return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    }

private:
    LieAlgebra() = default;

    void check_jacobi() const
    {
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                for (int k = j + 1; k < dim_; ++k)
                {
                    Vector r = jacobi_residual(unit_vector(dim_, i), unit_vector(dim_, j),
                                               unit_vector(dim_, k));
                    if (!is_zero(r))
                        throw JacobiViolation(i + 1, j + 1, k + 1, r);
                }
    }

    void check_nilpotent()
    {
        series_.clear();
        series_.push_back(linalg::Subspace::whole(dim_));
        while (series_.back().dim() > 0)
        {
            linalg::Subspace next = bracket_with(series_.back());
            if (next.dim() == series_.back().dim())
                throw NotNilpotent(next.dim());
            series_.push_back(std::move(next));
        }
    }

    int dim_ = 0;
    std::vector<StructureConstant> entries_;
    std::vector<double> coeffs_d_;
    std::vector<std::string> labels_;
    std::vector<linalg::Subspace> series_;
};

} // namespace nilharm
