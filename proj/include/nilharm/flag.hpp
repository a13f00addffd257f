#pragma once

#include "lie_algebra.hpp"
#include "linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilharm
{

class PreferredVectorNotCentral : public Error
{
public:
    PreferredVectorNotCentral() : Error("preferred first flag vector is not central") {}
};

/// Jordan-Hölder flag {0} = g_0 ⊂ g_1 ⊂ ... ⊂ g_n = g with g_j spanned by the
/// first j basis vectors, every g_j an ideal and [g, g_j] ⊆ g_{j-1}.
struct FlagSequence
{
    std::vector<Vector> basis; // X_1..X_n in the algebra's coordinates

    linalg::Subspace ideal(std::size_t j, std::size_t ambient) const
    {
        std::vector<Vector> gens(basis.begin(), basis.begin() + static_cast<long>(j));
        return linalg::Subspace::span(gens, ambient);
    }

    /// Change-of-basis matrix whose columns are X_1..X_n.
    RationalMatrix matrix() const
    {
        const std::size_t n = basis.size();
        RationalMatrix m(n, zero_vector(n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                m[i][j] = basis[j][i];
        return m;
    }
};

/// Exact check of every flag invariant. Returns the first failing index
/// (1-based) or nullopt.
inline std::optional<std::size_t> check_flag(const LieAlgebra& L, const FlagSequence& flag)
{
    const auto n = static_cast<std::size_t>(L.dim());
    if (flag.basis.size() != n)
        return 0;
    linalg::Subspace prev(n);
    for (std::size_t j = 1; j <= n; ++j)
    {
        linalg::Subspace cur = flag.ideal(j, n);
        if (cur.dim() != j)
            return j;
        if (!prev.contains(L.bracket_with(cur)))
            return j;
        prev = std::move(cur);
    }
    return std::nullopt;
}

/// Ascending central refinement: X_j is taken from the preimage of the center
/// of g / g_{j-1}. Among candidates, the RREF basis vector with the earliest
/// pivot that is not already in g_{j-1} wins (pivot coordinate 1).
inline FlagSequence jordan_holder_flag(const LieAlgebra& L,
                                       const std::optional<Vector>& preferred_first = std::nullopt)
{
    const int n = L.dim();
    FlagSequence flag;
    linalg::Subspace current(n);
    if (preferred_first)
    {
        if (preferred_first->size() != static_cast<std::size_t>(n))
            throw DimensionMismatch("preferred flag vector has wrong length");
        if (is_zero(*preferred_first) || !L.center().contains(*preferred_first))
            throw PreferredVectorNotCentral();
        flag.basis.push_back(*preferred_first);
        current = linalg::Subspace::span(flag.basis, n);
    }
    while (static_cast<int>(flag.basis.size()) < n)
    {
        // W = {v : [X_i, v] in current for all i}
        RationalMatrix q = current.annihilator();
        RationalMatrix rows;
        for (int i = 0; i < n; ++i)
        {
            RationalMatrix a = L.ad(unit_vector(n, i));
            RationalMatrix qa = linalg::mat_mul(q, a);
            rows.insert(rows.end(), qa.begin(), qa.end());
        }
        linalg::Subspace w = linalg::Subspace::span(linalg::nullspace(rows, n), n);
        bool advanced = false;
        for (const auto& v : w.basis())
        {
            if (current.contains(v))
                continue;
            flag.basis.push_back(v);
            current = linalg::Subspace::span(flag.basis, n);
            advanced = true;
            break;
        }
        if (!advanced)
            throw Error("flag construction stalled; algebra is not nilpotent");
    }
    return flag;
}

} // namespace nilharm
