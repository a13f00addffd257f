#pragma once

#include "lie_algebra.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

// Baker-Campbell-Hausdorff product through Dynkin's commutator series.
//
// Dynkin writes log(e^x e^y) as a sum over block sequences x^{r1} y^{s1} ...
// x^{rn} y^{sn} of right-nested commutators. Grouping the blocks by the word
// they spell gives one rational weight per word w in {x,y}^m:
//
//   c(w) = 1/m * sum over factorizations of w into blocks x^r y^s (r+s>0)
//                of (-1)^(n-1)/n * prod 1/(r_i! s_i!)
//
// and x.y = sum_w c(w) [w], where [w] = ad(w_0) ... ad(w_{m-2}) w_{m-1}.
// The commutators are evaluated innermost-letter-first along a suffix tree, so
// each nested value is computed once and whole subtrees die as soon as a
// value vanishes. Words longer than the nilpotency step contribute nothing.

namespace nilharm
{

namespace detail
{

/// Dynkin word weights for words of length m, indexed by a mask whose bit t
/// is the letter at distance t from the innermost end (0 = x, 1 = y).
class DynkinTable
{
public:
    static const std::vector<Rational>& weights(int m)
    {
        static std::mutex mu;
        static std::map<int, std::vector<Rational>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it == cache.end())
            it = cache.emplace(m, build(m)).first;
        return it->second;
    }

private:
    static std::vector<Rational> build(int m)
    {
        std::vector<Rational> fact(m + 1, Rational(1));
        for (int k = 1; k <= m; ++k)
            fact[k] = fact[k - 1] * k;
        const std::uint32_t words = 1u << m;
        std::vector<Rational> out(words);
        std::vector<int> letters(m);
        for (std::uint32_t mask = 0; mask < words; ++mask)
        {
            // forward order: position p holds bit (m-1-p)
            for (int p = 0; p < m; ++p)
                letters[p] = (mask >> (m - 1 - p)) & 1u;
            // ways[pos][n] = sum over factorizations of letters[0,pos) into n blocks
            std::vector<std::vector<Rational>> ways(m + 1, std::vector<Rational>(m + 1, Rational(0)));
            ways[0][0] = 1;
            for (int pos = 0; pos < m; ++pos)
            {
                bool any = false;
                for (int n = 0; n <= pos; ++n)
                    if (sgn(ways[pos][n]) != 0)
                        any = true;
                if (!any)
                    continue;
                // a block x^r y^s starting at pos
                int r = 0;
                int e = pos;
                while (e < m && letters[e] == 0)
                {
                    ++e;
                    ++r;
                    // block of pure x's ending here
                    Rational w = 1 / fact[r];
                    for (int n = 0; n <= pos; ++n)
                        if (sgn(ways[pos][n]) != 0)
                            ways[e][n + 1] += ways[pos][n] * w;
                }
                int s = 0;
                while (e < m && letters[e] == 1)
                {
                    ++e;
                    ++s;
                    Rational w = 1 / (fact[r] * fact[s]);
                    for (int n = 0; n <= pos; ++n)
                        if (sgn(ways[pos][n]) != 0)
                            ways[e][n + 1] += ways[pos][n] * w;
                }
            }
            Rational c = 0;
            for (int n = 1; n <= m; ++n)
            {
                if (sgn(ways[m][n]) == 0)
                    continue;
                Rational sign = (n % 2 == 1) ? Rational(1) : Rational(-1);
                c += sign / n * ways[m][n];
            }
            out[mask] = c / m;
        }
        return out;
    }
};

template <typename S>
bool all_zero(const std::vector<S>& v)
{
    for (const auto& c : v)
        if (!ScalarTraits<S>::is_zero(c))
            return false;
    return true;
}

/// Word weights converted into the scalar ring S, cached per length.
template <typename S>
const std::vector<S>& typed_weights(int m)
{
    static std::mutex mu;
    static std::map<int, std::vector<S>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
    {
        const auto& w = DynkinTable::weights(m);
        std::vector<S> conv;
        conv.reserve(w.size());
        for (const auto& q : w)
            conv.push_back(ScalarTraits<S>::from(q));
        it = cache.emplace(m, std::move(conv)).first;
    }
    return it->second;
}

template <typename S>
struct BchWalk
{
    const LieAlgebra& L;
    const std::vector<S>& x;
    const std::vector<S>& y;
    std::vector<const std::vector<S>*> weights; // index = word length
    int max_length;
    std::vector<S>& acc;

    void descend(const std::vector<S>& value, int length, std::uint32_t mask)
    {
        const S& c = (*weights[length])[mask];
        if (!ScalarTraits<S>::is_zero(c))
            for (std::size_t k = 0; k < acc.size(); ++k)
                if (!ScalarTraits<S>::is_zero(value[k]))
                    acc[k] = acc[k] + c * value[k];
        if (length == max_length)
            return;
        for (std::uint32_t letter = 0; letter < 2; ++letter)
        {
            std::vector<S> next = L.bracket(letter ? y : x, value);
            if (all_zero(next))
                continue;
            descend(next, length + 1, mask | (letter << length));
        }
    }
};

} // namespace detail

/// Group product x.y in exponential coordinates, exact when S is exact.
template <typename S>
std::vector<S> bch_product(const LieAlgebra& L, const std::vector<S>& x, const std::vector<S>& y)
{
    if (x.size() != static_cast<std::size_t>(L.dim()) || y.size() != x.size())
        throw DimensionMismatch("bch_product: vector length differs from algebra dimension");
    std::vector<S> acc(x.size(), ScalarTraits<S>::zero());
    const int depth = std::max(1, L.nilpotency_step());
    detail::BchWalk<S> walk{L, x, y, {nullptr}, depth, acc};
    for (int m = 1; m <= depth; ++m)
        walk.weights.push_back(&detail::typed_weights<S>(m));
    if (!detail::all_zero(x))
        walk.descend(x, 1, 0u);
    if (!detail::all_zero(y))
        walk.descend(y, 1, 1u);
    return acc;
}

/// Group inverse in exponential coordinates.
template <typename S>
std::vector<S> group_inverse(const std::vector<S>& x)
{
    std::vector<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = ScalarTraits<S>::zero() - x[i];
    return r;
}

} // namespace nilharm
