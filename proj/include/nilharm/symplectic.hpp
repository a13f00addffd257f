#pragma once

#include "lie_algebra.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nilharm
{

class NotACocycle : public Error
{
public:
    NotACocycle() : Error("form is not a 2-cocycle of the algebra") {}
};

class ZeroParameter : public Error
{
public:
    ZeroParameter() : Error("family parameters s and t must be nonzero") {}
};

class InvalidGraph : public Error
{
public:
    using Error::Error;
};

/// Skew bilinear form on the basis of an algebra, omega(X_i, X_j) = matrix[i][j].
class SymplecticForm
{
public:
    explicit SymplecticForm(RationalMatrix m) : m_(std::move(m))
    {
        const std::size_t n = m_.size();
        for (const auto& row : m_)
            if (row.size() != n)
                throw DimensionMismatch("form matrix is not square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m_[i][j] != -m_[j][i])
                    throw Error("form matrix is not skew-symmetric");
    }

    /// Builds from upper-triangle entries (1-based i<j).
    static SymplecticForm from_entries(std::size_t n,
                                       const std::vector<std::tuple<int, int, Rational>>& entries)
    {
        RationalMatrix m(n, zero_vector(n));
        for (const auto& [i, j, c] : entries)
        {
            if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n
                || i >= j)
                throw Error("form entries must satisfy 1 <= i < j <= n");
            m[i - 1][j - 1] += c;
            m[j - 1][i - 1] -= c;
        }
        return SymplecticForm(std::move(m));
    }

    std::size_t dim() const { return m_.size(); }
    const RationalMatrix& matrix() const { return m_; }

    Rational operator()(const Vector& x, const Vector& y) const
    {
        return dot(x, linalg::mat_vec(m_, y));
    }

    Rational determinant() const { return linalg::determinant(m_); }
    bool nondegenerate() const { return sgn(determinant()) != 0; }

private:
    RationalMatrix m_;
};

struct CocycleCheck
{
    bool ok = true;
    std::array<int, 3> triple{}; // first violating basis triple, 1-based
};

/// omega(x,[y,z]) + omega(y,[z,x]) + omega(z,[x,y]) = 0 on all basis triples.
inline CocycleCheck is_two_cocycle(const LieAlgebra& L, const SymplecticForm& w)
{
    const int n = L.dim();
    if (w.dim() != static_cast<std::size_t>(n))
        throw DimensionMismatch("form and algebra dimensions differ");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
            {
                Vector x = unit_vector(n, i), y = unit_vector(n, j), z = unit_vector(n, k);
                Rational s = w(x, L.bracket(y, z)) + w(y, L.bracket(z, x)) + w(z, L.bracket(x, y));
                if (sgn(s) != 0)
                    return {false, {i + 1, j + 1, k + 1}};
            }
    return {};
}

/// R +_omega g0 with the new central generator placed first.
inline LieAlgebra central_extension(const LieAlgebra& L0, const SymplecticForm& w)
{
    if (!is_two_cocycle(L0, w).ok)
        throw NotACocycle();
    const int n = L0.dim();
    std::map<std::pair<int, int>, BracketSpec> specs;
    auto spec = [&](int i, int j) -> BracketSpec& {
        auto it = specs.find({i, j});
        if (it == specs.end())
            it = specs.emplace(std::make_pair(i, j), BracketSpec{i, j, {}}).first;
        return it->second;
    };
    for (const auto& e : L0.entries())
        spec(e.i + 2, e.j + 2).terms.emplace_back(e.k + 2, e.c);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sgn(w.matrix()[i][j]) != 0)
                spec(i + 2, j + 2).terms.emplace_back(1, w.matrix()[i][j]);
    std::vector<BracketSpec> list;
    for (auto& [key, s] : specs)
        list.push_back(std::move(s));
    std::vector<std::string> labels;
    if (!L0.labels().empty())
    {
        labels.push_back("Z");
        for (const auto& l : L0.labels())
            labels.push_back(l);
    }
    return LieAlgebra::validate(n + 1, list, labels);
}

/// Simple finite graph with vertices and edges in sorted order.
class Graph
{
public:
    Graph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges)
    {
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
            throw InvalidGraph("duplicate vertex");
        vertices_ = std::move(vertices);
        std::set<std::pair<std::string, std::string>> seen;
        for (auto [u, v] : edges)
        {
            if (u == v)
                throw InvalidGraph("loop at vertex '" + u + "'");
            if (!std::binary_search(vertices_.begin(), vertices_.end(), u)
                || !std::binary_search(vertices_.begin(), vertices_.end(), v))
                throw InvalidGraph("edge references an unknown vertex");
            if (v < u)
                std::swap(u, v);
            if (!seen.insert({u, v}).second)
                throw InvalidGraph("duplicate edge {" + u + "," + v + "}");
        }
        edges_.assign(seen.begin(), seen.end());
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }

    int vertex_index(const std::string& v) const
    {
        return static_cast<int>(std::lower_bound(vertices_.begin(), vertices_.end(), v)
                                - vertices_.begin());
    }

    /// Component id per vertex (smallest vertex index in the component).
    std::vector<int> components() const
    {
        std::vector<int> parent(vertices_.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int a) {
            while (parent[a] != a)
                a = parent[a] = parent[parent[a]];
            return a;
        };
        for (const auto& [u, v] : edges_)
        {
            int a = find(vertex_index(u)), b = find(vertex_index(v));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
        std::vector<int> comp(vertices_.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            comp[i] = find(static_cast<int>(i));
        return comp;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<std::pair<std::string, std::string>> edges_;
};

/// V_0 + V_1 with [v, w] = v∧w on edges; vertices first, then edges.
inline LieAlgebra graph_lie_algebra(const Graph& g)
{
    const int nv = static_cast<int>(g.vertices().size());
    const int ne = static_cast<int>(g.edges().size());
    if (nv + ne == 0)
        throw InvalidGraph("empty graph");
    std::vector<BracketSpec> specs;
    std::vector<std::string> labels = g.vertices();
    for (int e = 0; e < ne; ++e)
    {
        const auto& [u, v] = g.edges()[e];
        specs.push_back({g.vertex_index(u) + 1, g.vertex_index(v) + 1, {{nv + e + 1, Rational(1)}}});
        labels.push_back(u + "^" + v);
    }
    return LieAlgebra::validate(nv + ne, specs, labels);
}

/// Even dimension and |E_c| <= |V_c| on every connected component.
inline bool symplectic_exists_graph(const Graph& g)
{
    if ((g.vertices().size() + g.edges().size()) % 2 != 0)
        return false;
    auto comp = g.components();
    std::map<int, std::pair<int, int>> count; // component -> (vertices, edges)
    for (int c : comp)
        ++count[c].first;
    for (const auto& [u, v] : g.edges())
        ++count[comp[g.vertex_index(u)]].second;
    for (const auto& [c, ve] : count)
        if (ve.second > ve.first)
            return false;
    return true;
}

struct AlgebraWithForm
{
    LieAlgebra algebra;
    SymplecticForm form;
};

/// 6-dim 2-step family: [X6,X5]=sX3, [X6,X4]=(s+t)X2, [X5,X4]=tX1, with the
/// anti-diagonal form omega(X1,X6)=omega(X2,X5)=omega(X3,X4)=1.
inline AlgebraWithForm family_g0st(const Rational& s, const Rational& t)
{
    if (sgn(s) == 0 || sgn(t) == 0)
        throw ZeroParameter();
    std::vector<BracketSpec> specs = {
        {5, 6, {{3, Rational(-s)}}},
        {4, 6, {{2, Rational(-(s + t))}}},
        {4, 5, {{1, Rational(-t)}}},
    };
    auto L = LieAlgebra::validate(6, specs);
    auto w = SymplecticForm::from_entries(6, {{1, 6, Rational(1)}, {2, 5, Rational(1)}, {3, 4, Rational(1)}});
    return {std::move(L), std::move(w)};
}

/// 8-dim characteristically nilpotent algebra with 1-dim center.
inline LieAlgebra example_nonhomog()
{
    std::vector<BracketSpec> specs;
    for (int k = 2; k <= 7; ++k)
        specs.push_back({1, k, {{k + 1, Rational(1)}}});
    specs.push_back({2, 3, {{6, Rational(1)}, {7, Rational(1)}}});
    specs.push_back({2, 4, {{7, Rational(1)}, {8, Rational(1)}}});
    specs.push_back({2, 5, {{8, Rational(1)}}});
    return LieAlgebra::validate(8, specs);
}

inline SymplecticForm nonhomog_form(const Rational& a, const Rational& b)
{
    return SymplecticForm::from_entries(8, {{1, 8, a},
                                            {2, 5, a},
                                            {2, 6, a},
                                            {2, 7, b},
                                            {3, 6, Rational(-b)},
                                            {4, 5, b}});
}

} // namespace nilharm
