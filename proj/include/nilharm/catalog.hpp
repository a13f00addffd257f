#pragma once

#include "lie_algebra.hpp"
#include "symplectic.hpp"

#include <string>
#include <vector>

namespace nilharm
{

/// Heisenberg algebra with [X3, X2] = X1.
inline LieAlgebra heisenberg()
{
    return LieAlgebra::validate(3, {{2, 3, {{1, Rational(-1)}}}});
}

inline Graph triangle_graph()
{
    return Graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

struct CatalogEntry
{
    std::string name;
    LieAlgebra algebra;
    bool flat_at_x1 = false; // xi0 = X1* gives a flat orbit
};

inline LieAlgebra g0st_extension(const Rational& s, const Rational& t)
{
    auto [L0, w] = family_g0st(s, t);
    return central_extension(L0, w);
}

inline LieAlgebra nonhomog_extension(const Rational& a, const Rational& b)
{
    return central_extension(example_nonhomog(), nonhomog_form(a, b));
}

/// Built-in algebras used by the test suites and the report command.
inline std::vector<CatalogEntry> catalog()
{
    std::vector<CatalogEntry> c;
    c.push_back({"abelian4", LieAlgebra::abelian(4), false});
    c.push_back({"h3", heisenberg(), true});
    c.push_back({"g0st(1,1)", family_g0st(1, 1).algebra, false});
    c.push_back({"g0st(2,3)", family_g0st(2, 3).algebra, false});
    c.push_back({"ext-g0st(1,1)", g0st_extension(1, 1), true});
    c.push_back({"ext-g0st(2,3)", g0st_extension(2, 3), true});
    c.push_back({"triangle", graph_lie_algebra(triangle_graph()), false});
    c.push_back({"nonhomog", example_nonhomog(), false});
    c.push_back({"ext-nonhomog(1,1)", nonhomog_extension(1, 1), true});
    return c;
}

class UnknownCatalogEntry : public Error
{
public:
    explicit UnknownCatalogEntry(const std::string& name) : Error("unknown catalog entry '" + name + "'") {}
};

/// Looks up "abelian<n>", "h3", "nonhomog", "triangle", "g0st(s,t)",
/// "ext-g0st(s,t)" and "ext-nonhomog(a,b)".
inline LieAlgebra catalog_algebra(const std::string& name)
{
    auto args = [&](const std::string& prefix) -> std::pair<Rational, Rational> {
        const auto open = prefix.size();
        if (name.size() < open + 2 || name[open] != '(' || name.back() != ')')
            throw UnknownCatalogEntry(name);
        const std::string inner = name.substr(open + 1, name.size() - open - 2);
        const auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw UnknownCatalogEntry(name);
        return {parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1))};
    };
    if (name == "h3")
        return heisenberg();
    if (name == "nonhomog")
        return example_nonhomog();
    if (name == "triangle")
        return graph_lie_algebra(triangle_graph());
    if (name.rfind("abelian", 0) == 0 && name.size() > 7)
    {
        int n = 0;
        try
        {
            n = std::stoi(name.substr(7));
        }
        catch (const std::exception&)
        {
            throw UnknownCatalogEntry(name);
        }
        return LieAlgebra::abelian(n);
    }
    if (name.rfind("ext-g0st", 0) == 0)
    {
        auto [s, t] = args("ext-g0st");
        return g0st_extension(s, t);
    }
    if (name.rfind("g0st", 0) == 0)
    {
        auto [s, t] = args("g0st");
        return family_g0st(s, t).algebra;
    }
    if (name.rfind("ext-nonhomog", 0) == 0)
    {
        auto [a, b] = args("ext-nonhomog");
        return nonhomog_extension(a, b);
    }
    throw UnknownCatalogEntry(name);
}

} // namespace nilharm
