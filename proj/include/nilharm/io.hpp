#pragma once

#include "grid.hpp"
#include "lie_algebra.hpp"
#include "symplectic.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace nilharm
{

using Json = nlohmann::ordered_json;

class IoError : public Error
{
public:
    using Error::Error;
};

inline Json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const Json::exception& e)
    {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out || !(out << text))
        throw IoError("cannot write " + path);
}

namespace detail
{

template <class F>
auto parse_field(const std::string& what, F&& f)
{
    try
    {
        return f();
    }
    catch (const Json::exception& e)
    {
        throw ParseError(what + ": " + e.what());
    }
}

inline Rational json_rational(const Json& v)
{
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(v.get<long>());
    throw ParseError("rational must be a string \"p/q\" or an integer");
}

} // namespace detail

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json vector_json(const Vector& v)
{
    Json a = Json::array();
    for (const auto& c : v)
        a.push_back(rational_json(c));
    return a;
}

/// Comma-separated rationals, e.g. "1,0,-1/2".
inline Vector parse_vector(const std::string& text)
{
    Vector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_rational(item));
    if (v.empty())
        throw ParseError("empty coordinate list");
    return v;
}

/// {"dim": n, "brackets": [{"i", "j", "terms": [{"k", "c"}]}], "labels": [...]}, 1-based.
inline LieAlgebra algebra_from_json(const Json& j)
{
    return detail::parse_field("algebra", [&] {
        const int dim = j.at("dim").get<int>();
        std::vector<BracketSpec> specs;
        if (j.contains("brackets"))
            for (const auto& b : j.at("brackets"))
            {
                BracketSpec s{b.at("i").get<int>(), b.at("j").get<int>(), {}};
                for (const auto& t : b.at("terms"))
                    s.terms.emplace_back(t.at("k").get<int>(), detail::json_rational(t.at("c")));
                specs.push_back(std::move(s));
            }
        std::vector<std::string> labels;
        if (j.contains("labels"))
            labels = j.at("labels").get<std::vector<std::string>>();
        return LieAlgebra::validate(dim, specs, labels);
    });
}

inline Json algebra_json(const LieAlgebra& L)
{
    Json brackets = Json::array();
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j)
        {
            const auto v = L.basis_bracket(i, j);
            if (is_zero(v))
                continue;
            Json terms = Json::array();
            for (int k = 0; k < L.dim(); ++k)
                if (sgn(v[k]) != 0)
                    terms.push_back({{"k", k + 1}, {"c", rational_json(v[k])}});
            brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"terms", terms}});
        }
    Json out = {{"dim", L.dim()}, {"brackets", brackets}};
    if (!L.labels().empty())
        out["labels"] = L.labels();
    return out;
}

/// {"dim": n, "entries": [{"i", "j", "c"}]} with i < j, 1-based.
inline SymplecticForm form_from_json(const Json& j)
{
    return detail::parse_field("form", [&] {
        std::vector<std::tuple<int, int, Rational>> entries;
        for (const auto& e : j.at("entries"))
            entries.emplace_back(e.at("i").get<int>(), e.at("j").get<int>(), detail::json_rational(e.at("c")));
        return SymplecticForm::from_entries(j.at("dim").get<std::size_t>(), entries);
    });
}

/// {"vertices": [...], "edges": [[u, v], ...]}.
inline Graph graph_from_json(const Json& j)
{
    return detail::parse_field("graph", [&] {
        std::vector<std::pair<std::string, std::string>> edges;
        for (const auto& e : j.at("edges"))
        {
            if (e.size() != 2)
                throw ParseError("graph edge must have two endpoints");
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
        return Graph(j.at("vertices").get<std::vector<std::string>>(), edges);
    });
}

/// {"d", "L", "N", "values": [[re, im], ...]}, row-major, last axis fastest.
inline SampledSymbol symbol_from_json(const Json& j)
{
    return detail::parse_field("symbol", [&] {
        Grid g(j.at("d").get<int>(), j.at("L").get<double>(), j.at("N").get<int>());
        const auto& vals = j.at("values");
        if (vals.size() != g.size())
            throw ParseError("symbol has " + std::to_string(vals.size()) + " values, grid needs "
                             + std::to_string(g.size()));
        std::vector<Complex> v;
        v.reserve(g.size());
        for (const auto& p : vals)
        {
            if (p.size() != 2)
                throw ParseError("symbol value must be [re, im]");
            v.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return SampledSymbol(g, std::move(v));
    });
}

inline Json symbol_json(const SampledSymbol& s)
{
    Json vals = Json::array();
    for (const auto& v : s.values())
        vals.push_back({v.real(), v.imag()});
    return {{"d", s.grid().d()}, {"L", s.grid().half_width()}, {"N", s.grid().points_per_axis()}, {"values", vals}};
}

} // namespace nilharm
