#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilharm
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error
{
public:
    using Error::Error;
};

class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

/// Exact rational scalar. GMP keeps it in lowest terms with a positive
/// denominator once canonicalized; every constructor below canonicalizes.
using Rational = mpq_class;

/// Coordinates of a Lie algebra element (or functional) in a fixed basis.
using Vector = std::vector<Rational>;

using RationalMatrix = std::vector<Vector>;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw ParseError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q" or "-p/q" (surrounding blanks allowed).
inline Rational parse_rational(std::string_view text)
{
    std::size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t'))
        ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t'))
        --e;
    std::string s(text.substr(b, e - b));
    if (s.empty())
        throw ParseError("empty rational");
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + s + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0)
        throw ParseError("rational with zero denominator '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

/// Exact conversion of a finite double (every double is a dyadic rational).
inline Rational from_double(double x)
{
    Rational q(x);
    q.canonicalize();
    return q;
}

inline Vector zero_vector(std::size_t n)
{
    return Vector(n, Rational(0));
}

inline Vector unit_vector(std::size_t n, std::size_t k)
{
    Vector v = zero_vector(n);
    v.at(k) = 1;
    return v;
}

inline bool is_zero(const Vector& v)
{
    for (const auto& c : v)
        if (sgn(c) != 0)
            return false;
    return true;
}

inline Vector operator+(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("vector sum of different lengths");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("vector difference of different lengths");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Vector operator-(const Vector& a)
{
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

inline Vector operator*(const Rational& s, const Vector& a)
{
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = s * a[i];
    return r;
}

inline Rational dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("pairing of different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline std::vector<double> to_doubles(const Vector& v)
{
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = v[i].get_d();
    return r;
}

} // namespace nilharm
