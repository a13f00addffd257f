#pragma once

#include "rational.hpp"

namespace nilharm
{

/// Adapts a coefficient ring for the generic bracket/BCH code. The ring must
/// contain Q (exactly or approximately) and support + - *.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational>
{
    static Rational zero() { return Rational(0); }
    static Rational from(const Rational& q) { return q; }
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
};

template <>
struct ScalarTraits<double>
{
    static double zero() { return 0.0; }
    static double from(const Rational& q) { return q.get_d(); }
    static bool is_zero(double x) { return x == 0.0; }
};

} // namespace nilharm
