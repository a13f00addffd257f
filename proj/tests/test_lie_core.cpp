#include <nilharm/bch.hpp>
#include <nilharm/catalog.hpp>
#include <nilharm/derivations.hpp>
#include <nilharm/flag.hpp>
#include <nilharm/lie_algebra.hpp>
#include <nilharm/random.hpp>

#include <gtest/gtest.h>

using namespace nilharm;

namespace
{

Vector e(int n, int k1) { return unit_vector(n, k1 - 1); }

// Strictly upper triangular 4x4 matrices with basis E_ij, i<j, in
// lexicographic order; the bracket is the matrix commutator.
struct UpperTriangular
{
    std::vector<std::pair<int, int>> basis;
    LieAlgebra algebra = LieAlgebra::abelian(1);

    RationalMatrix to_matrix(const Vector& x) const
    {
        RationalMatrix m(4, zero_vector(4));
        for (std::size_t b = 0; b < basis.size(); ++b)
            m[basis[b].first][basis[b].second] = x[b];
        return m;
    }

    Vector from_matrix(const RationalMatrix& m) const
    {
        Vector x(basis.size());
        for (std::size_t b = 0; b < basis.size(); ++b)
            x[b] = m[basis[b].first][basis[b].second];
        return x;
    }
};

RationalMatrix add(const RationalMatrix& a, const RationalMatrix& b, const Rational& s = 1)
{
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            c[i][j] += s * b[i][j];
    return c;
}

UpperTriangular upper_triangular()
{
    UpperTriangular u;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            u.basis.push_back({i, j});
    const int n = static_cast<int>(u.basis.size());
    std::vector<BracketSpec> specs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
        {
            auto ma = u.to_matrix(unit_vector(n, a)), mb = u.to_matrix(unit_vector(n, b));
            auto c = add(linalg::mat_mul(ma, mb), linalg::mat_mul(mb, ma), -1);
            Vector coords = u.from_matrix(c);
            BracketSpec s{a + 1, b + 1, {}};
            for (int k = 0; k < n; ++k)
                if (sgn(coords[k]) != 0)
                    s.terms.emplace_back(k + 1, coords[k]);
            if (!s.terms.empty())
                specs.push_back(s);
        }
    u.algebra = LieAlgebra::validate(n, specs);
    return u;
}

// exp and log of nilpotent 4x4 matrices as finite series.
RationalMatrix mat_exp(const RationalMatrix& x)
{
    RationalMatrix out = linalg::identity(4), term = linalg::identity(4);
    Rational fact = 1;
    for (int k = 1; k < 4; ++k)
    {
        term = linalg::mat_mul(term, x);
        fact *= k;
        out = add(out, term, 1 / fact);
    }
    return out;
}

RationalMatrix mat_log(const RationalMatrix& g)
{
    RationalMatrix nmat = add(g, linalg::identity(4), -1);
    RationalMatrix out(4, zero_vector(4)), term = linalg::identity(4);
    for (int k = 1; k < 4; ++k)
    {
        term = linalg::mat_mul(term, nmat);
        out = add(out, term, Rational(k % 2 ? 1 : -1, k));
    }
    return out;
}

} // namespace

TEST(Validate, AbelianIsStepOne)
{
    auto L = LieAlgebra::abelian(4);
    EXPECT_EQ(L.nilpotency_step(), 1);
    EXPECT_EQ(L.center().dim(), 4u);
}

TEST(Validate, HeisenbergIsStepTwo)
{
    auto L = heisenberg();
    EXPECT_EQ(L.nilpotency_step(), 2);
    EXPECT_EQ(L.center(), linalg::Subspace::span({e(3, 1)}, 3));
    EXPECT_EQ(L.bracket(e(3, 3), e(3, 2)), e(3, 1));
}

TEST(Validate, RejectsNonNilpotent)
{
    try
    {
        LieAlgebra::validate(3, {{1, 2, {{3, Rational(1)}}}, {1, 3, {{2, Rational(1)}}}});
        FAIL() << "expected NotNilpotent";
    }
    catch (const NotNilpotent& err)
    {
        EXPECT_EQ(err.stable_dim, 2u);
    }
}

TEST(Validate, ReportsFirstJacobiTriple)
{
    // [X2,X4]=X1 spoils Jacobi on (1,2,3)
    try
    {
        LieAlgebra::validate(4, {{1, 2, {{3, Rational(1)}}}, {1, 3, {{4, Rational(1)}}}, {2, 3, {{4, Rational(1)}}},
                                 {2, 4, {{1, Rational(1)}}}});
        FAIL() << "expected JacobiViolation";
    }
    catch (const JacobiViolation& err)
    {
        EXPECT_EQ(err.i, 1);
        EXPECT_FALSE(is_zero(err.residual));
    }
}

TEST(Validate, RejectsMalformedTables)
{
    EXPECT_THROW(LieAlgebra::validate(3, {{2, 1, {{3, Rational(1)}}}}), InvalidStructure);
    EXPECT_THROW(LieAlgebra::validate(3, {{1, 2, {{3, Rational(1)}}}, {1, 2, {{3, Rational(1)}}}}),
                 InvalidStructure);
    EXPECT_THROW(LieAlgebra::validate(3, {{1, 4, {{3, Rational(1)}}}}), InvalidStructure);
    EXPECT_THROW(LieAlgebra::validate(3, {{1, 2, {{0, Rational(1)}}}}), InvalidStructure);
}

TEST(Bracket, NonhomogeneousExample)
{
    auto L = example_nonhomog();
    EXPECT_EQ(L.bracket(e(8, 2), e(8, 3)), e(8, 6) + e(8, 7));
    EXPECT_EQ(L.nilpotency_step(), 7);
    EXPECT_EQ(L.center(), linalg::Subspace::span({e(8, 8)}, 8));
}

TEST(Bracket, AntisymmetricAndJacobiOnRandomTriples)
{
    auto rng = SeedStreams(0).stream("lie.jacobi");
    for (const auto& entry : catalog())
    {
        const int n = entry.algebra.dim();
        for (int t = 0; t < 100; ++t)
        {
            Vector x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
            EXPECT_TRUE(is_zero(entry.algebra.jacobi_residual(x, y, z))) << entry.name;
            EXPECT_TRUE(is_zero(entry.algebra.bracket(x, x))) << entry.name;
            EXPECT_EQ(entry.algebra.bracket(x, y), -entry.algebra.bracket(y, x)) << entry.name;
        }
    }
}

TEST(Flag, HeisenbergWithPreferredVector)
{
    auto L = heisenberg();
    auto f = jordan_holder_flag(L, e(3, 1));
    ASSERT_EQ(f.basis.size(), 3u);
    EXPECT_EQ(f.basis[0], e(3, 1));
    EXPECT_EQ(f.ideal(2, 3), linalg::Subspace::span({e(3, 1), e(3, 2)}, 3));
    EXPECT_FALSE(check_flag(L, f).has_value());
}

TEST(Flag, RejectsNonCentralPreferredVector)
{
    EXPECT_THROW(jordan_holder_flag(heisenberg(), e(3, 2)), PreferredVectorNotCentral);
}

TEST(Flag, EveryCatalogFlagPassesExactChecks)
{
    for (const auto& entry : catalog())
    {
        auto f = jordan_holder_flag(entry.algebra);
        EXPECT_FALSE(check_flag(entry.algebra, f).has_value()) << entry.name;
        for (std::size_t j = 1; j <= f.basis.size(); ++j)
            EXPECT_TRUE(entry.algebra.is_ideal(f.ideal(j, f.basis.size()))) << entry.name;
    }
}

TEST(Flag, ExtensionKeepsCentralGeneratorFirst)
{
    auto L = g0st_extension(1, 1);
    auto f = jordan_holder_flag(L, e(7, 1));
    EXPECT_EQ(f.basis[0], e(7, 1));
    EXPECT_FALSE(check_flag(L, f).has_value());
}

TEST(Flag, CheckerCatchesBadOrder)
{
    FlagSequence bad{{e(3, 2), e(3, 1), e(3, 3)}};
    EXPECT_EQ(check_flag(heisenberg(), bad), std::optional<std::size_t>(1));
}

TEST(Bch, AbelianIsSum)
{
    auto L = LieAlgebra::abelian(3);
    Vector x{1, 2, 3}, y{make_rational(1, 2), -1, 0};
    EXPECT_EQ(bch_product(L, x, y), x + y);
}

TEST(Bch, HeisenbergCentralTerm)
{
    auto L = heisenberg();
    auto rng = SeedStreams(0).stream("bch.h3");
    for (int t = 0; t < 50; ++t)
    {
        Vector x = random_vector(rng, 3), y = random_vector(rng, 3);
        Vector p = bch_product(L, x, y);
        EXPECT_EQ(p[0], x[0] + y[0] + Rational(x[2] * y[1] - x[1] * y[2]) / 2);
        EXPECT_EQ(p[1], x[1] + y[1]);
        EXPECT_EQ(p[2], x[2] + y[2]);
    }
}

TEST(Bch, DynkinWeightsOfLowDegree)
{
    // words xy and yx carry 1/4 and -1/4, which sum to [x,y]/2
    const auto& w2 = detail::DynkinTable::weights(2);
    EXPECT_EQ(w2[0b01], make_rational(1, 4));
    EXPECT_EQ(w2[0b10], make_rational(-1, 4));
    EXPECT_EQ(w2[0b00], 0);
    EXPECT_EQ(w2[0b11], 0);
    const auto& w1 = detail::DynkinTable::weights(1);
    EXPECT_EQ(w1[0], 1);
    EXPECT_EQ(w1[1], 1);
}

TEST(Bch, MatchesMatrixExpLogOracle)
{
    auto u = upper_triangular();
    auto rng = SeedStreams(0).stream("bch.matrix");
    for (int t = 0; t < 50; ++t)
    {
        Vector x = random_vector(rng, 6), y = random_vector(rng, 6);
        auto oracle = u.from_matrix(mat_log(linalg::mat_mul(mat_exp(u.to_matrix(x)), mat_exp(u.to_matrix(y)))));
        EXPECT_EQ(bch_product(u.algebra, x, y), oracle);
    }
}

TEST(Bch, ExactGroupLawOnCatalog)
{
    auto rng = SeedStreams(0).stream("bch.group");
    for (const auto& entry : catalog())
    {
        const auto& L = entry.algebra;
        const int n = L.dim();
        for (int t = 0; t < 100; ++t)
        {
            Vector x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
            EXPECT_EQ(bch_product(L, bch_product(L, x, y), z), bch_product(L, x, bch_product(L, y, z)))
                << entry.name;
            EXPECT_TRUE(is_zero(bch_product(L, x, group_inverse(x)))) << entry.name;
            EXPECT_EQ(bch_product(L, zero_vector(n), y), y) << entry.name;
            EXPECT_EQ(bch_product(L, x, zero_vector(n)), x) << entry.name;
        }
    }
}

TEST(Bch, DoubleMatchesExact)
{
    auto L = example_nonhomog();
    auto rng = SeedStreams(0).stream("bch.double");
    for (int t = 0; t < 20; ++t)
    {
        Vector x = random_vector(rng, 8), y = random_vector(rng, 8);
        auto exact = bch_product(L, x, y);
        auto approx = bch_product(L, to_doubles(x), to_doubles(y));
        for (int k = 0; k < 8; ++k)
            EXPECT_NEAR(approx[k], exact[k].get_d(), 1e-9 * (1 + std::abs(exact[k].get_d())));
    }
}

TEST(Derivations, AbelianIsFullMatrixSpace)
{
    EXPECT_EQ(derivation_space(LieAlgebra::abelian(3)).operators.size(), 9u);
}

TEST(Derivations, LeibnizHoldsForEveryBasisElement)
{
    for (const auto& entry : catalog())
    {
        const auto& L = entry.algebra;
        const int n = L.dim();
        auto space = derivation_space(L);
        EXPECT_TRUE(closed_under_commutator(space)) << entry.name;
        for (const auto& op : space.operators)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    ASSERT_TRUE(is_zero(leibniz_residual(L, op, unit_vector(n, i), unit_vector(n, j))))
                        << entry.name;
    }
}

TEST(Derivations, HeisenbergDimension)
{
    // Der(h3): 6 = 4 (gl_2 acting on X2,X3, trace fixing X1) + 2 (X2,X3 -> X1)
    EXPECT_EQ(derivation_space(heisenberg()).operators.size(), 6u);
}

TEST(Derivations, NonhomogeneousHasZeroDiagonal)
{
    auto space = derivation_space(example_nonhomog());
    EXPECT_FALSE(space.operators.empty());
    for (std::size_t w = 0; w < space.operators.size(); ++w)
        for (int k = 0; k < 8; ++k)
            EXPECT_EQ(space.coefficient(w, k, k), 0);
}

TEST(CharacteristicNilpotency, Examples)
{
    EXPECT_FALSE(is_characteristically_nilpotent(LieAlgebra::abelian(2)).success);
    auto h = is_characteristically_nilpotent(heisenberg());
    EXPECT_FALSE(h.success);
    EXPECT_GE(h.failed_stage, 1u);

    auto L = example_nonhomog();
    auto space = derivation_space(L);
    auto cert = is_characteristically_nilpotent(L, space);
    ASSERT_TRUE(cert.success);
    EXPECT_EQ(cert.flag.size(), 8u);
    for (const auto& op : space.operators)
        EXPECT_TRUE(is_nilpotent_operator(op));
    // the flag triangularizes every derivation strictly
    for (const auto& op : space.operators)
        for (std::size_t k = 0; k < cert.flag.size(); ++k)
        {
            std::vector<Vector> below(cert.flag.begin(), cert.flag.begin() + static_cast<long>(k));
            EXPECT_TRUE(linalg::Subspace::span(below, 8).contains(linalg::mat_vec(op, cert.flag[k])));
        }
}
