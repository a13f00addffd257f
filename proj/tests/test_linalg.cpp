#include <nilharm/linalg.hpp>
#include <nilharm/random.hpp>

#include <gtest/gtest.h>

using namespace nilharm;

namespace
{

// Textbook Gauss-Jordan over Q, used as the oracle for the Bareiss path.
struct Naive
{
    RationalMatrix rref;
    std::vector<int> pivots;
    Rational det = 1;
};

Naive naive_reduce(RationalMatrix a)
{
    Naive out;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
        {
            std::swap(a[p], a[r]);
            out.det = -out.det;
        }
        Rational piv = a[r][c];
        out.det *= piv;
        for (auto& x : a[r])
            x /= piv;
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && sgn(a[i][c]) != 0)
            {
                Rational f = a[i][c];
                for (std::size_t j = 0; j < cols; ++j)
                    a[i][j] -= f * a[r][j];
            }
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    if (r < rows)
        out.det = 0;
    a.resize(r);
    out.rref = a;
    return out;
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, bool sparse)
{
    RationalMatrix m(rows, Vector(cols));
    std::bernoulli_distribution keep(sparse ? 0.4 : 1.0);
    for (auto& row : m)
        for (auto& x : row)
            x = keep(rng) ? random_rational(rng) : Rational(0);
    return m;
}

} // namespace

TEST(Bareiss, RrefMatchesNaiveElimination)
{
    auto rng = SeedStreams(0).stream("linalg.rref");
    for (int trial = 0; trial < 200; ++trial)
    {
        std::uniform_int_distribution<int> dim(1, 7);
        auto a = random_matrix(rng, dim(rng), dim(rng), trial % 2 == 0);
        std::vector<int> piv;
        auto r = linalg::rref(a, &piv);
        auto oracle = naive_reduce(a);
        EXPECT_EQ(r, oracle.rref);
        EXPECT_EQ(piv, oracle.pivots);
        EXPECT_EQ(linalg::rank(a), oracle.pivots.size());
    }
}

TEST(Bareiss, DeterminantMatchesNaiveElimination)
{
    auto rng = SeedStreams(0).stream("linalg.det");
    for (int trial = 0; trial < 200; ++trial)
    {
        std::uniform_int_distribution<int> dim(1, 7);
        const auto n = static_cast<std::size_t>(dim(rng));
        auto a = random_matrix(rng, n, n, trial % 3 == 0);
        EXPECT_EQ(linalg::determinant(a), naive_reduce(a).det);
    }
}

TEST(Bareiss, NullspaceIsAnnihilatedAndComplete)
{
    auto rng = SeedStreams(0).stream("linalg.null");
    for (int trial = 0; trial < 100; ++trial)
    {
        std::uniform_int_distribution<int> dim(1, 6);
        const std::size_t rows = dim(rng), cols = dim(rng);
        auto a = random_matrix(rng, rows, cols, true);
        auto ns = linalg::nullspace(a, cols);
        EXPECT_EQ(ns.size() + linalg::rank(a), cols);
        for (const auto& v : ns)
            EXPECT_TRUE(is_zero(linalg::mat_vec(a, v)));
    }
}

TEST(Bareiss, InverseTimesMatrixIsIdentity)
{
    auto rng = SeedStreams(0).stream("linalg.inv");
    int done = 0;
    while (done < 50)
    {
        auto a = random_matrix(rng, 5, 5, false);
        if (sgn(linalg::determinant(a)) == 0)
            continue;
        EXPECT_EQ(linalg::mat_mul(linalg::inverse(a), a), linalg::identity(5));
        ++done;
    }
}

TEST(Subspace, AnnihilatorCutsOutTheSpan)
{
    auto rng = SeedStreams(0).stream("linalg.subspace");
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<Vector> gens;
        for (int k = 0; k < 3; ++k)
            gens.push_back(random_vector(rng, 6));
        auto s = linalg::Subspace::span(gens, 6);
        auto q = s.annihilator();
        EXPECT_EQ(q.size() + s.dim(), 6u);
        for (const auto& g : gens)
        {
            EXPECT_TRUE(s.contains(g));
            EXPECT_TRUE(is_zero(linalg::mat_vec(q, g)));
        }
        Vector outside = random_vector(rng, 6);
        EXPECT_EQ(s.contains(outside), q.empty() || is_zero(linalg::mat_vec(q, outside)));
    }
}

TEST(Rational, ParsesAndCanonicalizes)
{
    EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
    EXPECT_EQ(parse_rational(" -7 "), make_rational(-7));
    EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
    EXPECT_THROW(parse_rational("1.5"), ParseError);
}
