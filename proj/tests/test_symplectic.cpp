#include <nilharm/catalog.hpp>
#include <nilharm/derivations.hpp>
#include <nilharm/random.hpp>
#include <nilharm/symplectic.hpp>

#include <gtest/gtest.h>

using namespace nilharm;

namespace
{

SymplecticForm standard_form(std::size_t n)
{
    std::vector<std::tuple<int, int, Rational>> entries;
    for (std::size_t k = 1; 2 * k <= n; ++k)
        entries.emplace_back(static_cast<int>(2 * k - 1), static_cast<int>(2 * k), Rational(1));
    return SymplecticForm::from_entries(n, entries);
}

// Brute force over all ordered triples with alternating-sum expansion.
bool cocycle_oracle(const LieAlgebra& L, const SymplecticForm& w)
{
    const int n = L.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
            {
                Vector x = unit_vector(n, i), y = unit_vector(n, j), z = unit_vector(n, k);
                if (sgn(w(x, L.bracket(y, z)) + w(y, L.bracket(z, x)) + w(z, L.bracket(x, y))) != 0)
                    return false;
            }
    return true;
}

} // namespace

TEST(Cocycle, AbelianAcceptsAnySkewForm)
{
    auto rng = SeedStreams(0).stream("symp.abelian");
    RationalMatrix m(4, zero_vector(4));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
        {
            m[i][j] = random_rational(rng);
            m[j][i] = -m[i][j];
        }
    EXPECT_TRUE(is_two_cocycle(LieAlgebra::abelian(4), SymplecticForm(m)).ok);
}

TEST(Cocycle, FamilyFormPasses)
{
    auto [L, w] = family_g0st(1, 1);
    EXPECT_TRUE(is_two_cocycle(L, w).ok);
    EXPECT_EQ(abs(w.determinant()), 1);
}

TEST(Cocycle, ElementaryFormFailsWithTriple)
{
    auto L = family_g0st(1, 1).algebra;
    auto w = SymplecticForm::from_entries(6, {{1, 2, Rational(1)}});
    auto r = is_two_cocycle(L, w);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.triple, (std::array<int, 3>{1, 4, 6}));
    EXPECT_FALSE(cocycle_oracle(L, w));
    EXPECT_THROW(central_extension(L, w), NotACocycle);
}

TEST(Cocycle, AgreesWithOrderedTripleOracle)
{
    auto rng = SeedStreams(0).stream("symp.oracle");
    auto L = example_nonhomog();
    for (int t = 0; t < 40; ++t)
    {
        RationalMatrix m(8, zero_vector(8));
        std::bernoulli_distribution keep(0.15);
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                if (keep(rng))
                {
                    m[i][j] = random_rational(rng);
                    m[j][i] = -m[i][j];
                }
        SymplecticForm w(m);
        EXPECT_EQ(is_two_cocycle(L, w).ok, cocycle_oracle(L, w));
    }
    EXPECT_TRUE(cocycle_oracle(L, nonhomog_form(1, 1)));
}

TEST(Extension, AbelianPlaneGivesHeisenberg)
{
    auto L = central_extension(LieAlgebra::abelian(2), standard_form(2));
    EXPECT_EQ(L.dim(), 3);
    EXPECT_EQ(L.nilpotency_step(), 2);
    EXPECT_EQ(L.center(), linalg::Subspace::span({unit_vector(3, 0)}, 3));
    // [X2, X3] = omega(e1, e2) X1 = X1
    EXPECT_EQ(L.basis_bracket(1, 2), unit_vector(3, 0));
}

TEST(Extension, FamilyExtensionsAreOneStepLonger)
{
    auto rng = SeedStreams(0).stream("symp.family");
    for (int t = 0; t < 20; ++t)
    {
        Rational s = random_nonzero_rational(rng), u = random_nonzero_rational(rng);
        auto [L0, w] = family_g0st(s, u);
        EXPECT_EQ(L0.nilpotency_step(), 2);
        EXPECT_TRUE(is_two_cocycle(L0, w).ok);
        EXPECT_TRUE(w.nondegenerate());
        auto L = central_extension(L0, w);
        EXPECT_EQ(L.dim(), 7);
        EXPECT_EQ(L.center().dim(), 1u);
        EXPECT_EQ(L.nilpotency_step(), 3);
    }
}

TEST(Extension, NonhomogeneousForm)
{
    auto L0 = example_nonhomog();
    EXPECT_TRUE(is_two_cocycle(L0, nonhomog_form(1, 1)).ok);
    EXPECT_FALSE(nonhomog_form(1, 0).nondegenerate());
    EXPECT_TRUE(nonhomog_form(2, 3).nondegenerate());
    auto rng = SeedStreams(0).stream("symp.nonhomog");
    for (int t = 0; t < 10; ++t)
    {
        Rational a = random_rational(rng), b = random_rational(rng);
        EXPECT_TRUE(is_two_cocycle(L0, nonhomog_form(a, b)).ok);
        // det = (a^2 b^2)^2 up to sign for this pattern, so nondegenerate iff ab != 0
        EXPECT_EQ(nonhomog_form(a, b).nondegenerate(), sgn(a) != 0 && sgn(b) != 0);
    }
    auto L = central_extension(L0, nonhomog_form(1, 1));
    EXPECT_EQ(L.nilpotency_step(), 8);
    EXPECT_EQ(L.center().dim(), 1u);
}

TEST(Family, RejectsZeroParameter)
{
    EXPECT_THROW(family_g0st(0, 1), ZeroParameter);
    EXPECT_THROW(family_g0st(1, 0), ZeroParameter);
}

TEST(Graph, TriangleHasSymplecticExtension)
{
    auto g = triangle_graph();
    auto L = graph_lie_algebra(g);
    EXPECT_EQ(L.dim(), 6);
    EXPECT_EQ(L.nilpotency_step(), 2);
    EXPECT_TRUE(symplectic_exists_graph(g));
}

TEST(Graph, SingleEdgeIsOdd)
{
    Graph g({"u", "v"}, {{"u", "v"}});
    EXPECT_EQ(graph_lie_algebra(g).dim(), 3);
    EXPECT_FALSE(symplectic_exists_graph(g));
}

TEST(Graph, DisjointTriangles)
{
    Graph g({"a", "b", "c", "d", "e", "f"},
            {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"d", "e"}, {"e", "f"}, {"d", "f"}});
    EXPECT_EQ(graph_lie_algebra(g).dim(), 12);
    EXPECT_TRUE(symplectic_exists_graph(g));
}

TEST(Graph, DenseComponentFails)
{
    // K4 has 6 edges on 4 vertices
    Graph g({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
    EXPECT_FALSE(symplectic_exists_graph(g));
}

TEST(Graph, VertexBracketNonzeroIffEdge)
{
    Graph g({"d", "a", "c", "b"}, {{"c", "a"}, {"b", "d"}, {"a", "b"}});
    auto L = graph_lie_algebra(g);
    ASSERT_EQ(g.vertices(), (std::vector<std::string>{"a", "b", "c", "d"}));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
        {
            auto pair = std::make_pair(g.vertices()[std::min(i, j)], g.vertices()[std::max(i, j)]);
            bool edge = std::find(g.edges().begin(), g.edges().end(), pair) != g.edges().end();
            EXPECT_EQ(!is_zero(L.basis_bracket(i, j)), edge);
        }
    // edges are sorted lexicographically: a^b, a^c, b^d
    EXPECT_EQ(L.basis_bracket(0, 1), unit_vector(7, 4));
    EXPECT_EQ(L.basis_bracket(0, 2), unit_vector(7, 5));
    EXPECT_EQ(L.basis_bracket(1, 3), unit_vector(7, 6));
}

TEST(Graph, RejectsLoopsAndDuplicates)
{
    EXPECT_THROW(Graph({"a"}, {{"a", "a"}}), InvalidGraph);
    EXPECT_THROW(Graph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InvalidGraph);
    EXPECT_THROW(Graph({"a", "a"}, {}), InvalidGraph);
    EXPECT_THROW(Graph({"a"}, {{"a", "z"}}), InvalidGraph);
}

TEST(Catalog, EveryEntryValidates)
{
    for (const auto& entry : catalog())
        EXPECT_EQ(catalog_algebra(entry.name).dim(), entry.algebra.dim()) << entry.name;
    EXPECT_THROW(catalog_algebra("nope"), UnknownCatalogEntry);
    EXPECT_TRUE(is_characteristically_nilpotent(example_nonhomog()).success);
}
