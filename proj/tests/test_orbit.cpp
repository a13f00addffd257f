#include <nilharm/catalog.hpp>
#include <nilharm/orbit.hpp>
#include <nilharm/random.hpp>

#include <gtest/gtest.h>

using namespace nilharm;

namespace
{

Vector x1_star(int n) { return unit_vector(n, 0); }

std::vector<OrbitData> flat_orbits()
{
    std::vector<OrbitData> out;
    for (const auto& entry : catalog())
        if (entry.flat_at_x1)
            out.push_back(orbit_for(entry.algebra, x1_star(entry.algebra.dim())));
    return out;
}

} // namespace

TEST(Isotropy, Examples)
{
    EXPECT_EQ(isotropy_algebra(heisenberg(), x1_star(3)), linalg::Subspace::span({unit_vector(3, 0)}, 3));
    EXPECT_EQ(isotropy_algebra(LieAlgebra::abelian(3), Vector{1, 2, 3}).dim(), 3u);
    EXPECT_EQ(isotropy_algebra(g0st_extension(1, 1), x1_star(7)), linalg::Subspace::span({unit_vector(7, 0)}, 7));
}

TEST(JumpIndices, Heisenberg)
{
    auto o = orbit_for(heisenberg(), x1_star(3));
    EXPECT_EQ(o.jump_set, (std::vector<int>{2, 3}));
    EXPECT_EQ(o.d(), 2);
    EXPECT_TRUE(o.flat);
    EXPECT_NE(sgn(o.direct_sum_determinant), 0);
}

TEST(JumpIndices, AbelianHasNoJumps)
{
    auto L = LieAlgebra::abelian(3);
    auto o = jump_indices(L, jordan_holder_flag(L, x1_star(3)), x1_star(3));
    EXPECT_TRUE(o.jump_set.empty());
    EXPECT_FALSE(o.flat);
    EXPECT_THROW(alpha(o, {}, {}), NotFlat);
}

TEST(JumpIndices, ExtensionIsFlatWithFullJumpSet)
{
    auto o = orbit_for(g0st_extension(1, 1), x1_star(7));
    EXPECT_EQ(o.jump_set, (std::vector<int>{2, 3, 4, 5, 6, 7}));
    EXPECT_TRUE(o.flat);
}

TEST(JumpIndices, PairingMustBeOne)
{
    auto L = heisenberg();
    auto flag = jordan_holder_flag(L, x1_star(3));
    Vector xi{2, 0, 0};
    EXPECT_THROW(jump_indices(L, flag, xi), PairingNotOne);
    EXPECT_THROW(orbit_for(L, Vector{0, 1, 0}), PairingNotOne);
    // orbit_for rescales X_1 instead
    auto o = orbit_for(L, xi);
    EXPECT_EQ(o.flag.basis[0], (Vector{make_rational(1, 2), 0, 0}));
}

TEST(JumpIndices, FlatCasesHaveEvenDimensionAndDirectSum)
{
    for (const auto& o : flat_orbits())
    {
        EXPECT_TRUE(o.flat);
        EXPECT_EQ(o.d() % 2, 0);
        EXPECT_EQ(o.d(), o.algebra.dim() - 1);
        EXPECT_NE(sgn(o.direct_sum_determinant), 0);
    }
}

TEST(Alpha, HeisenbergSign)
{
    auto o = orbit_for(heisenberg(), x1_star(3));
    EXPECT_EQ(alpha(o, {1, 0}, {0, 1}), make_rational(-1, 2));
    auto rng = SeedStreams(0).stream("orbit.h3");
    for (int t = 0; t < 50; ++t)
    {
        Vector x = random_vector(rng, 2), y = random_vector(rng, 2);
        EXPECT_EQ(product_e(o, x, y), x + y);
        EXPECT_EQ(alpha(o, x, y), Rational(x[1] * y[0] - x[0] * y[1]) / 2);
    }
}

TEST(Alpha, ExactIdentitiesOnFlatCatalog)
{
    auto rng = SeedStreams(0).stream("orbit.alpha");
    for (const auto& o : flat_orbits())
    {
        const auto d = static_cast<std::size_t>(o.d());
        for (int t = 0; t < 100; ++t)
        {
            Vector x = random_vector(rng, d), y = random_vector(rng, d), z = random_vector(rng, d);
            Rational lam = random_rational(rng), mu = random_rational(rng);
            EXPECT_TRUE(verify_cocycle_identity(o, x, y, z));
            EXPECT_EQ(alpha(o, lam * x, mu * x), 0);
            EXPECT_EQ(alpha(o, x, -x), 0);
            EXPECT_EQ(alpha(o, zero_vector(d), y), 0);
            EXPECT_TRUE(verify_cocycle_identity(o, x, y, zero_vector(d)));
            // alpha(x,y) + alpha(y,x) against the symmetric part of the product
            Vector s = o.to_ambient(x), u = o.to_ambient(y);
            Vector sym = bch_product(o.algebra, s, u) + bch_product(o.algebra, u, s);
            EXPECT_EQ(alpha(o, x, y) + alpha(o, y, x), linalg::mat_vec(o.flag_inverse, sym)[0]);
        }
    }
}

TEST(Gamma, CocycleIdentitiesExactAndFloating)
{
    auto rng = SeedStreams(0).stream("orbit.gamma");
    for (const auto& o : flat_orbits())
    {
        const auto d = static_cast<std::size_t>(o.d());
        for (int t = 0; t < 20; ++t)
        {
            Vector x = random_vector(rng, d), y = random_vector(rng, d), z = random_vector(rng, d);
            auto r = gamma_identities(o, x, y, z);
            EXPECT_TRUE(r.all_exact());
            EXPECT_LT(r.max_residual(), 1e-12);
        }
        auto zero = gamma_identities(o, zero_vector(d), zero_vector(d), zero_vector(d));
        EXPECT_EQ(zero.max_residual(), 0.0);
    }
}

TEST(TwistedGroup, CompiledMatchesExact)
{
    auto rng = SeedStreams(0).stream("orbit.compiled");
    for (const auto& o : flat_orbits())
    {
        auto g = TwistedGroup::from_orbit(o);
        const int d = g.d();
        for (int t = 0; t < 20; ++t)
        {
            Vector x = random_vector(rng, d), y = random_vector(rng, d);
            auto xd = to_doubles(x), yd = to_doubles(y);
            auto exact = split_product(o, x, y);
            EXPECT_NEAR(g.alpha(xd.data(), yd.data()), exact.alpha.get_d(), 1e-9);
            std::vector<double> p(d);
            g.product(xd.data(), yd.data(), p.data());
            for (int k = 0; k < d; ++k)
                EXPECT_NEAR(p[k], exact.predual[k].get_d(), 1e-9);
        }
    }
}

TEST(TwistedGroup, StructureFlags)
{
    auto h = TwistedGroup::from_orbit(orbit_for(heisenberg(), x1_star(3)));
    EXPECT_TRUE(h.additive());
    EXPECT_TRUE(h.bilinear());
    EXPECT_EQ(h.bilinear_matrix(), (std::vector<double>{0.0, -0.5, 0.5, 0.0}));
    EXPECT_EQ(h.weights(), (std::vector<int>{1, 1}));

    auto e = TwistedGroup::from_orbit(orbit_for(g0st_extension(1, 1), x1_star(7)));
    EXPECT_FALSE(e.additive());
    EXPECT_EQ(e.weights(), (std::vector<int>{2, 2, 2, 1, 1, 1}));

    auto a = TwistedGroup::abelian(2);
    EXPECT_TRUE(a.additive());
    double x[2] = {1.0, 2.0}, y[2] = {3.0, -1.0};
    EXPECT_EQ(a.alpha(x, y), 0.0);
}
