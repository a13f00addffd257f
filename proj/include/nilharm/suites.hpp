#pragma once

#include "catalog.hpp"
#include "check.hpp"
#include "cz.hpp"
#include "derivations.hpp"
#include "multiplier.hpp"
#include "pedersen.hpp"
#include "random.hpp"
#include "transference.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Verification suites shared by the acceptance binary and `nilharm report`.

namespace nilharm
{

namespace tolerance
{
inline constexpr double trace = 1e-3;
inline constexpr double isometry = 1e-3;
inline constexpr double adjoint = 1e-8;
inline constexpr double homomorphism = 1e-3;
inline constexpr double inversion = 1e-3;
inline constexpr double ccr = 1e-10;
inline constexpr double pi_isometry = 1e-10;
inline constexpr double submultiplicative_slack = 1e-6;
inline constexpr double associativity = 1e-2;
inline constexpr double density = 1e-6;
inline constexpr double mean_zero = 1e-12;
inline constexpr double reconstruction = 1e-12;
inline constexpr int overlap = 64;
inline constexpr double weak11_spread = 4.0;
inline constexpr double hormander_refinement = 0.1;
inline constexpr double multiplier_identity = 1e-2;
inline constexpr double multiplier_zero = 1e-10;
inline constexpr double cross_check = 1e-10;
inline constexpr double transference = 1e-12;
} // namespace tolerance

struct Suite
{
    std::string key;
    std::string title;
    std::function<std::vector<Check>(std::uint64_t)> run;
};

namespace detail
{

inline std::string tag(const std::string& name, const std::string& what) { return name + "[" + what + "]"; }

inline OrbitData x1_orbit(const LieAlgebra& L) { return orbit_for(L, unit_vector(static_cast<std::size_t>(L.dim()), 0)); }

} // namespace detail

/// Jacobi, group law, flags, jump indices and the exact cocycle over the catalog.
inline std::vector<Check> exact_algebra_suite(std::uint64_t seed)
{
    const SeedStreams streams(seed);
    std::vector<Check> out;
    for (const auto& e : catalog())
    {
        const auto& L = e.algebra;
        const int n = L.dim();
        bool jacobi = true;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    jacobi = jacobi && is_zero(L.jacobi_residual(unit_vector(n, i), unit_vector(n, j), unit_vector(n, k)));
        out.push_back(Check::holds(detail::tag("jacobi_zero", e.name), jacobi));

        auto rng = streams.stream("exact.bch." + e.name);
        bool assoc = true;
        for (int t = 0; t < 100; ++t)
        {
            Vector x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
            assoc = assoc && bch_product(L, bch_product(L, x, y), z) == bch_product(L, x, bch_product(L, y, z));
        }
        out.push_back(Check::holds(detail::tag("bch_associative", e.name), assoc));
        out.push_back(Check::holds(detail::tag("jordan_holder_flag", e.name), !check_flag(L, jordan_holder_flag(L))));
    }

    const auto h = detail::x1_orbit(heisenberg());
    out.push_back(Check::holds("h3_jump_set", h.jump_set == std::vector<int>{2, 3}));
    out.push_back(Check::holds("h3_flat", h.flat));

    for (const auto& e : catalog())
    {
        if (!e.flat_at_x1)
            continue;
        const auto o = detail::x1_orbit(e.algebra);
        out.push_back(Check::holds(detail::tag("direct_sum_determinant_nonzero", e.name),
                                   o.flat && sgn(o.direct_sum_determinant) != 0));
        auto rng = streams.stream("exact.alpha." + e.name);
        const auto d = static_cast<std::size_t>(o.d());
        bool cocycle = true, collinear = true;
        for (int t = 0; t < 100; ++t)
        {
            Vector x = random_vector(rng, d), y = random_vector(rng, d), z = random_vector(rng, d);
            Rational lam = random_rational(rng), mu = random_rational(rng);
            cocycle = cocycle && verify_cocycle_identity(o, x, y, z);
            collinear = collinear && sgn(alpha(o, lam * x, mu * x)) == 0;
        }
        out.push_back(Check::holds(detail::tag("cocycle_identity", e.name), cocycle));
        out.push_back(Check::holds(detail::tag("alpha_collinear_zero", e.name), collinear));
    }
    return out;
}

/// The worked families: g0(s,t), graph algebras and the nonhomogeneous example.
inline std::vector<Check> examples_suite(std::uint64_t seed)
{
    const SeedStreams streams(seed);
    std::vector<Check> out;
    auto rng = streams.stream("examples.g0st");
    bool cocycle = true, nondegenerate = true, center = true, step = true;
    for (int t = 0; t < 20; ++t)
    {
        const Rational s = random_nonzero_rational(rng), u = random_nonzero_rational(rng);
        const auto [L0, w] = family_g0st(s, u);
        cocycle = cocycle && is_two_cocycle(L0, w).ok;
        nondegenerate = nondegenerate && w.nondegenerate();
        const auto L = central_extension(L0, w);
        center = center && L.center().dim() == 1;
        step = step && L.nilpotency_step() == L0.nilpotency_step() + 1;
    }
    out.push_back(Check::holds("g0st_form_is_cocycle", cocycle));
    out.push_back(Check::holds("g0st_form_nondegenerate", nondegenerate));
    out.push_back(Check::holds("g0st_extension_center_one", center));
    out.push_back(Check::holds("g0st_extension_step_plus_one", step));

    const auto L0 = example_nonhomog();
    const auto ext = central_extension(L0, nonhomog_form(1, 1));
    out.push_back(Check::holds("nonhomog_extension_center_one", ext.center().dim() == 1));
    out.push_back(Check::holds("nonhomog_extension_step_plus_one", ext.nilpotency_step() == L0.nilpotency_step() + 1));

    out.push_back(Check::holds("triangle_graph_symplectic", symplectic_exists_graph(triangle_graph())));
    const Graph edge({"u", "v"}, {{"u", "v"}});
    const Graph path({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    out.push_back(Check::holds("odd_graph_algebras_not_symplectic",
                               graph_lie_algebra(edge).dim() % 2 == 1 && !symplectic_exists_graph(edge)
                                   && graph_lie_algebra(path).dim() % 2 == 1 && !symplectic_exists_graph(path)));

    const auto space = derivation_space(L0);
    const auto cert = is_characteristically_nilpotent(L0, space);
    out.push_back(Check::holds("nonhomog_characteristically_nilpotent",
                               cert.success && cert.flag.size() == static_cast<std::size_t>(L0.dim())));
    bool diagonal = !space.operators.empty();
    for (std::size_t w = 0; w < space.operators.size(); ++w)
        for (int k = 0; k < L0.dim(); ++k)
            diagonal = diagonal && sgn(space.coefficient(w, k, k)) == 0;
    out.push_back(Check::holds("nonhomog_derivations_zero_diagonal", diagonal));

    auto frng = streams.stream("examples.nonhomog_form");
    std::vector<Rational> sample = {Rational(0)};
    while (sample.size() < 5)
        sample.push_back(random_nonzero_rational(frng));
    bool iff = true;
    for (const auto& a : sample)
        for (const auto& b : sample)
            iff = iff && nonhomog_form(a, b).nondegenerate() == (sgn(a) != 0 && sgn(b) != 0);
    out.push_back(Check::holds("nonhomog_form_nondegenerate_iff_ab_nonzero", iff));
    return out;
}

struct HeisenbergSetup
{
    OrbitData orbit;
    TwistedGroup group;
    Grid plane;
    Grid line;
    double rho;

    HeisenbergSetup(double half_width, int n)
        : orbit(detail::x1_orbit(heisenberg())), group(TwistedGroup::from_orbit(orbit)), plane(2, half_width, n),
          line(1, half_width, n), rho(calibrate_density(plane, line))
    {
    }
};

/// Pedersen identities, CCR phases and twisted-convolution properties on h3.
inline std::vector<Check> twist_suite(std::uint64_t seed, double half_width = 8.0, int n = 128)
{
    const SeedStreams streams(seed);
    const HeisenbergSetup H(half_width, n);
    std::vector<Check> out;
    out.push_back(Check::measure("density", H.rho));
    out.push_back(Check::at_most("density_matches_inverse_two_pi",
                                 std::abs(H.rho - heisenberg_density) / heisenberg_density, tolerance::density));

    const auto family = hermite_gaussian_family(H.plane);
    PedersenTolerances tol{tolerance::trace, tolerance::isometry, tolerance::adjoint, tolerance::homomorphism,
                           tolerance::inversion};
    for (auto c : verify_pedersen_identities(H.group, H.line, H.rho, family, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, tol))
        out.push_back(c);

    std::vector<std::vector<Complex>> vectors;
    for (const auto& [c, f] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.7}, {-1.0, -1.3}})
    {
        std::vector<Complex> v(H.line.points_per_axis());
        for (int k = 0; k < H.line.points_per_axis(); ++k)
        {
            const double x = (H.line.node(k) - c) / 0.5;
            v[k] = std::polar(std::exp(-0.5 * x * x), f * H.line.node(k));
        }
        vectors.push_back(std::move(v));
    }
    const Rational step = from_double(H.line.spacing());
    std::vector<std::pair<Vector, Vector>> shifts = {{{1, 0}, {0, 1}},
                                                     {{Rational(3, 2), 4 * step}, {Rational(3, 2), 4 * step}},
                                                     {{0, 0}, {Rational(1, 2), -3 * step}}};
    auto rng = streams.stream("twist.ccr");
    std::uniform_int_distribution<int> shift(-8, 8), freq(-20, 20);
    for (int t = 0; t < 20; ++t)
        shifts.push_back({{Rational(freq(rng), 8), shift(rng) * step}, {Rational(freq(rng), 8), shift(rng) * step}});
    double ccr = 0.0, iso = 0.0;
    for (const auto& [u, v] : shifts)
        ccr = std::max(ccr, ccr_phase_check(H.orbit, u, v, H.line, vectors));
    out.push_back(Check::at_most("ccr_phase", ccr, tolerance::ccr));
    auto norm = [&](const std::vector<Complex>& f) {
        double s = 0.0;
        for (const auto& v : f)
            s += std::norm(v);
        return std::sqrt(s * H.line.spacing());
    };
    for (const auto& [u, v] : shifts)
        for (const auto& f : vectors)
        {
            const auto g = apply_pi(H.line, u[0].get_d(), lattice_shift(H.line, u[1].get_d()), f);
            iso = std::max(iso, std::abs(norm(g) - norm(f)) / norm(f));
        }
    out.push_back(Check::at_most("pi_isometry", iso, tolerance::pi_isometry));

    double ratio = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
        {
            const double lhs = l2_norm(twisted_convolve(H.group, family[i], family[j], H.rho), H.rho);
            ratio = std::max(ratio, lhs / (l2_norm(family[i], H.rho) * l2_norm(family[j], H.rho)));
        }
    out.push_back(Check::at_most("l2_submultiplicative", ratio, 1.0 + tolerance::submultiplicative_slack));

    const auto& a = family[0];
    const auto& b = family[1];
    const auto& c = family[3];
    const auto left = twisted_convolve(H.group, twisted_convolve(H.group, a, b, H.rho), c, H.rho);
    const auto right = twisted_convolve(H.group, a, twisted_convolve(H.group, b, c, H.rho), H.rho);
    const double scale = l2_norm(a, H.rho) * l2_norm(b, H.rho) * l2_norm(c, H.rho);
    out.push_back(Check::at_most("associativity", l2_distance(left, right, H.rho) / scale, tolerance::associativity));
    return out;
}

/// Nonnegative test functions for the covering and decomposition.
inline std::vector<std::pair<std::string, SampledSymbol>> cz_test_functions(const Grid& g)
{
    auto bump = [&g](double height, double width, double cx, double cy) {
        return SampledSymbol::from_function(g, [=](const double* x) -> Complex {
            const double a = (x[0] - cx) / width, b = (x[1] - cy) / width;
            return height * std::exp(-0.5 * (a * a + b * b));
        });
    };
    auto twin = bump(4.0, 0.4, -2.0, 1.0);
    const auto other = bump(6.0, 0.7, 2.5, -1.5);
    for (std::size_t i = 0; i < g.size(); ++i)
        twin.values()[i] += other[i];
    twin.drop_analytic();
    auto square = SampledSymbol::from_function(g, [](const double* x) -> Complex {
        return std::abs(x[0] - 0.5) <= 1.0 && std::abs(x[1] - 0.5) <= 1.0 ? 1.0 : 0.0;
    });
    return {{"bump", bump(10.0, 0.5, 0.0, 0.0)}, {"twin", std::move(twin)}, {"square", std::move(square)}};
}

inline Analytic truncated_power_kernel(double power, double inner, double outer)
{
    return [=](const double* x) -> Complex {
        const double r = std::hypot(x[0], x[1]);
        return r > inner && r < outer ? std::pow(r, -power) : 0.0;
    };
}

/// Covering, decomposition, weak-(1,1) and Hormander checks on the h3 predual.
inline std::vector<Check> cz_suite(std::uint64_t seed, double half_width = 8.0, int n = 64)
{
    const SeedStreams streams(seed);
    const auto o = detail::x1_orbit(heisenberg());
    const auto g = TwistedGroup::from_orbit(o);
    const auto m = default_pseudo_distance(g);
    const Grid grid(2, half_width, n);
    std::vector<Check> out;
    auto rng = streams.stream("cz.calibrate");
    const auto constants = calibrate(m, g, rng);
    out.push_back(Check::measure("quasi_triangle_constant", constants.quasi_constant));
    out.push_back(Check::measure("doubling_constant", constants.doubling));

    const GridDistance dist(g, m, grid);
    for (const auto& [name, f] : cz_test_functions(grid))
    {
        double top = 0.0;
        for (const auto& v : f.values())
            top = std::max(top, std::abs(v));
        for (double level : {0.1, 0.3, 0.6})
        {
            const std::string id = "cz[" + name + "," + std::to_string(level).substr(0, 3) + "].";
            const auto r = cz_decompose(f, cz_cover(f, level * top, dist, constants.quasi_constant), g);
            for (auto c : r.checks(tolerance::reconstruction, tolerance::mean_zero))
            {
                c.name = id + c.name;
                out.push_back(c);
            }
            out.push_back(Check::at_most(id + "overlap_bound", r.covering.overlap, tolerance::overlap));
        }
    }

    const auto kernel = SampledSymbol::from_function(grid, [](const double* x) -> Complex {
        const double r = std::hypot(x[0], x[1]);
        return r < 7.0 ? std::min(1.0, 1.0 / (r * r)) : 0.0;
    });
    const auto& f = cz_test_functions(grid)[0].second;
    const double f1 = lp_norm(f, 1.0);
    const auto weak = weak11_empirical(g, kernel, f, {0.5 * f1, 0.25 * f1, 0.125 * f1, 0.0625 * f1});
    out.push_back(Check::measure("weak11_a1", weak.a1));
    out.push_back(Check::at_most("weak11_spread", weak.spread, tolerance::weak11_spread));
    const double op_norm = kernel_operator_norm(g, kernel, f);
    out.push_back(Check::measure("kernel_l2_operator_norm", op_norm));
    out.push_back(Check::holds("kernel_l2_operator_norm_finite", std::isfinite(op_norm) && op_norm > 0.0));

    const double c2 = 4.0 * constants.quasi_constant;
    const auto k = truncated_power_kernel(3.0, 1.0, 6.0);
    const auto shifts = punctured_lattice(2, 2.0 * half_width / n, 1.0);
    const double coarse = hormander_twist_estimate(g, k, m, c2, constants.quasi_constant, grid, shifts);
    const double fine = hormander_twist_estimate(g, k, m, c2, constants.quasi_constant, Grid(2, half_width, 2 * n), shifts);
    out.push_back(Check::measure("hormander_coarse", coarse));
    out.push_back(Check::measure("hormander_fine", fine));
    out.push_back(Check::at_most("hormander_refinement", fine > 0.0 ? std::abs(fine - coarse) / fine : INFINITY,
                                 tolerance::hormander_refinement));
    return out;
}

/// Multiplier identities and the transference maps.
inline std::vector<Check> multiplier_suite(std::uint64_t seed, double half_width = 8.0, int n = 64)
{
    const SeedStreams streams(seed);
    const HeisenbergSetup H(half_width, n);
    std::vector<Check> out;
    const auto tests = hermite_gaussian_family(H.plane);

    const auto u = SampledSymbol::from_function(H.plane, gaussian_bump(2, H.plane.spacing(), {}, H.rho));
    const auto approx = multiplier_check(H.group, u, tests, H.line, H.rho);
    out.push_back(Check::at_most("approximate_identity_residual", approx.max_residual(), tolerance::multiplier_identity));
    const auto zero = multiplier_check(H.group, SampledSymbol(H.plane), tests, H.line, H.rho);
    out.push_back(Check::at_most("zero_symbol_residual", zero.max_residual(), tolerance::multiplier_zero));

    auto checks = verify_pedersen_identities(H.group, H.line, H.rho, {u, tests[0]}, {{0, 1}});
    const double through_verifier = checks.back().value * l2_norm(u, H.rho) * l2_norm(tests[0], H.rho);
    out.push_back(Check::at_most("homomorphism_cross_check", std::abs(through_verifier - approx.homomorphism_raw[0]),
                                 tolerance::cross_check));

    const auto power = SampledSymbol::from_function(H.plane, truncated_power_kernel(1.5, 0.25, 4.0));
    const auto lp = multiplier_check(H.group, power, tests, H.line, H.rho);
    bool finite = true;
    for (std::size_t e = 0; e < lp.lp_exponents.size(); ++e)
    {
        out.push_back(Check::measure("power_kernel_lp_ratio[p=" + std::to_string(lp.lp_exponents[e]).substr(0, 4) + "]",
                                     lp.lp_ratios[e]));
        finite = finite && std::isfinite(lp.lp_ratios[e]) && lp.lp_ratios[e] > 0.0;
    }
    out.push_back(Check::holds("power_kernel_lp_ratios_finite", finite));

    const auto& psi = tests[2];
    const auto back = flat_map(sharp_map(psi));
    double round = 0.0;
    for (std::size_t i = 0; i < H.plane.size(); ++i)
        round = std::max(round, std::abs(back[i] - psi[i]));
    out.push_back(Check::at_most("sharp_then_flat", round, tolerance::transference));

    auto rng = streams.stream("transference.phi");
    std::normal_distribution<double> normal;
    TorusGridFunction phi(default_torus_angles, H.plane);
    for (int k = 0; k < phi.angles(); ++k)
        for (std::size_t x = 0; x < H.plane.size(); ++x)
            phi.at(k, x) = Complex(normal(rng), normal(rng));
    const auto p = proj_p(phi);
    out.push_back(Check::at_most("flat_then_sharp_is_projection", max_distance(sharp_map(flat_map(phi)), p),
                                 tolerance::transference));
    out.push_back(Check::at_most("projection_idempotent", max_distance(proj_p(p), p), tolerance::transference));
    double iso = 0.0;
    const auto lifted = sharp_map(psi);
    for (double q : {1.0, 1.25, 1.5, 2.0, 3.0})
        iso = std::max(iso, std::abs(lp_norm(lifted, q, H.rho) - lp_norm(psi, q, H.rho)) / lp_norm(psi, q, H.rho));
    out.push_back(Check::at_most("sharp_isometric_lp", iso, tolerance::transference));
    return out;
}

inline std::vector<Suite> suites()
{
    return {
        {"exact", "exact algebra", [](std::uint64_t s) { return exact_algebra_suite(s); }},
        {"examples", "worked examples", [](std::uint64_t s) { return examples_suite(s); }},
        {"twist", "Pedersen and twisted convolution", [](std::uint64_t s) { return twist_suite(s); }},
        {"cz", "Calderon-Zygmund", [](std::uint64_t s) { return cz_suite(s); }},
        {"multiplier", "multipliers and transference", [](std::uint64_t s) { return multiplier_suite(s); }},
    };
}

} // namespace nilharm
