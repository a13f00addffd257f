#include <nilharm/catalog.hpp>
#include <nilharm/cz.hpp>
#include <nilharm/derivations.hpp>
#include <nilharm/io.hpp>
#include <nilharm/multiplier.hpp>
#include <nilharm/pedersen.hpp>
#include <nilharm/random.hpp>
#include <nilharm/report.hpp>
#include <nilharm/suites.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

using namespace nilharm;

namespace
{

constexpr int exit_pass = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

class UsageError : public Error
{
public:
    using Error::Error;
};

struct Options
{
    std::uint64_t seed = 0;
    bool timings = false;
    std::string output;
    std::vector<std::string> argv;
};

/// A path ending in .json, otherwise a catalog name.
LieAlgebra load_algebra(const std::string& source)
{
    if (source.size() > 5 && source.compare(source.size() - 5, 5, ".json") == 0)
        return algebra_from_json(load_json(source));
    return catalog_algebra(source);
}

std::pair<double, int> parse_grid(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw UsageError("--grid expects L,N");
    try
    {
        return {std::stod(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    }
    catch (const std::exception&)
    {
        throw UsageError("--grid expects L,N");
    }
}

Grid make_grid(int d, const std::string& text)
{
    const auto [l, n] = parse_grid(text);
    try
    {
        return Grid(d, l, n);
    }
    catch (const Error& e)
    {
        throw UsageError(e.what());
    }
}

std::vector<double> parse_doubles(const std::string& text)
{
    std::vector<double> out;
    for (const auto& q : parse_vector(text))
        out.push_back(q.get_d());
    return out;
}

Json subspace_json(const linalg::Subspace& s)
{
    Json a = Json::array();
    for (const auto& v : s.basis())
        a.push_back(vector_json(v));
    return a;
}

Json matrix_json(const RationalMatrix& m)
{
    Json a = Json::array();
    for (const auto& row : m)
        a.push_back(vector_json(row));
    return a;
}

OrbitData load_orbit(const std::string& algebra, const std::string& xi0)
{
    const auto L = load_algebra(algebra);
    const Vector x = xi0.empty() ? unit_vector(static_cast<std::size_t>(L.dim()), 0) : parse_vector(xi0);
    return orbit_for(L, x);
}

Json covering_json(const Covering& c, const Grid& grid)
{
    Json balls = Json::array();
    std::vector<double> x(grid.d());
    for (const auto& b : c.balls)
    {
        grid.point(b.center, x.data());
        balls.push_back({{"center", x}, {"radius", b.radius}, {"nodes", b.members.size()}});
    }
    return {{"alpha", c.alpha}, {"enlargement", c.enlargement}, {"balls", balls}};
}

struct Runner
{
    Options opt;
    std::optional<Report> report;

    Report& start()
    {
        report.emplace(opt.argv, opt.seed);
        return *report;
    }

    template <class F>
    void timed(const std::string& key, F&& f)
    {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        if (opt.timings)
            report->runtime(key, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
};

void algebra_command(Runner& run, const std::string& action, const std::string& source)
{
    auto& r = run.start();
    std::optional<LieAlgebra> L;
    try
    {
        L = load_algebra(source);
    }
    catch (const JacobiViolation& e)
    {
        r.add(Check::holds("valid", false));
        r.set("error", e.what());
        return;
    }
    catch (const NotNilpotent& e)
    {
        r.add(Check::holds("valid", false));
        r.set("error", e.what());
        return;
    }
    catch (const InvalidStructure& e)
    {
        r.add(Check::holds("valid", false));
        r.set("error", e.what());
        return;
    }
    r.add(Check::holds("valid", true));
    r.set("dim", L->dim());
    r.set("step", L->nilpotency_step());
    if (action == "validate")
        return;
    if (action == "series")
    {
        Json series = Json::array();
        for (const auto& s : L->lower_central_series())
            series.push_back({{"dim", s.dim()}, {"basis", subspace_json(s)}});
        r.set("lower_central_series", series);
        r.set("center", subspace_json(L->center()));
    }
    else if (action == "flag")
    {
        const auto flag = jordan_holder_flag(*L);
        r.add(Check::holds("flag_invariants", !check_flag(*L, flag)));
        Json basis = Json::array();
        for (const auto& v : flag.basis)
            basis.push_back(vector_json(v));
        r.set("flag", basis);
    }
    else if (action == "derivations")
    {
        const auto space = derivation_space(*L);
        r.add(Check::holds("closed_under_commutator", closed_under_commutator(space)));
        Json ops = Json::array();
        for (const auto& op : space.operators)
            ops.push_back(matrix_json(op));
        r.set("derivation_dim", space.operators.size());
        r.set("derivations", ops);
    }
    else if (action == "charnilp")
    {
        const auto cert = is_characteristically_nilpotent(*L);
        r.add(Check::holds("characteristically_nilpotent", cert.success));
        if (cert.success)
        {
            Json flag = Json::array();
            for (const auto& v : cert.flag)
                flag.push_back(vector_json(v));
            r.set("engel_flag", flag);
        }
        else
            r.set("failed_stage", cert.failed_stage);
    }
    else
        throw UsageError("unknown algebra action '" + action + "'");
}

void extend_command(Runner& run, const std::string& algebra, const std::string& form)
{
    auto& r = run.start();
    const auto L0 = load_algebra(algebra);
    const auto w = form_from_json(load_json(form));
    const auto cocycle = is_two_cocycle(L0, w);
    r.add(Check::holds("two_cocycle", cocycle.ok));
    r.add(Check::holds("nondegenerate", w.nondegenerate()));
    if (!cocycle.ok)
    {
        r.set("violating_triple", cocycle.triple);
        return;
    }
    const auto L = central_extension(L0, w);
    r.add(Check::holds("center_one_dimensional", L.center().dim() == 1));
    r.add(Check::holds("step_plus_one", L.nilpotency_step() == L0.nilpotency_step() + 1));
    r.set("algebra", algebra_json(L));
}

void graph_command(Runner& run, const std::string& file)
{
    auto& r = run.start();
    const auto g = graph_from_json(load_json(file));
    const auto L = graph_lie_algebra(g);
    r.add(Check::holds("valid", true));
    r.set("symplectic_exists", symplectic_exists_graph(g));
    r.set("algebra", algebra_json(L));
}

void catalog_command(Runner& run, const std::string& name, const std::string& s, const std::string& t,
                     const std::string& check)
{
    auto& r = run.start();
    if (name.empty())
    {
        Json list = Json::array();
        for (const auto& e : catalog())
            list.push_back({{"name", e.name}, {"dim", e.algebra.dim()}, {"step", e.algebra.nilpotency_step()},
                            {"flat_at_x1", e.flat_at_x1}});
        r.set("entries", list);
        return;
    }
    std::optional<LieAlgebra> L;
    if (name == "g0st")
    {
        if (s.empty() || t.empty())
            throw UsageError("g0st needs --s and --t");
        const auto [A, w] = family_g0st(parse_rational(s), parse_rational(t));
        r.add(Check::holds("two_cocycle", is_two_cocycle(A, w).ok));
        r.add(Check::holds("nondegenerate", w.nondegenerate()));
        L = A;
        r.catalog("g0st(" + s + "," + t + ")");
    }
    else
    {
        L = catalog_algebra(name);
        r.catalog(name);
    }
    r.add(Check::holds("valid", true));
    if (check == "charnilp")
        r.add(Check::holds("characteristically_nilpotent", is_characteristically_nilpotent(*L).success));
    else if (check == "flag")
        r.add(Check::holds("flag_invariants", !check_flag(*L, jordan_holder_flag(*L))));
    else if (!check.empty() && check != "validate")
        throw UsageError("unknown --check '" + check + "'");
    r.set("dim", L->dim());
    r.set("step", L->nilpotency_step());
    r.set("algebra", algebra_json(*L));
}

void orbit_command(Runner& run, const std::string& algebra, const std::string& xi0, int samples)
{
    auto& r = run.start();
    const auto o = load_orbit(algebra, xi0);
    r.set("jump_set", o.jump_set);
    r.set("d", o.d());
    r.set("flat", o.flat);
    r.set("isotropy", subspace_json(o.isotropy));
    r.set("direct_sum_determinant", rational_json(o.direct_sum_determinant));
    r.add(Check::holds("direct_sum", sgn(o.direct_sum_determinant) != 0));
    if (!o.flat)
        return;
    auto rng = SeedStreams(run.opt.seed).stream("orbit.cli");
    const auto d = static_cast<std::size_t>(o.d());
    bool cocycle = true, collinear = true;
    for (int k = 0; k < samples; ++k)
    {
        Vector x = random_vector(rng, d), y = random_vector(rng, d), z = random_vector(rng, d);
        cocycle = cocycle && verify_cocycle_identity(o, x, y, z);
        collinear = collinear && sgn(alpha(o, random_rational(rng) * x, random_rational(rng) * x)) == 0;
    }
    r.add(Check::holds("cocycle_identity", cocycle));
    r.add(Check::holds("alpha_collinear_zero", collinear));
    Json terms = Json::array();
    const auto g = TwistedGroup::from_orbit(o);
    for (const auto& [mono, c] : g.alpha_polynomial().terms())
        terms.push_back({{"exponents", mono}, {"c", rational_json(c)}});
    Json vars = Json::array();
    for (const char* v : {"x", "y"})
        for (int k = 1; k <= o.d(); ++k)
            vars.push_back(v + std::to_string(k));
    r.set("alpha_variables", vars);
    r.set("alpha_terms", terms);
}

SampledSymbol load_symbol(const std::string& path, const Grid& expected)
{
    auto s = symbol_from_json(load_json(path));
    if (!(s.grid() == expected))
        throw GridMismatch();
    return s;
}

void write_symbol(Runner& run, const std::string& path, const SampledSymbol& s, double density = 1.0)
{
    if (!path.empty())
        save_text(path, symbol_json(s).dump() + "\n");
    run.report->set("l2_norm", l2_norm(s, density));
}

struct TwistArgs
{
    std::string algebra = "h3", xi0, grid = "8,128", a, b, phi, v, symbol, out;
};

void twist_command(Runner& run, const std::string& action, const TwistArgs& t)
{
    auto& r = run.start();
    r.catalog(t.algebra);
    const auto o = load_orbit(t.algebra, t.xi0);
    const auto g = TwistedGroup::from_orbit(o);
    if (action == "verify")
    {
        if (o.d() != 2)
            throw DimensionNot2();
        const auto [l, n] = parse_grid(t.grid);
        make_grid(2, t.grid);
        run.timed("verify", [&] { r.add(twist_suite(run.opt.seed, l, n)); });
        return;
    }
    const Grid grid = make_grid(o.d(), t.grid);
    if (action == "conv")
    {
        if (t.a.empty() || t.b.empty())
            throw UsageError("twist conv needs --a and --b");
        const auto a = load_symbol(t.a, grid), b = load_symbol(t.b, grid);
        // the L2 bound holds for the Heisenberg Haar normalization only
        const bool heisenberg = o.d() == 2;
        const double rho = heisenberg ? calibrate_density(grid, Grid(1, grid.half_width(), grid.points_per_axis())) : 1.0;
        r.add(Check::measure("density", rho));
        run.timed("conv", [&] {
            const auto c = twisted_convolve(g, a, b, rho);
            write_symbol(run, t.out, c, rho);
            if (heisenberg)
                r.add(Check::at_most("l2_submultiplicative",
                                     l2_norm(c, rho) / std::max(l2_norm(a, rho) * l2_norm(b, rho), 1e-300),
                                     1.0 + tolerance::submultiplicative_slack));
            else
                r.set("skipped", Json::array({"l2_submultiplicative"}));
        });
    }
    else if (action == "delta")
    {
        if (t.phi.empty() || t.v.empty())
            throw UsageError("twist delta needs --phi and --v");
        const auto phi = load_symbol(t.phi, grid);
        const auto v = parse_doubles(t.v);
        const auto out = delta_action(g, phi, v);
        write_symbol(run, t.out, out);
        r.add(Check::measure("input_l2_norm", l2_norm(phi)));
    }
    else if (action == "pedersen")
    {
        if (t.symbol.empty())
            throw UsageError("twist pedersen needs --symbol");
        if (o.d() != 2)
            throw DimensionNot2();
        const Grid line(1, grid.half_width(), grid.points_per_axis());
        const double rho = calibrate_density(grid, line);
        r.add(Check::measure("density", rho));
        const auto b = load_symbol(t.symbol, grid);
        r.add(verify_pedersen_identities(g, line, rho, {b}, {}));
        // a sampled file has no evaluator at -X off the node set
        r.set("skipped", Json::array({"adjoint[0]"}));
    }
    else
        throw UsageError("unknown twist action '" + action + "'");
}

struct CzArgs
{
    std::string algebra = "h3", xi0, grid = "8,64", f, kernel, u, alphas;
    double alpha = 0.0, c2 = 0.0;
};

void cz_command(Runner& run, const std::string& action, const CzArgs& a)
{
    auto& r = run.start();
    r.catalog(a.algebra);
    const auto o = load_orbit(a.algebra, a.xi0);
    const auto g = TwistedGroup::from_orbit(o);
    const auto m = default_pseudo_distance(g);
    const Grid grid = make_grid(o.d(), a.grid);
    auto rng = SeedStreams(run.opt.seed).stream("cz.calibrate");
    const auto constants = calibrate(m, g, rng);
    r.add(Check::measure("quasi_triangle_constant", constants.quasi_constant));
    r.add(Check::measure("doubling_constant", constants.doubling));
    auto input = [&](const std::string& path) {
        if (!path.empty())
            return load_symbol(path, grid);
        if (o.d() != 2)
            throw UsageError("built-in test functions live on a 2-dimensional predual; pass a symbol file");
        return cz_test_functions(grid).front().second;
    };
    if (action == "cover" || action == "decompose")
    {
        if (!(a.alpha > 0.0))
            throw AlphaNonPositive();
        const auto f = input(a.f);
        const GridDistance dist(g, m, grid);
        const auto c = cz_cover(f, a.alpha, dist, constants.quasi_constant);
        r.set("covering", covering_json(c, grid));
        if (action == "cover")
        {
            r.add(Check::holds("f_below_alpha_off_cover", c.below_alpha_outside));
            r.add(Check::measure("c_prime", c.c_prime));
            r.add(Check::measure("overlap", c.overlap));
            return;
        }
        r.add(cz_decompose(f, c, g).checks(tolerance::reconstruction, tolerance::mean_zero));
    }
    else if (action == "kernel-check")
    {
        const double c2 = a.c2 > 0.0 ? a.c2 : 4.0 * constants.quasi_constant;
        Analytic k = o.d() == 2 && a.kernel.empty() ? truncated_power_kernel(3.0, 1.0, 6.0) : Analytic();
        if (!k)
        {
            const auto s = load_symbol(a.kernel, grid);
            k = [s](const double* x) { return s.evaluate(x); };
        }
        const auto shifts = punctured_lattice(o.d(), grid.spacing(), 1.0);
        r.add(Check::measure("c2", c2));
        r.add(Check::measure("hormander_estimate",
                             hormander_twist_estimate(g, k, m, c2, constants.quasi_constant, grid, shifts)));
    }
    else if (action == "weak11")
    {
        const auto f = input(a.f);
        const auto kernel = a.kernel.empty()
                                ? SampledSymbol::from_function(grid, [](const double* x) -> Complex {
                                      const double rr = std::hypot(x[0], x[1]);
                                      return rr < 7.0 ? std::min(1.0, 1.0 / (rr * rr)) : 0.0;
                                  })
                                : load_symbol(a.kernel, grid);
        const double f1 = lp_norm(f, 1.0);
        std::vector<double> levels;
        if (a.alphas.empty())
            levels = {0.5 * f1, 0.25 * f1, 0.125 * f1, 0.0625 * f1};
        else
            levels = parse_doubles(a.alphas);
        const auto w = weak11_empirical(g, kernel, f, levels);
        r.set("alphas", w.alphas);
        r.set("ratios", w.ratios);
        r.add(Check::measure("weak11_a1", w.a1));
        r.add(Check::at_most("weak11_spread", w.spread, tolerance::weak11_spread));
    }
    else if (action == "multiplier")
    {
        if (o.d() != 2)
            throw DimensionNot2();
        const Grid line(1, grid.half_width(), grid.points_per_axis());
        const double rho = calibrate_density(grid, line);
        const auto u = a.u.empty() ? SampledSymbol::from_function(grid, gaussian_bump(2, grid.spacing(), {}, rho))
                                   : load_symbol(a.u, grid);
        const auto rep = multiplier_check(g, u, hermite_gaussian_family(grid), line, rho);
        r.set("homomorphism", rep.homomorphism);
        r.set("inverse_route", rep.inverse_route);
        r.set("convolution", rep.convolution);
        r.add(Check::at_most("multiplier_residual", rep.max_residual(), tolerance::multiplier_identity));
        for (std::size_t e = 0; e < rep.lp_exponents.size(); ++e)
            r.add(Check::measure("lp_ratio[p=" + std::to_string(rep.lp_exponents[e]).substr(0, 4) + "]",
                                 rep.lp_ratios[e]));
    }
    else
        throw UsageError("unknown cz action '" + action + "'");
}

void report_command(Runner& run, const std::vector<std::string>& wanted)
{
    auto& r = run.start();
    const auto all = suites();
    for (const auto& w : wanted)
        if (w != "all" && std::none_of(all.begin(), all.end(), [&](const Suite& s) { return s.key == w; }))
            throw UsageError("unknown suite '" + w + "'");
    for (const auto& s : all)
    {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), s.key) == wanted.end()
            && std::find(wanted.begin(), wanted.end(), "all") == wanted.end())
            continue;
        std::cerr << "nilharm: running " << s.key << " suite\n";
        run.timed(s.key, [&] { r.add(s.run(run.opt.seed), s.key + "."); });
    }
}

} // namespace

int main(int argc, char** argv)
{
    Runner run;
    run.opt.seed = 0;
    for (int i = 1; i < argc; ++i)
        run.opt.argv.emplace_back(argv[i]);

    CLI::App app{"nilharm: nilpotent Lie algebras, twisted convolution and Pedersen multipliers"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "root seed for every sampling stream (default NILHARM_SEED, else 0)");
    app.add_flag("--timings", run.opt.timings, "record wall-clock seconds per stage in the report");
    app.add_option("-o,--output", run.opt.output, "write the report here instead of stdout");

    std::string action, source, form;
    auto* alg = app.add_subcommand("algebra", "validate|series|flag|derivations|charnilp on an algebra");
    alg->add_option("action", action)->required()->check(CLI::IsMember({"validate", "series", "flag", "derivations", "charnilp"}));
    alg->add_option("algebra", source, "algebra JSON file or catalog name")->required();

    auto* ext = app.add_subcommand("extend", "central extension by a symplectic 2-cocycle");
    ext->add_option("algebra", source)->required();
    ext->add_option("form", form, "form JSON file")->required();

    auto* graph = app.add_subcommand("graph-lie", "two-step algebra of a graph");
    graph->add_option("graph", source, "graph JSON file")->required();

    std::string name, s_param, t_param, check;
    auto* cat = app.add_subcommand("catalog", "list or inspect built-in algebras");
    cat->add_option("name", name);
    cat->add_option("--s", s_param);
    cat->add_option("--t", t_param);
    cat->add_option("--check", check, "validate|flag|charnilp");

    std::string xi0;
    int samples = 100;
    auto* orb = app.add_subcommand("orbit", "jump indices, flatness and the cocycle of a coadjoint orbit");
    orb->add_option("--algebra", source)->required();
    orb->add_option("--xi0", xi0, "functional coordinates, comma separated (default X1*)");
    orb->add_option("--samples", samples);

    TwistArgs targs;
    auto* tw = app.add_subcommand("twist", "conv|delta|pedersen|verify on a flat predual");
    tw->add_option("action", action)->required()->check(CLI::IsMember({"conv", "delta", "pedersen", "verify"}));
    tw->add_option("--algebra,--catalog", targs.algebra);
    tw->add_option("--xi0", targs.xi0);
    tw->add_option("--grid", targs.grid, "L,N");
    tw->add_option("--a", targs.a);
    tw->add_option("--b", targs.b);
    tw->add_option("--phi", targs.phi);
    tw->add_option("--v", targs.v);
    tw->add_option("--symbol", targs.symbol);
    tw->add_option("--out", targs.out, "write the resulting symbol here");

    CzArgs cargs;
    auto* cz = app.add_subcommand("cz", "cover|decompose|kernel-check|weak11|multiplier");
    cz->add_option("action", action)
        ->required()
        ->check(CLI::IsMember({"cover", "decompose", "kernel-check", "weak11", "multiplier"}));
    cz->add_option("--algebra,--catalog", cargs.algebra);
    cz->add_option("--xi0", cargs.xi0);
    cz->add_option("--grid", cargs.grid, "L,N");
    cz->add_option("--alpha", cargs.alpha);
    cz->add_option("--alphas", cargs.alphas, "comma separated levels for weak11");
    cz->add_option("--f", cargs.f);
    cz->add_option("--kernel", cargs.kernel);
    cz->add_option("--u", cargs.u);
    cz->add_option("--c2", cargs.c2);

    std::vector<std::string> wanted;
    auto* rep = app.add_subcommand("report", "run verification suites");
    rep->add_option("--suite", wanted, "exact|examples|twist|cz|multiplier|all")->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        run.opt.seed = seed ? *seed : default_seed();
        if (*alg)
            algebra_command(run, action, source);
        else if (*ext)
            extend_command(run, source, form);
        else if (*graph)
            graph_command(run, source);
        else if (*cat)
            catalog_command(run, name, s_param, t_param, check);
        else if (*orb)
            orbit_command(run, source, xi0, samples);
        else if (*tw)
            twist_command(run, action, targs);
        else if (*cz)
            cz_command(run, action, cargs);
        else if (*rep)
            report_command(run, wanted);
        const std::string text = run.report->dump();
        if (run.opt.output.empty())
            std::cout << text;
        else
            save_text(run.opt.output, text);
        return run.report->pass() ? exit_pass : exit_check_failed;
    }
    catch (const IoError& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_io;
    }
    catch (const ParseError& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_io;
    }
    catch (const UsageError& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const AlphaNonPositive& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const GridMismatch& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const DimensionMismatch& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const DimensionNot2& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const UnknownCatalogEntry& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const Error& e)
    {
        std::cerr << "nilharm: " << e.what() << "\n";
        return exit_check_failed;
    }
}
