#include <nilharm/io.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using nilharm::Json;

namespace
{

struct Run
{
    int code = -1;
    std::string out;
    Json report() const { return Json::parse(out); }
};

Run cli(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " \"" NILHARM_CLI_PATH "\" " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string example(const std::string& name) { return std::string(NILHARM_EXAMPLES_DIR) + "/" + name; }

const Json& check(const Json& report, const std::string& name)
{
    for (const auto& c : report.at("checks"))
        if (c.at("name") == name)
            return c;
    throw std::runtime_error("no check " + name);
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "nilharm_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(CliAlgebra, ValidateHeisenbergFilePassesWithStepTwo)
{
    const auto r = cli("algebra validate " + example("h3.json"));
    ASSERT_EQ(r.code, 0);
    const auto j = r.report();
    EXPECT_EQ(j.at("status"), "pass");
    EXPECT_EQ(j.at("data").at("step"), 2);
    EXPECT_EQ(j.at("seed"), 0);
}

TEST(CliAlgebra, JacobiViolationIsACheckFailure)
{
    const auto r = cli("algebra validate " + example("not_jacobi.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(check(r.report(), "valid").at("status"), "fail");
}

TEST(CliAlgebra, SeriesOfHeisenbergEndsInCenter)
{
    const auto j = cli("algebra series h3").report();
    const auto& series = j.at("data").at("lower_central_series");
    ASSERT_EQ(series.size(), 3u);
    EXPECT_EQ(series[0].at("dim"), 3);
    EXPECT_EQ(series[1].at("dim"), 1);
    EXPECT_EQ(series[2].at("dim"), 0);
}

TEST(CliAlgebra, DerivationsOfNonhomogeneousAlgebraAreClosed)
{
    const auto r = cli("algebra derivations " + example("nonhomog.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_GT(r.report().at("data").at("derivation_dim").get<int>(), 0);
}

TEST(CliCatalog, NonhomogeneousAlgebraIsCharacteristicallyNilpotent)
{
    const auto r = cli("catalog nonhomog --check charnilp");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(check(r.report(), "characteristically_nilpotent").at("status"), "pass");
}

TEST(CliCatalog, TwoStepFamilyIsNotCharacteristicallyNilpotent)
{
    const auto r = cli("catalog g0st --s 2 --t 3 --check charnilp");
    EXPECT_EQ(r.code, 1);
    const auto j = r.report();
    EXPECT_EQ(check(j, "two_cocycle").at("status"), "pass");
    EXPECT_EQ(check(j, "characteristically_nilpotent").at("status"), "fail");
}

TEST(CliCatalog, ListingNamesEveryEntry)
{
    const auto j = cli("catalog").report();
    EXPECT_GE(j.at("data").at("entries").size(), 8u);
}

TEST(CliExtend, SymplecticCocycleRaisesStepByOne)
{
    const auto r = cli("extend " + example("nonhomog.json") + " " + example("nonhomog_form.json"));
    ASSERT_EQ(r.code, 0);
    const auto j = r.report();
    EXPECT_EQ(check(j, "center_one_dimensional").at("status"), "pass");
    EXPECT_EQ(j.at("data").at("algebra").at("dim"), 9);
}

TEST(CliExtend, NonCocycleReportsViolatingTriple)
{
    const auto r = cli("extend " + example("nonhomog.json") + " " + example("bad_form.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.report().at("data").at("violating_triple").size(), 3u);
}

TEST(CliGraph, TriangleAdmitsSymplecticStructure)
{
    const auto r = cli("graph-lie " + example("triangle.json"));
    ASSERT_EQ(r.code, 0);
    const auto j = r.report();
    EXPECT_TRUE(j.at("data").at("symplectic_exists").get<bool>());
    EXPECT_EQ(j.at("data").at("algebra").at("dim"), 6);
}

TEST(CliOrbit, HeisenbergJumpSetAndCocycle)
{
    const auto r = cli("orbit --algebra h3");
    ASSERT_EQ(r.code, 0);
    const auto j = r.report();
    EXPECT_EQ(j.at("data").at("jump_set"), Json::parse("[2,3]"));
    EXPECT_TRUE(j.at("data").at("flat").get<bool>());
    EXPECT_EQ(check(j, "cocycle_identity").at("status"), "pass");
}

TEST(CliTwist, ConvolutionOfExampleSymbolsIsSubmultiplicative)
{
    const auto out = scratch("conv.json");
    std::filesystem::remove(out);
    const auto r = cli("twist conv --grid 6,32 --a " + example("gauss_a.json") + " --b " + example("gauss_b.json")
                       + " --out " + out.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(check(r.report(), "l2_submultiplicative").at("status"), "pass");
    const auto sym = nilharm::symbol_from_json(nilharm::load_json(out.string()));
    EXPECT_EQ(sym.grid().points_per_axis(), 32);
}

TEST(CliTwist, PedersenOnSampledSymbolReportsSkippedAdjoint)
{
    const auto r = cli("twist pedersen --grid 6,32 --symbol " + example("gauss_a.json"));
    ASSERT_EQ(r.code, 0);
    const auto j = r.report();
    EXPECT_EQ(j.at("data").at("skipped"), Json::parse("[\"adjoint[0]\"]"));
    EXPECT_EQ(check(j, "trace[0]").at("status"), "pass");
}

TEST(CliTwist, GridDisagreeingWithSymbolIsUsageError)
{
    EXPECT_EQ(cli("twist conv --grid 8,32 --a " + example("gauss_a.json") + " --b " + example("gauss_b.json")).code, 2);
}

TEST(CliCz, DecompositionAtDefaultGridPasses)
{
    const auto r = cli("cz decompose --alpha 0.3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(check(r.report(), "reconstruction").at("status"), "pass");
}

TEST(CliCz, NonPositiveLevelIsUsageError) { EXPECT_EQ(cli("cz cover --alpha 0").code, 2); }

TEST(CliExitCodes, UnknownSubcommandIsUsageError) { EXPECT_EQ(cli("frobnicate").code, 2); }

TEST(CliExitCodes, UnknownCatalogEntryIsUsageError) { EXPECT_EQ(cli("catalog nosuch").code, 2); }

TEST(CliExitCodes, UnknownSuiteIsUsageError) { EXPECT_EQ(cli("report --suite nosuch").code, 2); }

TEST(CliExitCodes, MissingFileIsIoError) { EXPECT_EQ(cli("algebra validate /nonexistent/h3.json").code, 3); }

TEST(CliExitCodes, MalformedJsonIsIoError)
{
    const auto path = scratch("broken.json");
    nilharm::save_text(path.string(), "{\"dim\": 3, \"brackets\": [");
    EXPECT_EQ(cli("algebra validate " + path.string()).code, 3);
}

TEST(CliExitCodes, WrongFieldTypeIsIoError)
{
    const auto path = scratch("wrong_type.json");
    nilharm::save_text(path.string(), "{\"dim\": \"three\"}");
    EXPECT_EQ(cli("algebra validate " + path.string()).code, 3);
}

TEST(CliReport, SameSeedGivesByteIdenticalReports)
{
    const auto a = cli("--seed 11 report --suite exact,examples");
    const auto b = cli("--seed 11 report --suite exact,examples");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliReport, OtherSeedStillPassesAndIsRecorded)
{
    const auto r = cli("--seed 42 report --suite exact");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report().at("seed"), 42);
}

TEST(CliReport, EnvironmentSeedOverridesDefault)
{
    const auto r = cli("report --suite examples", "NILHARM_SEED=7");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report().at("seed"), 7);
}

TEST(CliReport, RuntimeOnlyWhenRequested)
{
    EXPECT_FALSE(cli("report --suite examples").report().contains("runtime_s"));
    EXPECT_TRUE(cli("--timings report --suite examples").report().at("runtime_s").contains("examples"));
}

TEST(CliReport, OutputFlagWritesReport)
{
    const auto path = scratch("report.json");
    std::filesystem::remove(path);
    const auto r = cli("--output " + path.string() + " algebra validate h3");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(nilharm::load_json(path.string()).at("status"), "pass");
}
