#include <nilharm/random.hpp>
#include <nilharm/suites.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifndef NILHARM_CLI_PATH
#error "NILHARM_CLI_PATH must name the nilharm executable"
#endif

using namespace nilharm;

namespace
{

struct Budget
{
    const char* key;
    double seconds;
};

// wall-clock limits, one per suite criterion
constexpr Budget budgets[] = {
    {"exact", 5.0}, {"examples", 10.0}, {"twist", 60.0}, {"cz", 60.0}, {"multiplier", 30.0},
};

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool run_cli(const std::string& args, const std::filesystem::path& out)
{
    const std::string cmd = std::string("\"") + NILHARM_CLI_PATH + "\" " + args + " --output \"" + out.string() + "\" 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return rc != -1 && std::filesystem::exists(out);
}

} // namespace

int main()
{
    const std::uint64_t seed = default_seed();
    const auto all = suites();
    int failed = 0;
    int criterion = 0;
    for (const auto& b : budgets)
    {
        ++criterion;
        const Suite* suite = nullptr;
        for (const auto& s : all)
            if (s.key == b.key)
                suite = &s;
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = suite->run(seed);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = !checks.empty() && all_pass(checks) && elapsed < b.seconds;
        std::printf("%s criterion %d: %s (%zu checks, %.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", criterion,
                    suite->title.c_str(), checks.size(), elapsed, b.seconds);
        for (const auto& c : checks)
            if (!c.measured && !c.pass)
                std::printf("    failed %s: value %.6g, tolerance %.6g\n", c.name.c_str(), c.value, c.tolerance);
        failed += ok ? 0 : 1;
    }

    ++criterion;
    const auto dir = std::filesystem::temp_directory_path() / ("nilharm_acceptance_" + std::to_string(seed));
    std::filesystem::create_directories(dir);
    const std::string args = "--seed " + std::to_string(seed) + " report --suite all";
    // the command echo is part of the report, so both runs write to the same path
    const auto out = dir / "report.json";
    std::filesystem::remove(out);
    std::string a, b;
    bool ran = run_cli(args, out);
    if (ran)
    {
        a = slurp(out);
        std::filesystem::remove(out);
        ran = run_cli(args, out);
        b = ran ? slurp(out) : "";
    }
    const bool same = ran && !a.empty() && a == b;
    std::printf("%s criterion %d: byte-identical reports for identical seed and inputs (%zu bytes)\n",
                same ? "PASS" : "FAIL", criterion, a.size());
    failed += same ? 0 : 1;
    std::filesystem::remove_all(dir);

    std::printf("%d of %d criteria passed\n", criterion - failed, criterion);
    return failed == 0 ? 0 : 1;
}
