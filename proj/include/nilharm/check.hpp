#pragma once

#include <string>
#include <vector>

namespace nilharm
{

/// One verification record. A check with `measured` set carries a value
/// without a pass/fail verdict.
struct Check
{
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool measured = false;

    static Check at_most(std::string name, double value, double tolerance)
    {
        return {std::move(name), value, tolerance, value <= tolerance, false};
    }
    static Check holds(std::string name, bool ok)
    {
        return {std::move(name), ok ? 1.0 : 0.0, 1.0, ok, false};
    }
    static Check measure(std::string name, double value)
    {
        return {std::move(name), value, 0.0, true, true};
    }
};

inline bool all_pass(const std::vector<Check>& checks)
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

} // namespace nilharm
