#pragma once

#include "check.hpp"
#include "io.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace nilharm
{

/// Machine-readable run record. Check names are unique within a report.
class Report
{
public:
    Report(std::vector<std::string> command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

    void add(const Check& c)
    {
        if (!names_.insert(c.name).second)
            throw Error("check reported twice: " + c.name);
        checks_.push_back(c);
    }

    void add(const std::vector<Check>& cs, const std::string& prefix = "")
    {
        for (auto c : cs)
        {
            c.name = prefix + c.name;
            add(c);
        }
    }

    void catalog(const std::string& id) { catalog_.push_back(id); }
    void set(const std::string& key, Json value) { data_[key] = std::move(value); }
    void runtime(const std::string& key, double seconds) { runtime_[key] = seconds; }

    const std::vector<Check>& checks() const { return checks_; }
    bool pass() const { return all_pass(checks_); }

    Json to_json() const
    {
        Json checks = Json::array();
        for (const auto& c : checks_)
        {
            Json e = {{"name", c.name}, {"status", c.measured ? "measured" : (c.pass ? "pass" : "fail")}};
            e["value"] = std::isfinite(c.value) ? Json(c.value) : Json(std::isnan(c.value) ? "nan" : (c.value > 0 ? "inf" : "-inf"));
            if (!c.measured)
                e["tolerance"] = c.tolerance;
            checks.push_back(e);
        }
        Json out = {{"command", command_}, {"seed", seed_}};
        if (!catalog_.empty())
            out["catalog"] = catalog_;
        out["status"] = pass() ? "pass" : "fail";
        out["checks"] = checks;
        if (!data_.empty())
            out["data"] = data_;
        if (!runtime_.empty())
            out["runtime_s"] = runtime_;
        return out;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }

private:
    std::vector<std::string> command_;
    std::uint64_t seed_;
    std::vector<std::string> catalog_;
    std::vector<Check> checks_;
    std::set<std::string> names_;
    Json data_ = Json::object();
    Json runtime_ = Json::object();
};

} // namespace nilharm
