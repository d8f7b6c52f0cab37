#pragma once

#include <string>
#include <utility>
#include <vector>

#include "openxxz/types.hpp"

namespace openxxz {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured residual / deviation
    double tolerance = 0.0;  // pass iff value <= tolerance
    bool pass = false;
    std::string note;
};

// Structured record of a verification run: named residuals with tolerances
// plus free-form info entries (seeds, draw values) for reproducibility.
struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> info;

    void add(const std::string& name, double value, double tolerance, const std::string& note = "") {
        checks.push_back({name, value, tolerance, value <= tolerance, note});
    }
    void add_bool(const std::string& name, bool ok, const std::string& note = "") {
        checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok, note});
    }
    void set_info(const std::string& key, const std::string& value) { info.emplace_back(key, value); }
    void merge(const VerificationReport& other, const std::string& prefix = "") {
        for (auto c : other.checks) {
            c.name = prefix.empty() ? c.name : prefix + "." + c.name;
            checks.push_back(c);
        }
        for (const auto& kv : other.info)
            info.emplace_back(prefix.empty() ? kv.first : prefix + "." + kv.first, kv.second);
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double worst_margin() const {  // max value/tolerance over checks
        double w = 0.0;
        for (const auto& c : checks)
            if (c.tolerance > 0) w = std::max(w, c.value / c.tolerance);
        return w;
    }
};

// fixed-width human-readable table
std::string report_table(const VerificationReport& r);

// nested key-value serialisation used by the CLI report files
std::string report_kv(const VerificationReport& r, int indent = 0);

}  // namespace openxxz
