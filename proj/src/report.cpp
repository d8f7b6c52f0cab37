#include "openxxz/report.hpp"

#include <cstdio>

#include "openxxz/params.hpp"

namespace openxxz {

std::string report_table(const VerificationReport& r) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-44s %12s %12s  %s\n", ("[" + r.suite + "]").c_str(), "value",
                  "tolerance", "verdict");
    out += line;
    for (const auto& c : r.checks) {
        std::snprintf(line, sizeof line, "  %-42s %12.4e %12.4e  %s%s%s\n", c.name.c_str(), c.value,
                      c.tolerance, c.pass ? "pass" : "FAIL", c.note.empty() ? "" : "  # ",
                      c.note.c_str());
        out += line;
    }
    return out;
}

std::string report_kv(const VerificationReport& r, int indent) {
    const std::string pad(indent, ' ');
    std::string out;
    out += pad + "suite " + r.suite + "\n";
    for (const auto& kv : r.info) out += pad + "info." + kv.first + " " + kv.second + "\n";
    out += pad + "checks " + std::to_string(r.checks.size()) + "\n";
    for (const auto& c : r.checks) {
        out += pad + "check " + c.name + "\n";
        out += pad + "  value " + fmt_double(c.value) + "\n";
        out += pad + "  tolerance " + fmt_double(c.tolerance) + "\n";
        out += pad + "  pass " + (c.pass ? std::string("1") : std::string("0")) + "\n";
        if (!c.note.empty()) out += pad + "  note " + c.note + "\n";
    }
    return out;
}

}  // namespace openxxz
