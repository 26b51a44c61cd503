#include "cdirac/report.hpp"

#include "cdirac/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace cdirac {

bool VerificationReport::all_passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.failed(); });
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json root;
    root["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        root["checks"].push_back({{"name", c.name},
                                  {"status", c.status},
                                  {"measured", c.measured},
                                  {"tolerance", c.tolerance},
                                  {"relation", c.relation},
                                  {"provenance", c.provenance},
                                  {"details", c.details}});
    }
    nlohmann::ordered_json timings = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        timings.push_back({{"name", c.name},
                           {"runtime_seconds", c.runtime_seconds},
                           {"budget_seconds", c.runtime_budget_seconds}});
    }
    root["metadata"] = {{"total_runtime_seconds", total_runtime_seconds},
                        {"timings", timings}};
    return root.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        std::string tag = c.failed() ? "FAIL" : (c.passed() ? "PASS" : "SKIP");
        out << tag << " " << c.name << ": measured " << io::format_double(c.measured) << " "
            << c.relation << " " << io::format_double(c.tolerance) << " ["
            << c.provenance << "]";
        if (!c.passed() && !c.details.empty()) out << " -- " << c.details;
        char timing[64];
        std::snprintf(timing, sizeof timing, " (%.2fs)", c.runtime_seconds);
        out << timing << "\n";
    }
    return out.str();
}

}  // namespace cdirac
