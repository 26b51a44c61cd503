// Acceptance suite: one criterion per check, run at the pinned parameters
// and tolerances, with the runtime budgets enforced.

#include "cdirac/checks.hpp"
#include "cdirac/io.hpp"

#include <cstdio>

int main() {
    using cdirac::checks::run_all;

    const cdirac::VerificationReport report = run_all();
    bool ok = true;
    int index = 0;
    for (const auto& check : report.checks) {
        ++index;
        bool criterion_ok = check.passed();
        const bool within_budget = check.runtime_seconds <= check.runtime_budget_seconds;
        criterion_ok = criterion_ok && within_budget;
        ok = ok && criterion_ok;

        std::printf("%s criterion %d: %s (measured %s %s %s; runtime %.2fs / budget %.0fs)\n",
                    criterion_ok ? "PASS" : "FAIL", index, check.name.c_str(),
                    cdirac::io::format_double(check.measured).c_str(), check.relation.c_str(),
                    cdirac::io::format_double(check.tolerance).c_str(), check.runtime_seconds,
                    check.runtime_budget_seconds);
        if (!check.passed()) {
            std::printf("     %s\n", check.details.c_str());
        } else if (!within_budget) {
            std::printf("     runtime budget exceeded\n");
        }
    }
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILURES");
    return ok ? 0 : 1;
}
