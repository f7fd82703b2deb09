// Runs the twelve acceptance criteria and prints one line per criterion.
// The exit status is 0 when every failure is one of the documented
// unattainable criteria (see README.md), and 1 otherwise.
#include "verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    acl::tools::VerifyOptions options;
    if (argc > 1) options.jobs = std::atoi(argv[1]);
    const auto results = acl::tools::run_acceptance(options);
    int passed = 0;
    for (const auto& r : results) {
        const bool documented = acl::tools::documented_unattainable().count(r.id) != 0;
        std::printf("[%s] C%-2d %-55s %7.2f s  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        if (!r.passed) {
            for (const auto& f : r.failures) std::printf("        - %s\n", f.c_str());
            if (documented) std::printf("        (documented as unattainable; see README.md)\n");
        }
        passed += r.passed ? 1 : 0;
    }
    const bool ok = acl::tools::only_documented_failures(results);
    std::printf("%d/%zu criteria pass; %s\n", passed, results.size(),
                ok ? "all failures are documented" : "UNEXPECTED FAILURES");
    return ok ? 0 : 1;
}
