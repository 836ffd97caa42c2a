// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include "cinv/fixtures.hpp"
#include "cinv/suites.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    cinv::VerifyOptions o;
    o.fixtures = argc > 1 ? std::filesystem::path(argv[1]) : cinv::fixture_dir();
    int failed = 0;
    double total = 0;
    for (const cinv::CheckLine& line : cinv::run_criteria(o)) {
        std::printf("[%s] criterion %2d: %s (%.2f s) %s\n", line.ok ? "PASS" : "FAIL", line.criterion,
                    line.name.c_str(), line.seconds, line.detail.c_str());
        failed += !line.ok;
        total += line.seconds;
    }
    std::printf("%d/10 criteria passed in %.2f s\n", 10 - failed, total);
    return failed ? 1 : 0;
}
