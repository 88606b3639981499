// Acceptance suite: runs every verification check at full scale and prints
// one pass/fail line per check.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "bfly/verify.hpp"

TEST_CASE("acceptance suite") {
    bfly::VerifyConfig config;
    const auto results = bfly::run_acceptance_suite(config);
    for (const auto& r : results) {
        std::printf("[%s] %-55s (%.1fs) %s\n", r.pass ? "PASS" : (r.soft ? "soft" : "FAIL"),
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.soft) {
            INFO(r.name, ": ", r.detail);
            CHECK(r.pass);
        }
    }
    CHECK(bfly::all_passed(results));
}
