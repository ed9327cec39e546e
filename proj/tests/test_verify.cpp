#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "stripe/verify.hpp"

using namespace stripe;

TEST_CASE("fast tier passes and is deterministic") {
    VerifyConfig cfg;
    cfg.tier = "fast";
    cfg.seed = 987;
    const auto r1 = run_suite(cfg);
    for (const auto& r : r1) {
        INFO(r.name, " observed=", r.observed);
        CHECK(r.pass);
    }
    const auto r2 = run_suite(cfg);
    std::ostringstream s1, s2;
    serialize_reports(s1, r1);
    serialize_reports(s2, r2);
    CHECK(s1.str() == s2.str());
    CHECK(all_pass(r1));
}

TEST_CASE("fault injection trips only the constants check") {
    VerifyConfig cfg;
    cfg.tier = "fast";
    cfg.seed = 987;
    cfg.fault_scale = 1.01;
    const auto rep = run_suite(cfg);
    bool constants_failed = false;
    for (const auto& r : rep) {
        if (r.name == "constants_reference") {
            constants_failed = !r.pass;
        } else {
            INFO(r.name);
            CHECK(r.pass);
        }
    }
    CHECK(constants_failed);
}
