#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stripe {

// One named reproducible check. Serialization excludes runtime_sec so that
// reruns with the same config are byte-identical.
struct CheckReport {
    std::string name;
    std::string detail;   // the property being verified
    std::string params;   // echo of the inputs the check ran on
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_sec = 0.0;
};

struct VerifyConfig {
    std::string tier = "fast";  // "fast" (d<=2, seconds) or "full" (adds d=3, minutes)
    std::uint64_t seed = 20240517;
    double fault_scale = 1.0;  // test hook: scales the candidate c3 in the constants check
};

std::vector<CheckReport> run_suite(const VerifyConfig& cfg);

// One record per line; deterministic given (tier, seed, fault_scale).
void serialize_reports(std::ostream& os, const std::vector<CheckReport>& reports);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace stripe
