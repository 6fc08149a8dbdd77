#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace gerbekit {

struct CheckRecord {
    std::string name;
    double max_defect = 0;
    double tolerance = 0;
    long long samples = 0;
    bool pass = true;
};

// A reported quantity that is not checked against the tolerance.
struct Measurement {
    std::string name;
    double re = 0, im = 0;
};

struct SuiteReport {
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 0;
    double tolerance = 0;
    std::vector<CheckRecord> checks;
    std::vector<Measurement> measurements;
    double wall_seconds = 0;

    bool pass() const;
    const CheckRecord& check(const std::string& name) const;
    // Field order is fixed; wall time is only included when asked for, so that
    // reports are byte-identical across runs.
    nlohmann::ordered_json to_json(bool with_timing = false) const;
};

const std::vector<std::string>& suite_names();
double default_tolerance(const std::string& suite);

// Runs the named battery; instance i draws from split_rng(seed, i). Throws
// std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed, double tol);

}  // namespace gerbekit
