#pragma once

#include <string>
#include <vector>

namespace flatspot::verify {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;  // short note, filled in on failure or for context
};

// Names of the invariant suites runnable via run_suite / the CLI.
std::vector<std::string> suite_names();

// Runs one named suite ("all" runs every suite). Throws
// std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace flatspot::verify
