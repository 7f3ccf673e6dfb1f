#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmas {

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;  // first few failure diagnostics
};

struct VerifyReport {
    std::uint64_t seed = 0;
    bool smoke = false;
    std::vector<SuiteResult> suites;

    bool all_passed() const;
    int total_checks() const;
    int total_failures() const;
    std::string text() const;       // deterministic rendering, one line per suite
    std::string json_text() const;  // deterministic JSON rendering
};

// Run every module's property suite at full or reduced (smoke) sizes.
// Timing is intentionally excluded from the report so identical seeds yield
// byte-identical output.
VerifyReport run_verify(std::uint64_t seed, bool smoke);

}  // namespace mmas
