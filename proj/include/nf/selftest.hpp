#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nf {

struct SelfTestResult {
    std::vector<std::pair<std::string, bool>> checks;
    bool all_passed() const {
        for (const auto& [name, ok] : checks)
            if (!ok) return false;
        return true;
    }
};

/// Seeded randomized battery covering the main certificates; deterministic
/// for a fixed seed.
SelfTestResult run_self_tests(uint64_t seed);

}  // namespace nf
