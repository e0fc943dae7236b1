#pragma once

#include <cstdint>
#include <cstdlib>

namespace gapcert {

// Dense/iterative switchover and hard size limits. The dense cap can be
// overridden with the GAPCERT_DENSE_CAP environment variable.
struct SolveConfig {
    std::int64_t dense_cap = 4096;
    std::int64_t size_cap = std::int64_t(1) << 26;
    double tol = 1e-9;
    std::uint64_t seed = 42;

    static SolveConfig defaults() {
        SolveConfig c;
        if (const char* env = std::getenv("GAPCERT_DENSE_CAP")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 1) c.dense_cap = v;
        }
        return c;
    }
};

} // namespace gapcert
