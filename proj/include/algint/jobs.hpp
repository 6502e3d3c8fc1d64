#pragma once

#include <cstdlib>
#include <thread>

namespace algint {

// Worker count: explicit request, then ALGINT_JOBS, then the hardware.
inline int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ALGINT_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace algint
