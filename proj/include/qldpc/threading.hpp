#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace qldpc {

// Worker count for parallel sweeps, capped by QLDPC_BOUNDS_THREADS.
// Every parallel reduction in the library is order-independent, so the
// thread count never changes results.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("QLDPC_BOUNDS_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(std::min(v, 64L));
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

}  // namespace qldpc
