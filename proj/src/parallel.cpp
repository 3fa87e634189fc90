#include "radop/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace radop {

namespace {

bool initial_state() {
#ifndef _OPENMP
    return false;
#else
    if (const char* env = std::getenv("RADOP_SERIAL")) {
        if (env[0] == '1') return false;
    }
    return true;
#endif
}

std::atomic<bool>& flag() {
    static std::atomic<bool> f{initial_state()};
    return f;
}

} // namespace

bool parallel_enabled() { return flag().load(std::memory_order_relaxed); }

void set_parallel_enabled(bool on) {
#ifndef _OPENMP
    on = false;
#endif
    flag().store(on, std::memory_order_relaxed);
}

} // namespace radop
