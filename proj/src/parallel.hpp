#pragma once

// internal: bounded parallel sweep with results landing by index, so callers
// merge in n-order no matter how the tasks are scheduled. RGLT_THREADS caps
// the number in flight.

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace rglt::internal {

inline int thread_cap() {
    if (const char* env = std::getenv("RGLT_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return cap;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <typename Fn>
void parallel_sweep(std::size_t count, Fn&& fn) {
    const auto cap = static_cast<std::size_t>(thread_cap());
    if (cap <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> in_flight;
    for (std::size_t i = 0; i < count; ++i) {
        in_flight.push_back(std::async(std::launch::async, [&fn, i] { fn(i); }));
        if (in_flight.size() >= cap) {
            in_flight.front().get();
            in_flight.erase(in_flight.begin());
        }
    }
    for (auto& f : in_flight) f.get();
}

}  // namespace rglt::internal
