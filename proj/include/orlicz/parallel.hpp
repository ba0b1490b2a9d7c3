#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace orlicz::par {

/// Worker cap: hardware concurrency, optionally limited by ORLICZ_FRAC_THREADS.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("ORLICZ_FRAC_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

/// Evaluates fn(i) for i in [0, count) and returns results in index order.
/// The work split is by index, so results are independent of thread count.
template <class T>
std::vector<T> map_indexed(std::size_t count, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(count);
    const unsigned workers = std::min<std::size_t>(worker_count(), count ? count : 1);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace orlicz::par
