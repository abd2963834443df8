#include "vaxgame/util.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace vaxgame {

namespace {

unsigned worker_cap() {
    static const unsigned cap = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        const char* env = std::getenv("VAXGAME_THREADS");
        if (env == nullptr || *env == '\0') return hw;
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || v < 0) return hw;
        if (v == 0) return hw;
        return static_cast<unsigned>(v);
    }();
    return cap;
}

thread_local bool in_parallel_region = false;

} // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned cap = worker_cap();
    if (n == 0) return;
    if (cap <= 1 || n < 32 || in_parallel_region) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, n));
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        in_parallel_region = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
        in_parallel_region = false;
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

} // namespace vaxgame
