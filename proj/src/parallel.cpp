#include "glu/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace glu {

namespace {
std::atomic<int> g_threads{0};

int resolveThreads() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}
}  // namespace

void set_num_threads(int n) {
    if (n < 0) throw std::invalid_argument("set_num_threads: n must be >= 0");
    g_threads.store(n, std::memory_order_relaxed);
}

int num_threads() { return resolveThreads(); }

void parallel_for(int count, const std::function<void(int, int)>& fn, int minGrain) {
    if (count <= 0) return;
    const int threads = std::min(resolveThreads(), (count + minGrain - 1) / minGrain);
    if (threads <= 1) {
        fn(0, count);
        return;
    }
    const int chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) {
        const int b = t * chunk;
        const int e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    fn(0, std::min(count, chunk));
    for (auto& th : pool) th.join();
}

}  // namespace glu
