#include "weldsim/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace weldsim {

int resolve_threads(int n_threads) {
    if (n_threads > 0) { return n_threads; }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body) {
    const int nt = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(n_threads)), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) { body(i); }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    const std::size_t chunk = (n + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
    for (int t = 0; t < nt; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) { break; }
        pool.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i) { body(i); }
        });
    }
    for (auto& th : pool) { th.join(); }
}

} // namespace weldsim
