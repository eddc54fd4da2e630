#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace cyldisc {

// 0 means "use hardware parallelism"; always at least 1.
int resolve_threads(int requested);

// Folds `step(acc, i)` over [0, n) with each worker owning a contiguous
// chunk, then merges chunk accumulators left to right. The result does not
// depend on scheduling as long as `merge` is associative over adjacent
// ranges (all users reduce with max + first-index tie-breaks).
template <class Acc, class Step, class Merge>
Acc parallel_index_reduce(std::uint64_t n, int threads, Acc init, Step step, Merge merge) {
    int workers = resolve_threads(threads);
    if (n > 0 && static_cast<std::uint64_t>(workers) > n)
        workers = static_cast<int>(n);
    if (workers <= 1 || n == 0) {
        Acc acc = init;
        for (std::uint64_t i = 0; i < n; ++i) step(acc, i);
        return acc;
    }
    std::vector<Acc> partial(workers, init);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = n / workers, extra = n % workers, lo = 0;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        pool.emplace_back([&partial, w, lo, hi, &step] {
            for (std::uint64_t i = lo; i < hi; ++i) step(partial[w], i);
        });
        lo = hi;
    }
    for (auto& t : pool) t.join();
    Acc acc = partial[0];
    for (int w = 1; w < workers; ++w) merge(acc, partial[w]);
    return acc;
}

}  // namespace cyldisc
