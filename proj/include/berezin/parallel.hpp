#pragma once

#include "berezin/core.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace bq {

/// Worker count: BEREZIN_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// out[i] = f(i) for i < count, evaluated on up to worker_count() threads.
/// Static contiguous chunking; results do not depend on the thread count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f) {
    std::vector<T> out(count);
    const std::size_t workers = std::min<std::size_t>(worker_count(), count == 0 ? 1 : count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t lo = w * chunk;
                const std::size_t hi = std::min(count, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
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

/// Pairwise (tree) summation in a fixed order.
cplx pairwise_sum(std::span<const cplx> values);
double pairwise_sum(std::span<const double> values);

/// Sum of f(i) over i < count: per-block pairwise sums combined pairwise.
/// Block layout is fixed, so the result is independent of the thread count.
template <class F>
cplx parallel_sum(std::size_t count, F&& f) {
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    auto partial = parallel_map<cplx>(blocks, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(count, lo + kBlock);
        std::vector<cplx> vals;
        vals.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) vals.push_back(f(i));
        return pairwise_sum(std::span<const cplx>(vals));
    });
    return pairwise_sum(std::span<const cplx>(partial));
}

}  // namespace bq
