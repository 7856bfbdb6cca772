#include "berezin/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bq {

unsigned worker_count() {
    if (const char* env = std::getenv("BEREZIN_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return unsigned(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

template <class T>
T pairwise(std::span<const T> v) {
    if (v.size() <= 8) {
        T s{};
        for (const auto& x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

}  // namespace

cplx pairwise_sum(std::span<const cplx> values) { return pairwise(values); }
double pairwise_sum(std::span<const double> values) { return pairwise(values); }

}  // namespace bq
