#include "rank1kit/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#include <omp.h>

namespace rank1kit {

int thread_cap() {
    if (const char* env = std::getenv("RANK1KIT_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    return omp_get_max_threads();
}

void apply_thread_cap() {
    static std::once_flag once;
    std::call_once(once, [] { omp_set_num_threads(thread_cap()); });
}

namespace detail {

void parallel_for(std::size_t n, void (*body)(void*, std::size_t), void* ctx) {
    apply_thread_cap();
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) body(ctx, static_cast<std::size_t>(i));
}

}  // namespace detail

}  // namespace rank1kit
