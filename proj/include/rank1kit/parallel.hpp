#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace rank1kit {

/// Execution policy for batch kernels. Serial is the reference path; both
/// produce identical results because every index owns its own state.
enum class Exec { Serial, Parallel };

/// Thread cap from RANK1KIT_THREADS, falling back to the OpenMP default.
int thread_cap();
/// Applies thread_cap() to the OpenMP runtime. Idempotent.
void apply_thread_cap();

namespace detail {
void parallel_for(std::size_t n, void (*body)(void*, std::size_t), void* ctx);
}

/// Calls f(i) for i in [0, n). An exception from any index is rethrown after
/// the loop; with several failures the lowest index wins, as in a serial run.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::Serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    struct Ctx {
        F* f;
        std::vector<std::exception_ptr>* errors;
    } ctx{&f, &errors};
    detail::parallel_for(
        n,
        [](void* p, std::size_t i) {
            auto* c = static_cast<Ctx*>(p);
            try {
                (*c->f)(i);
            } catch (...) {
                (*c->errors)[i] = std::current_exception();
            }
        },
        &ctx);
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace rank1kit
