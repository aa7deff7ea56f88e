#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace fss {

enum class Execution { serial, parallel };

// Runs body(i) for i in [0, n). Parallel execution distributes indices over
// OpenMP threads; each body must write only to its own slot. If bodies throw,
// the exception from the lowest index is rethrown so failures are
// reproducible whatever the schedule.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body)
{
    if (exec == Execution::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

inline int available_threads() noexcept
{
    return omp_get_max_threads();
}

} // namespace fss
