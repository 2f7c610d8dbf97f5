#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace modcat {

// Domain failures that callers are expected to handle (bad parameters,
// non-modular input, failed searches). Internal invariant violations use
// std::logic_error directly.
class ModcatError : public std::runtime_error {
public:
    explicit ModcatError(const std::string& what) : std::runtime_error(what) {}
};

#define MODCAT_CHECK(cond, msg)                       \
    do {                                              \
        if (!(cond)) throw ::modcat::ModcatError(msg); \
    } while (0)

// Runs fn(i) for i in [0, n); splits across threads when n is large enough.
// Each index must be independent; results are written to per-index slots by
// the caller, so the output is deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         std::size_t grain = 4) {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw <= 1 || n <= grain) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min(hw, (n + grain - 1) / grain);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::exception_ptr err;
    std::mutex err_mu;
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < n; i += nthreads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace modcat
