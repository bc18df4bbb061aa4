#include "dlab/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dlab {

int thread_limit() {
    int n = 0;
    if (const char* env = std::getenv("DISPERSIVE_LAB_THREADS")) {
        try {
            n = std::stoi(env);
        } catch (...) {
            n = 0;
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const auto workers = static_cast<std::size_t>(thread_limit());
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t used = std::min(workers, n);
    const std::size_t chunk = (n + used - 1) / used;
    std::vector<std::thread> pool;
    pool.reserve(used);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < used; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace dlab
