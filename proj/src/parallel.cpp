#include "eisenstein/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace eis {

unsigned thread_count() {
    if (const char* env = std::getenv("EISENSTEIN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body,
                     unsigned workers) {
    if (end <= begin) return;
    if (workers == 0) workers = thread_count();
    std::size_t n = end - begin;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        body(0, begin, end);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = begin + n * w / workers;
        std::size_t hi = begin + n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            try {
                body(w, lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace eis
