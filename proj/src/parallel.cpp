#include "weyl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace weyl {
namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads = std::max(0, n); }

int max_threads() {
    const int cap = g_max_threads.load();
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return cap > 0 ? std::min(cap, hw) : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next{0};
    const std::size_t block = std::max<std::size_t>(1, n / (8 * workers));
    auto work = [&] {
        while (true) {
            const std::size_t start = next.fetch_add(block);
            if (start >= n) return;
            const std::size_t stop = std::min(n, start + block);
            try {
                for (std::size_t i = start; i < stop; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace weyl
