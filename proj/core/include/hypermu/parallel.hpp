#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hypermu {

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
// chunks. The chunk layout is independent of the worker count, so per-chunk
// results reduced in chunk order are identical for any number of jobs.
template <typename Fn>
void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned jobs, Fn&& fn) {
    if (count == 0) return;
    const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
    const unsigned workers = std::min<std::size_t>(resolve_jobs(jobs), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
                if (c >= n_chunks || failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed) std::rethrow_exception(error);
}

// Deterministic maximum with argmax: larger value wins; ties go to the
// smaller index so parallel and serial runs agree bit for bit.
struct MaxCell {
    double value = -1.0;
    std::size_t index = 0;
    void consider(double v, std::size_t i) {
        if (v > value || (v == value && i < index)) {
            value = v;
            index = i;
        }
    }
    void merge(const MaxCell& other) { consider(other.value, other.index); }
};

} // namespace hypermu
