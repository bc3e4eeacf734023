#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace signsum {

namespace detail {

inline unsigned default_worker_count() {
    if (const char* env = std::getenv("SIGNSUM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline std::atomic<unsigned>& worker_setting() {
    static std::atomic<unsigned> value{default_worker_count()};
    return value;
}

}  // namespace detail

/// Number of workers used by batch operations. Results never depend on it.
inline unsigned worker_count() { return detail::worker_setting().load(); }
inline void set_worker_count(unsigned n) { detail::worker_setting().store(std::max(1u, n)); }

/// Calls body(begin, end) on a static partition of [0, n) into contiguous blocks,
/// one block per worker, and returns the per-block results in block order.
template <class Body>
auto parallel_blocks(std::size_t n, Body body) -> std::vector<std::invoke_result_t<Body, std::size_t, std::size_t>> {
    using result_t = std::invoke_result_t<Body, std::size_t, std::size_t>;
    const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    std::vector<result_t> out;
    if (workers <= 1) {
        out.push_back(body(std::size_t{0}, n));
        return out;
    }
    std::vector<std::future<result_t>> futures;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        futures.push_back(std::async(std::launch::async, body, begin, end));
    }
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

/// Ordered map over [0, n); fn(i) must be independent of other indices.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
    using value_t = std::invoke_result_t<Fn, std::size_t>;
    auto blocks = parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
        std::vector<value_t> part;
        part.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) part.push_back(fn(i));
        return part;
    });
    std::vector<value_t> out;
    out.reserve(n);
    for (auto& b : blocks)
        for (auto& v : b) out.push_back(std::move(v));
    return out;
}

}  // namespace signsum
