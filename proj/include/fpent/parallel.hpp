#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fpent {

/// Worker threads to use: FPENT_THREADS if set to a positive integer,
/// otherwise the hardware concurrency.
unsigned worker_count();

/// Runs fn(c) for every chunk c in [0, n_chunks) on a pool of workers.
/// Callers store per-chunk results by index and combine them in chunk order,
/// so results do not depend on the thread count. The first exception thrown
/// by any chunk is rethrown on the calling thread.
template <class Fn>
void for_each_chunk(std::size_t n_chunks, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n_chunks);
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
        body();
    }
    if (error) std::rethrow_exception(error);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    // An infinite term makes the sum infinite; the correction is dropped so
    // it cannot turn into inf - inf.
    void add(double x) {
        const double t = sum_ + x;
        if (!std::isfinite(t)) {
            sum_ = t;
            return;
        }
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return std::isfinite(sum_) ? sum_ + comp_ : sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Sum of term(i) over [0, n), evaluated in fixed-size chunks whose partial
/// sums are combined in chunk order. Bitwise reproducible for any thread
/// count.
template <class Term>
double deterministic_sum(std::size_t n, Term&& term, std::size_t chunk = 4096) {
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);
    for_each_chunk(n_chunks, [&](std::size_t c) {
        CompensatedSum s;
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) s.add(term(i));
        partial[c] = s.value();
    });
    CompensatedSum total;
    for (double v : partial) total.add(v);
    return total.value();
}

}  // namespace fpent
