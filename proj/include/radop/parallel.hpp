#pragma once

#include <complex>
#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace radop {

// Runtime switch between the serial reference path and the OpenMP path.
// Both paths perform the identical blocked reduction (fixed block size,
// per-block serial accumulation, blocks combined in index order), so
// results are bit-identical regardless of thread count.
bool parallel_enabled();
void set_parallel_enabled(bool on);

inline constexpr std::size_t kReductionBlock = 4096;

namespace detail {

// Exceptions may not escape an OpenMP region: capture the first one and
// rethrow after the join.
template <class Body>
void run_indexed(std::size_t count, Body&& body, bool parallel) {
#ifdef _OPENMP
    if (parallel && count > 1) {
        std::exception_ptr err{};
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(radop_parallel_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    (void)parallel;
    for (std::size_t i = 0; i < count; ++i) body(i);
}

template <class T, class F>
void block_partials(std::size_t n, F&& term, std::vector<T>& partials, bool parallel) {
    const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    partials.assign(nblocks, T{});
    run_indexed(
        nblocks,
        [&](std::size_t b) {
            const std::size_t lo = b * kReductionBlock;
            const std::size_t hi = std::min(n, lo + kReductionBlock);
            T acc{};
            for (std::size_t i = lo; i < hi; ++i) acc += term(i);
            partials[b] = acc;
        },
        parallel);
}

} // namespace detail

// Deterministic sum of term(0..n-1). T must be default-constructible to zero
// and support +=.
template <class T, class F>
T blocked_sum(std::size_t n, F&& term, bool parallel) {
    if (n == 0) return T{};
    std::vector<T> partials;
    detail::block_partials<T>(n, term, partials, parallel);
    T total{};
    for (const T& p : partials) total += p;
    return total;
}

template <class T, class F>
T blocked_sum(std::size_t n, F&& term) {
    return blocked_sum<T>(n, std::forward<F>(term), parallel_enabled());
}

// Deterministic max-reduction of a nonnegative score.
template <class F>
double blocked_max(std::size_t n, F&& score, bool parallel) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partials(nblocks, 0.0);
    detail::run_indexed(
        nblocks,
        [&](std::size_t b) {
            const std::size_t lo = b * kReductionBlock;
            const std::size_t hi = std::min(n, lo + kReductionBlock);
            double m = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                const double s = score(i);
                if (s > m) m = s;
            }
            partials[b] = m;
        },
        parallel);
    double m = 0.0;
    for (double p : partials)
        if (p > m) m = p;
    return m;
}

// Independent per-element work (out[i] = f(i) stored by the caller).
template <class F>
void parallel_for(std::size_t n, F&& body, bool parallel) {
    detail::run_indexed(n, body, parallel);
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
    parallel_for(n, std::forward<F>(body), parallel_enabled());
}

} // namespace radop
