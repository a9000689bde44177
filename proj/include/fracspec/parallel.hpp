#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace fracspec {

/// Worker count: FRACSPEC_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count() noexcept;

/// Runs fn(i) for i in [0, n). Indices are split into contiguous blocks, so
/// any per-index result is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Fixed pairwise summation tree; the result depends only on the input order.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) noexcept;

}  // namespace fracspec
