// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace seeopt {

/// splitmix64 finalizer applied to (seed, stream). Used to derive
/// independent, reproducible per-trial and per-sample seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Pairwise summation in index order. Result depends only on the values and
/// their order, never on how they were produced.
double pairwise_sum(std::span<const double> values);

struct SampleSummary {
  double mean = 0.0;
  double std_error = 0.0;  // sample std (n - 1) / sqrt(n)
  std::size_t count = 0;
};
SampleSummary summarize(std::span<const double> values);

/// Runs body(i) for i in [0, n) on up to `threads` workers with a static
/// contiguous partition. Exceptions from the body are rethrown on the caller.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace seeopt
