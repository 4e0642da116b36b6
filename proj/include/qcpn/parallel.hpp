#pragma once

#include <cstddef>
#include <functional>

namespace qcpn {

/// Worker count: QCPN_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads and
/// returns the sum of the results in index order.
double parallel_sum(std::size_t count, const std::function<double(std::size_t)>& body);

/// Runs body(i) for i in [0, count); body must not throw.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qcpn
