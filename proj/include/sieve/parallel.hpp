#pragma once

#include <functional>

namespace sieve {

/// Worker count: `requested` if positive, otherwise hardware concurrency,
/// always capped by the POINTER_SIEVE_THREADS environment variable.
int worker_count(int requested = 0);

/// Run body(0..n-1) on a worker pool. Each index must write only its own
/// slot so results do not depend on the worker count.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace sieve
