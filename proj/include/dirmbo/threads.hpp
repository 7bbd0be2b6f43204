#pragma once

namespace dirmbo {

/// Applies the DIRMBO_THREADS cap (if set) to OpenMP and returns the number of
/// threads internal kernels will use. Safe to call repeatedly.
int configure_threads();

/// Current internal parallelism (1 when built without OpenMP).
int max_threads();

}  // namespace dirmbo
