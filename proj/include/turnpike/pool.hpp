#pragma once

#include <cstddef>
#include <functional>

namespace turnpike {

/// Runs fn(0..count-1) on up to `jobs` worker threads (inline when jobs <= 1
/// or count <= 1). Tasks must write to disjoint slots; the first exception is
/// rethrown after all workers join. Thread count never affects results, only
/// wall time.
void parallel_for_indexed(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn);

/// Hardware concurrency with a sane floor of 1.
int hardware_jobs();

}  // namespace turnpike
