#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace ballchain {

/// Chooses between the OpenMP kernels and the serial reference path.
enum class Exec { serial, parallel };

/// Caps the worker count for the OpenMP kernels.  0 restores the default
/// (BALLCHAIN_JOBS env var if set, otherwise all hardware threads).
void set_jobs(int jobs);
int effective_jobs();

/// Runs fn(i) for i in [0, count) on the OpenMP pool.  fn must not throw and
/// must write only to disjoint slots; reductions happen on the caller side so
/// results are independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Serial reference implementation of the kernel driver, kept for testing
/// and benchmarking against the OpenMP path.
void serial_for(std::size_t count, const std::function<void(std::size_t)>& fn);

void run_indexed(Exec mode, std::size_t count,
                 const std::function<void(std::size_t)>& fn);

/// Smallest value with its index, lowest index on ties.  Order-independent,
/// so serial and parallel producers reduce to identical results.
std::pair<double, std::size_t> min_with_index(const std::vector<double>& v);
std::pair<double, std::size_t> max_with_index(const std::vector<double>& v);

}  // namespace ballchain
