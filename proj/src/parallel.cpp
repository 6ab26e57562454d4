#include "ballchain/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ballchain {

namespace {

std::atomic<int> g_jobs{0};

int default_jobs() {
  static const int from_env = [] {
    if (const char* env = std::getenv("BALLCHAIN_JOBS")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 0;
  }();
  if (from_env > 0) return from_env;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
#endif
}

}  // namespace

void set_jobs(int jobs) { g_jobs.store(jobs > 0 ? jobs : 0); }

int effective_jobs() {
  int j = g_jobs.load();
  return j > 0 ? j : default_jobs();
}

void serial_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
  const int jobs = effective_jobs();
  if (jobs > 1 && count > 1) {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(static) num_threads(jobs)
    for (long long i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  serial_for(count, fn);
}

void run_indexed(Exec mode, std::size_t count,
                 const std::function<void(std::size_t)>& fn) {
  if (mode == Exec::parallel)
    parallel_for(count, fn);
  else
    serial_for(count, fn);
}

std::pair<double, std::size_t> min_with_index(const std::vector<double>& v) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < best) {
      best = v[i];
      idx = i;
    }
  }
  return {best, idx};
}

std::pair<double, std::size_t> max_with_index(const std::vector<double>& v) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > best) {
      best = v[i];
      idx = i;
    }
  }
  return {best, idx};
}

}  // namespace ballchain
