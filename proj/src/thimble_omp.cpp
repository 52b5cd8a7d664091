#include <omp.h>

#include <exception>

#include "knotsum/thimble_batch.hpp"

namespace knotsum {

std::vector<ThimbleIntegral> integrate_batch_serial(std::span<const ThimbleTask> tasks, const ThimbleOptions& opt) {
  std::vector<ThimbleIntegral> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) {
    ThimbleOptions o = opt;
    o.basis = t.basis;
    out.push_back(integrate_thimble(t.family, t.saddle, o));
  }
  return out;
}

std::vector<ThimbleIntegral> integrate_batch(std::span<const ThimbleTask> tasks, const ThimbleOptions& opt,
                                             int threads) {
  std::vector<ThimbleIntegral> out(tasks.size());
  std::exception_ptr failure;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long i = 0; i < count; ++i) {
    try {
      ThimbleOptions o = opt;
      o.basis = tasks[static_cast<std::size_t>(i)].basis;
      out[static_cast<std::size_t>(i)] =
          integrate_thimble(tasks[static_cast<std::size_t>(i)].family, tasks[static_cast<std::size_t>(i)].saddle, o);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace knotsum
