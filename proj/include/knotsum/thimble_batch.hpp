#pragma once

// Independent thimble integrations fanned out over OpenMP threads. Each task
// reads the shared, immutable family; results are written to fixed slots so
// the output order and values do not depend on the thread count.

#include <span>
#include <vector>

#include "knotsum/thimble.hpp"

namespace knotsum {

struct ThimbleTask {
  ExponentFamily family;
  SaddleDatum saddle;
  int basis = 0;
};

[[nodiscard]] std::vector<ThimbleIntegral> integrate_batch_serial(std::span<const ThimbleTask> tasks,
                                                                  const ThimbleOptions& opt = {});
[[nodiscard]] std::vector<ThimbleIntegral> integrate_batch(std::span<const ThimbleTask> tasks,
                                                           const ThimbleOptions& opt = {}, int threads = 0);

}  // namespace knotsum
