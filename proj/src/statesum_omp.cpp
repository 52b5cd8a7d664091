#include <omp.h>

#include "knotsum/statesum.hpp"
#include "statesum_kernel.hpp"

namespace knotsum {

LaurentPoly framed_sum_parallel(const MorseWord& w, const WeightTable& t, Mode mode, int threads,
                                std::uint64_t* terms) {
  detail::check_width(w);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  if (mode == Mode::Dense) {
    const std::size_t n = w.size();
    if (n > 40) throw std::length_error("dense enumeration limited to 40 events");
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
    std::vector<LaurentPoly> partial(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const auto uc = static_cast<std::uint64_t>(c);
      partial[uc] = detail::dense_range(w, t, total * uc / chunks, total * (uc + 1) / chunks);
    }
    LaurentPoly acc;
    for (const auto& p : partial) acc += p;
    if (terms) *terms = total;
    return acc;
  }

  LaurentPoly acc;
  std::uint64_t leaves = 0;
  const auto frontier =
      detail::expand_frontier(w, t, static_cast<std::size_t>(nthreads) * 16, acc, leaves);
  std::vector<LaurentPoly> partial(frontier.size());
  std::vector<std::uint64_t> counts(frontier.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    detail::dfs(w, t, frontier[ui].depth, frontier[ui].row, frontier[ui].partial, partial[ui], counts[ui]);
  }
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    acc += partial[i];
    leaves += counts[i];
  }
  if (terms) *terms = leaves;
  return acc;
}

}  // namespace knotsum
