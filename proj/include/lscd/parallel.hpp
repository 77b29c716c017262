#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <vector>

namespace lscd {

/// Runs body(i) for i in [0, n) on up to `jobs` OpenMP threads. Exceptions
/// cannot cross an OpenMP region, so each one is captured and the one from
/// the smallest index is rethrown after the loop; which error surfaces
/// therefore does not depend on scheduling.
template <typename Body>
void parallel_for_each_index(std::size_t n, int jobs, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace lscd
