#pragma once

// Minimal deterministic fork-join over an index range. Work items must write
// to disjoint outputs; results never depend on the job count.

#include <cstddef>
#include <functional>

namespace homolocal {

void set_jobs(int n);
int jobs();

// Runs f(i) for i in [0, n). Nested calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace homolocal
