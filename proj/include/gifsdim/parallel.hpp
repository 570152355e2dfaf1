#pragma once

#include <cstddef>
#include <functional>

namespace gifs {

// Value of GIFS_DIM_WORKERS when set and positive, else 1.
int default_workers();

// Runs body(i) for i in [0, n) on up to `workers` threads with a static
// block partition. Bodies must write to disjoint state; results are then
// identical for any worker count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace gifs
