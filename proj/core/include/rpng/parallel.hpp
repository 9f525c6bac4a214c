#pragma once

#include <functional>

namespace rpng {

// Hardware concurrency with a sane floor.
int default_jobs();

// Runs fn(0..count-1) over `jobs` worker threads (jobs <= 0 picks
// default_jobs()). Rethrows the first worker exception after joining.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

} // namespace rpng
