#ifndef SPDC_THREADING_HPP
#define SPDC_THREADING_HPP

#include <functional>

namespace spdc {

// Worker cap: SPDC_THREADS when set (positive integer), else hardware
// concurrency.  Results never depend on the worker count: every work item is
// computed independently and written to its own index-addressed slot.
int worker_count();

void parallel_for(int n, const std::function<void(int)>& body);

} // namespace spdc

#endif
