#ifndef FWM_PARALLEL_HPP
#define FWM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace fwm {

// Runs fn(i) for every i in [0, n), splitting the range across hardware
// threads unless parallel is false. Tasks must be independent; any output
// ordering is the caller's responsibility (write into slot i). If tasks
// throw, the first exception (by index) is rethrown on the calling thread
// after all workers have stopped.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  bool parallel = true);

} // namespace fwm

#endif
