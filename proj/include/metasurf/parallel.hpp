#ifndef METASURF_PARALLEL_HPP
#define METASURF_PARALLEL_HPP

#include <functional>

namespace metasurf {

// Index-parallel loop over [0, n): results must be written to disjoint slots
// so serial and parallel runs are bit-identical. threads <= 0 picks the
// hardware concurrency.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace metasurf

#endif
