#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pks {

// loops shorter than this stay serial
constexpr std::ptrdiff_t kOmpMinWork = 8192;

// fixed-order pairwise sum; result independent of thread count
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

// honours PKS_THREADS; returns the worker count in use
int configure_threads();
int thread_count();

} // namespace pks
