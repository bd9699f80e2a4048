#include "pks/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pks {

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 64) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

int configure_threads() {
#ifdef _OPENMP
    if (const char* env = std::getenv("PKS_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace pks
