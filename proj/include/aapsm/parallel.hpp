#pragma once

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aapsm::parallel {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline int thread_id() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

/// Concatenates per-thread buckets and sorts, so results do not depend on
/// the schedule.
template <typename T, typename Less>
std::vector<T> merge_sorted(std::vector<std::vector<T>>& buckets, Less less) {
    std::size_t total = 0;
    for (const auto& b : buckets) total += b.size();
    std::vector<T> out;
    out.reserve(total);
    for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end(), less);
    return out;
}

}  // namespace aapsm::parallel
