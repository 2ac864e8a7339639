#pragma once

// Deterministic parallel reduction: the index range is split into
// `partition_count` fixed contiguous chunks, each chunk is Kahan-summed
// serially in index order, and the partial sums are combined in chunk
// order. The result depends on partition_count but not on thread count,
// so a run is bitwise reproducible once partition_count is recorded.

#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace capflow {

inline constexpr int kDefaultPartitionCount = 64;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Sums body(i) for i in [0, n). body must be pure with respect to i.
template <typename Body>
double partitioned_sum(std::int64_t n, int partition_count, Body&& body) {
  if (n <= 0) return 0.0;
  if (partition_count < 1) partition_count = 1;
  const int parts = partition_count;
  std::vector<double> partial(parts, 0.0);

#pragma omp parallel for schedule(static)
  for (int p = 0; p < parts; ++p) {
    std::int64_t lo = n * p / parts;
    std::int64_t hi = n * (p + 1) / parts;
    KahanSum acc;
    for (std::int64_t i = lo; i < hi; ++i) acc.add(body(i));
    partial[p] = acc.sum;
  }

  KahanSum total;
  for (int p = 0; p < parts; ++p) total.add(partial[p]);
  return total.sum;
}

// Runs body(i) for i in [0, n) with no ordering guarantees. Use only for
// independent writes to disjoint slots.
template <typename Body>
void parallel_for(std::int64_t n, Body&& body) {
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace capflow
