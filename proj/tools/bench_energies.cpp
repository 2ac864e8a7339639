// Benchmark of the production kernels against the serial reference
// implementations: triple permutation energy and Wolff energy on circle
// clouds of growing size. Also checks that the partitioned reductions stay
// within tolerance of the naive sums and reproduce bitwise across repeats.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "capflow/measures.hpp"
#include "capflow/reference.hpp"
#include "capflow/sets.hpp"

using namespace capflow;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("%8s %6s %14s %14s %10s %12s\n", "kernel", "N", "parallel[s]",
              "reference[s]", "speedup", "rel_diff");

  for (int N : {64, 128, 256}) {
    SetSpec spec;
    spec.kind = SetKind::circle;
    spec.n_samples = N;
    DiscreteMeasure mu = sample_curve(spec).as_measure();

    auto t0 = std::chrono::steady_clock::now();
    double fast = triple_perm_energy(mu, 2);
    double t_fast = seconds_since(t0);
    double again = triple_perm_energy(mu, 2);

    t0 = std::chrono::steady_clock::now();
    double slow = reference::triple_perm_energy_naive(mu, 2);
    double t_slow = seconds_since(t0);

    double rel = std::abs(fast - slow) / std::abs(slow);
    std::printf("%8s %6d %14.4f %14.4f %9.1fx %12.3e%s\n", "triple", N, t_fast,
                t_slow, t_slow / t_fast, rel,
                fast == again ? "" : "  NON-DETERMINISTIC");
  }

  for (int N : {128, 256, 512}) {
    SetSpec spec;
    spec.kind = SetKind::circle;
    spec.n_samples = N;
    DiscreteMeasure mu = sample_curve(spec).as_measure();
    WolffParams wp(1.0, 1.5);  // gamma = 0.5

    auto t0 = std::chrono::steady_clock::now();
    double fast = wolff_energy(mu, wp);
    double t_fast = seconds_since(t0);
    double again = wolff_energy(mu, wp);

    t0 = std::chrono::steady_clock::now();
    double slow = reference::wolff_energy_naive(mu, wp);
    double t_slow = seconds_since(t0);

    double rel = std::abs(fast - slow) / std::abs(slow);
    std::printf("%8s %6d %14.4f %14.4f %9.1fx %12.3e%s\n", "wolff", N, t_fast,
                t_slow, t_slow / t_fast, rel,
                fast == again ? "" : "  NON-DETERMINISTIC");
  }
  return 0;
}
