#pragma once

// Counter-based random streams. Every sample index gets its own stream
// derived from (root seed, index), so parallel harnesses produce the same
// numbers regardless of scheduling, and reruns are bit-identical.

#include <cstdint>

namespace capflow {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

// Stream for sample `index` under `root`. The mixing constant separates
// streams that share a root.
inline SplitMix64 stream_at(std::uint64_t root, std::uint64_t index) {
  SplitMix64 mixer(root ^ (0x6a09e667f3bcc909ull + index * 0x9e3779b97f4a7c15ull));
  mixer.next();
  return mixer;
}

}  // namespace capflow
