#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pdfgraph {

// Deterministic RNG used by every sampler and trainer. All derived draws
// (uniform reals, normals, index picks) are implemented here so that a fixed
// seed reproduces byte-identical sequences regardless of the standard
// library's distribution internals.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform_real();

  // Uniform in [lo, hi).
  double uniform_real(double lo, double hi);

  // Standard normal via Box-Muller (no internal caching).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Derive an independent stream, e.g. one per worker or per sample.
  Rng fork(std::uint64_t salt);

private:
  std::mt19937_64 engine_;
};

}  // namespace pdfgraph
