#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace afpp {

// Deterministic uniform helpers on top of mt19937_64. The standard
// distributions are implementation-defined sequences; these are not, so
// fixed seeds reproduce bit-identical reports.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  // inclusive bounds; modulo bias is irrelevant at our scales
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

/// Uniform point on the standard simplex via exponential spacings.
inline std::vector<double> simplex_sample(std::mt19937_64& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = uniform01(rng);
    if (u <= 0.0) u = 0x1.0p-53;
    w[i] = -std::log(u);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace afpp
