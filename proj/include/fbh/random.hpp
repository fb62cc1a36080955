#pragma once

#include <cstdint>
#include <random>

#include "fbh/linalg.hpp"

namespace fbh {

// Deterministic random sources for sampling and tests. Same seed, same
// stream, on every platform we target (mt19937_64 plus our own transforms).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

  // Standard complex Gaussian, E|c|^2 = 1.
  Complex cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
  }

  CVector cgaussian_vector(int n);
  CMatrix cgaussian_matrix(int rows, int cols);

  // Haar-distributed unitary via QR of a complex Ginibre matrix with the
  // R-diagonal phase fix.
  CMatrix unitary(int n);

  // Uniform point on the unit sphere in C^m.
  CVector unit_sphere(int m);

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fbh
