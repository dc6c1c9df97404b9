#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "biortho/types.hpp"

namespace biortho {

// splitmix64 step; used to derive independent sub-streams from one user seed
// so that e.g. the two unitaries of a random pair never share a stream.
inline std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix_seed(seed ^ mix_seed(salt));
}

// Deterministic Gaussian source. std::mt19937_64 has a standard-mandated
// output sequence, and the uniform->normal mapping below is written out
// explicitly (std::normal_distribution is implementation-defined), so the
// same seed yields bit-identical streams on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; generates two values per trip.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform();
    } while (u == 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  // Complex standard normal (unit total variance).
  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) * std::numbers::sqrt2 / 2.0;
  }

  // d x n matrix of i.i.d. complex standard normals, filled column-major.
  ComplexMatrix gaussian_matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) {
        m(i, j) = complex_gaussian();
      }
    }
    return m;
  }

  // Unit vector drawn from the rotation-invariant distribution on the sphere.
  ComplexVector unit_vector(Index dim) {
    ComplexVector v = gaussian_matrix(dim, 1);
    v.normalize();
    return v;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace biortho
