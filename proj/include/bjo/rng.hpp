#pragma once

#include <cmath>
#include <cstdint>

#include "bjo/matrix.hpp"

namespace bjo {

/// SplitMix64 counter-based generator.  Instances and fuzz corpora are
/// reproduced bit-for-bit from a 64-bit seed on any platform; doubles come
/// from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = u01();
    } while (u <= 0.0);
    const double v = u01();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  Scalar scalar(Field field) {
    if (field == Field::Real) return Scalar{gaussian(), 0.0};
    return Scalar{gaussian(), gaussian()};
  }

  Mat matrix(std::size_t rows, std::size_t cols, Field field) {
    Mat m(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar(field);
    return m;
  }

  Vec unit_vector(std::size_t n, Field field) {
    Vec x(n);
    double nrm = 0.0;
    do {
      for (auto& v : x) v = scalar(field);
      nrm = vec_norm(x);
    } while (nrm < 1e-8);
    scale(x, 1.0 / nrm);
    return x;
  }

  /// Haar-ish unitary (orthogonal for Real) from Gram-Schmidt of a Gaussian
  /// matrix.
  Mat unitary(std::size_t n, Field field) {
    Mat g = matrix(n, n, field);
    for (std::size_t j = 0; j < n; ++j) {
      Vec c = column(g, j);
      for (std::size_t k = 0; k < j; ++k) {
        const Vec prev = column(g, k);
        const Scalar p = dot(prev, c);
        for (std::size_t i = 0; i < n; ++i) c[i] -= p * prev[i];
      }
      const double nrm = vec_norm(c);
      scale(c, 1.0 / nrm);
      for (std::size_t i = 0; i < n; ++i) g(i, j) = c[i];
    }
    return g;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bjo
