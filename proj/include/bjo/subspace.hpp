#pragma once

#include <vector>

#include "bjo/matrix.hpp"

namespace bjo {

/// A finite-dimensional subspace of matrices, kept both as the caller's
/// generators and as a Frobenius-orthonormal basis.  Numerically dependent
/// generators are dropped and counted.
struct SubspaceBasis {
  std::vector<Mat> generators;
  std::vector<Mat> orthonormalized;
  std::size_t dropped = 0;

  std::size_t dim() const { return orthonormalized.size(); }
  bool trivial() const { return orthonormalized.empty(); }
};

inline SubspaceBasis make_subspace(std::vector<Mat> generators, Field field,
                                   double drop_tol = 1e-10) {
  SubspaceBasis w;
  w.generators = std::move(generators);
  for (const Mat& g : w.generators) {
    if (!w.generators.front().same_shape(g))
      throw Error(ErrorCode::ShapeMismatch, "subspace generators");
    const double scale = fro_norm(g);
    Mat r = g;
    for (const Mat& b : w.orthonormalized) {
      Scalar c = fro_inner(b, g);
      if (field == Field::Real) c = Scalar{c.real(), 0.0};
      r = r - b * c;
    }
    const double rn = fro_norm(r);
    if (scale == 0.0 || rn <= drop_tol * scale) {
      ++w.dropped;
      continue;
    }
    w.orthonormalized.push_back(r * Scalar{1.0 / rn, 0.0});
  }
  return w;
}

}  // namespace bjo
