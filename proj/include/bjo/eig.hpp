#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bjo/matrix.hpp"

namespace bjo {

struct HermEig {
  std::vector<double> eigenvalues;  // descending
  Mat eigenvectors;                 // orthonormal columns, same order
};

namespace detail {

inline double offdiag_norm(const Mat& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = 0; q < a.cols(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

}  // namespace detail

/// Full spectral decomposition of a Hermitian matrix by cyclic Jacobi with
/// complex rotations.  Eigenvalues descending; ties keep original diagonal
/// order.  The input is symmetrized internally; asymmetry above
/// 1e-12 * ||H|| is rejected.
inline HermEig herm_eig(const Mat& h) {
  if (!h.square()) throw Error(ErrorCode::NonSquare, "herm_eig");
  const std::size_t n = h.rows();
  const double scale = fro_norm(h);

  Mat a = h;
  {
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) asym += std::norm(h(i, j) - std::conj(h(j, i)));
    asym = std::sqrt(asym);
    if (asym > 1e-12 * std::max(scale, 1e-300))
      throw Error(ErrorCode::NotHermitian, "asymmetry above tolerance");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  }

  Mat v = Mat::identity(n, h.field());
  if (scale == 0.0 || n == 1) {
    HermEig out;
    out.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i).real();
    out.eigenvectors = v;
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<double>());
    return out;
  }

  const double tol = 1e-15 * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (detail::offdiag_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Scalar b = a(p, q);
        const double beta = std::abs(b);
        if (beta <= 1e-300) continue;
        const Scalar u = b / beta;  // exact +-1 for real input
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * beta, app - aqq);
        const double c = std::cos(theta), s = std::sin(theta);
        // Columns: col_p <- u*c*col_p + s*col_q ; col_q <- -u*s*col_p + c*col_q
        for (std::size_t i = 0; i < n; ++i) {
          const Scalar xp = a(i, p), xq = a(i, q);
          a(i, p) = u * c * xp + s * xq;
          a(i, q) = -u * s * xp + c * xq;
          const Scalar vp = v(i, p), vq = v(i, q);
          v(i, p) = u * c * vp + s * vq;
          v(i, q) = -u * s * vp + c * vq;
        }
        // Rows (conjugate transform).
        const Scalar uc = std::conj(u);
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar xp = a(p, j), xq = a(q, j);
          a(p, j) = uc * c * xp + s * xq;
          a(q, j) = -uc * s * xp + c * xq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d[i] > d[j]; });

  HermEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Mat(n, n, h.field());
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline double lambda_max(const Mat& h) {
  return herm_eig(h).eigenvalues.front();
}

struct Svd {
  std::vector<double> sigma;  // descending, length min(rows, cols)
  Mat u;                      // rows x r, orthonormal columns
  Mat v;                      // cols x r, orthonormal columns
};

/// SVD through the Hermitian eigendecomposition of M*M.  Left vectors for
/// singular values below 1e-12 * sigma_1 are completed by orthonormalization
/// against the already-recovered ones.
inline Svd svd(const Mat& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  Svd out;
  out.sigma.assign(r, 0.0);
  out.u = Mat(m.rows(), r, m.field());
  out.v = Mat(m.cols(), r, m.field());

  if (fro_norm(m) == 0.0) {
    for (std::size_t k = 0; k < r; ++k) {
      out.u(k, k) = 1.0;
      out.v(k, k) = 1.0;
    }
    return out;
  }

  const Mat gram = m.adjoint() * m;
  const HermEig eig = herm_eig(gram);
  for (std::size_t k = 0; k < r; ++k) {
    out.sigma[k] = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    for (std::size_t i = 0; i < m.cols(); ++i) out.v(i, k) = eig.eigenvectors(i, k);
  }

  const double cutoff = 1e-12 * out.sigma[0];
  std::vector<Vec> ucols;
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < r; ++k) {
    if (out.sigma[k] >= cutoff) {
      Vec uk = m.apply(column(out.v, k));
      scale(uk, 1.0 / out.sigma[k]);
      for (std::size_t i = 0; i < m.rows(); ++i) out.u(i, k) = uk[i];
      ucols.push_back(std::move(uk));
    } else {
      missing.push_back(k);
    }
  }
  // Complete the left basis from standard basis vectors.
  std::size_t next = 0;
  for (std::size_t k : missing) {
    Vec cand;
    for (; next < m.rows(); ++next) {
      cand = unit_basis(m.rows(), next);
      for (const auto& uc : ucols) {
        const Scalar c = dot(uc, cand);
        for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= c * uc[i];
      }
      if (vec_norm(cand) > 0.5) break;
    }
    scale(cand, 1.0 / vec_norm(cand));
    for (std::size_t i = 0; i < m.rows(); ++i) out.u(i, k) = cand[i];
    ucols.push_back(std::move(cand));
    ++next;
  }
  return out;
}

/// Spectral norm sigma_1(M).
inline double op_norm(const Mat& m) {
  if (fro_norm(m) == 0.0) return 0.0;
  return svd(m).sigma.front();
}

/// Top singular triple (sigma_1, u_1, v_1); used for subgradients of the
/// spectral norm.
inline std::tuple<double, Vec, Vec> top_singular_triple(const Mat& m) {
  const Svd s = svd(m);
  return {s.sigma.front(), column(s.u, 0), column(s.v, 0)};
}

}  // namespace bjo
