#pragma once

#include <cmath>
#include <vector>

#include "bjo/eig.hpp"
#include "bjo/matrix.hpp"
#include "bjo/optimize.hpp"

namespace bjo {

inline constexpr double kEpsGap = 1e-8;  // top singular cluster (relative)
inline constexpr double kEpsW = 1e-7;    // numerical-radius attainment (relative)

/// The norm-attainment structure of T: an orthonormal basis U of the top
/// right-singular subspace H0.  Unit vectors of H0 are exactly the vectors
/// where ||Tx|| = ||T||.
struct AttainmentSubspace {
  double norm = 0.0;  // ||T||
  Mat basis;          // n x k, orthonormal columns
  double gap = 0.0;   // sigma_1 - sigma_{k+1} (0 if k = n)
};

inline AttainmentSubspace attainment_subspace(const Mat& t, double eps_gap = kEpsGap) {
  if (fro_norm(t) == 0.0) throw Error(ErrorCode::ZeroOperator, "attainment of zero operator");
  const Svd s = svd(t);
  const double s1 = s.sigma.front();
  std::size_t k = 1;
  while (k < s.sigma.size() && s.sigma[k] >= s1 * (1.0 - eps_gap)) ++k;

  AttainmentSubspace out;
  out.norm = s1;
  out.basis = Mat(t.cols(), k, t.field());
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < t.cols(); ++i) out.basis(i, j) = s.v(i, j);
  if (k < t.cols()) {
    const double next = k < s.sigma.size() ? s.sigma[k] : 0.0;
    out.gap = s1 - next;
  } else {
    out.gap = 0.0;
  }
  return out;
}

/// U* M U for an orthonormal basis U; the quadratic form of M restricted to
/// the spanned subspace.
inline Mat compress(const Mat& m, const Mat& u) {
  if (m.rows() != m.cols() || m.rows() != u.rows())
    throw Error(ErrorCode::ShapeMismatch, "compress");
  return u.adjoint() * m * u;
}

struct NumRadSample {
  double theta = 0.0;
  Vec x;  // unit vector with | x* T x | = w(T)
};

struct NumRadAttainment {
  double w = 0.0;
  std::vector<NumRadSample> samples;
};

namespace detail {

inline Mat rotated_real_part(const Mat& t, double theta) {
  const Scalar phase = std::polar(1.0, theta);
  Mat h = t * phase;
  const Mat hs = h.adjoint();
  h = (h + hs) * Scalar{0.5, 0.0};
  return h;
}

}  // namespace detail

/// Numerical radius with attainment samples:
///   w(T) = max_theta lambda_max(Re(e^{i theta} T)).
/// A 720-point grid locates local maxima; golden-section refinement around
/// the best five gives w; samples are top-eigenspace vectors (basis plus
/// balanced pairs, capped at 2k^2 per maximizer).
inline NumRadAttainment numrad_attainment(const Mat& t, double eps_w = kEpsW) {
  if (t.field() != Field::Complex)
    throw Error(ErrorCode::RealFieldUnsupported, "numerical radius needs the complex field");
  if (!t.square()) throw Error(ErrorCode::NonSquare, "numrad_attainment");
  if (fro_norm(t) == 0.0) throw Error(ErrorCode::ZeroOperator, "numrad of zero operator");

  const int grid = 720;
  auto h = [&](double theta) { return lambda_max(detail::rotated_real_part(t, theta)); };

  std::vector<double> vals(grid);
  for (int i = 0; i < grid; ++i) vals[i] = h(2.0 * M_PI * i / grid);

  // Circular local maxima, best five refined.
  std::vector<std::pair<double, int>> locals;
  for (int i = 0; i < grid; ++i) {
    const double prev = vals[(i + grid - 1) % grid];
    const double next = vals[(i + 1) % grid];
    if (vals[i] >= prev && vals[i] >= next) locals.emplace_back(vals[i], i);
  }
  std::sort(locals.begin(), locals.end(), std::greater<>());
  if (locals.size() > 5) locals.resize(5);

  const double step = 2.0 * M_PI / grid;
  std::vector<std::pair<double, double>> refined;  // (value, theta)
  for (const auto& [v0, i] : locals) {
    const double c = 2.0 * M_PI * i / grid;
    auto [theta, value] = golden_max(h, c - step, c + step, 80);
    refined.emplace_back(value, theta);
  }
  std::sort(refined.begin(), refined.end(), std::greater<>());

  NumRadAttainment out;
  out.w = refined.front().first;

  // Drop duplicate maximizers (wrapped distance below grid resolution).
  std::vector<double> thetas;
  for (const auto& [value, theta] : refined) {
    if (value < out.w * (1.0 - 0.5 * eps_w)) continue;
    bool dup = false;
    for (double t0 : thetas) {
      double d = std::fmod(std::abs(theta - t0), 2.0 * M_PI);
      d = std::min(d, 2.0 * M_PI - d);
      if (d < 0.5 * step) dup = true;
    }
    if (!dup) thetas.push_back(theta);
  }

  for (double theta : thetas) {
    const Mat hmat = detail::rotated_real_part(t, theta);
    const HermEig eig = herm_eig(hmat);
    std::size_t k = 1;
    while (k < eig.eigenvalues.size() &&
           eig.eigenvalues[k] >= eig.eigenvalues[0] - 1e-9 * std::max(out.w, 1e-12))
      ++k;
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < k; ++j) basis.push_back(column(eig.eigenvectors, j));

    std::vector<Vec> cand = basis;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t a = 0; a < k && cand.size() < 2 * k * k; ++a)
      for (std::size_t b = a + 1; b < k && cand.size() < 2 * k * k; ++b) {
        static const Scalar phases[3] = {{-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
        Vec x(basis[a].size());
        for (std::size_t i = 0; i < x.size(); ++i)
          x[i] = (basis[a][i] + basis[b][i]) * inv_sqrt2;
        cand.push_back(x);
        for (const Scalar ph : phases) {
          if (cand.size() >= 2 * k * k) break;
          for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = (basis[a][i] + ph * basis[b][i]) * inv_sqrt2;
          cand.push_back(x);
        }
      }

    for (auto& x : cand) {
      const Scalar val = dot(x, t.apply(x));  // x* T x
      if (std::abs(std::abs(val) - out.w) <= eps_w * out.w)
        out.samples.push_back({theta, std::move(x)});
    }
  }
  return out;
}

/// Numerical radius only (coarser grid, refined); shared by the oracle where
/// w is evaluated inside inner loops.
inline double numerical_radius(const Mat& t, int grid = 96) {
  if (!t.square()) throw Error(ErrorCode::NonSquare, "numerical_radius");
  if (fro_norm(t) == 0.0) return 0.0;
  auto h = [&](double theta) { return lambda_max(detail::rotated_real_part(t, theta)); };
  std::vector<double> vals(grid);
  for (int i = 0; i < grid; ++i) vals[i] = h(2.0 * M_PI * i / grid);
  std::vector<std::pair<double, int>> locals;
  for (int i = 0; i < grid; ++i) {
    const double prev = vals[(i + grid - 1) % grid];
    const double next = vals[(i + 1) % grid];
    if (vals[i] >= prev && vals[i] >= next) locals.emplace_back(vals[i], i);
  }
  std::sort(locals.begin(), locals.end(), std::greater<>());
  if (locals.size() > 3) locals.resize(3);
  const double step = 2.0 * M_PI / grid;
  double best = 0.0;
  for (const auto& [v0, i] : locals) {
    const double c = 2.0 * M_PI * i / grid;
    best = std::max(best, golden_max(h, c - step, c + step, 60).second);
  }
  return best;
}

}  // namespace bjo
