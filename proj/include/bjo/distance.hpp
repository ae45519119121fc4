#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "bjo/eig.hpp"
#include "bjo/matrix.hpp"
#include "bjo/optimize.hpp"
#include "bjo/oracle.hpp"
#include "bjo/rng.hpp"

namespace bjo {

/// States g on matrices used for distance lower bounds:
/// g(S) = s_jj, g(S) = tr(S)/n, or g(S) = x*Sx.
struct DiagonalUnit {
  std::size_t index = 0;
};
struct NormalizedTrace {};
struct VectorState {
  Vec x;  // unit vector
};
using StateSpec = std::variant<DiagonalUnit, NormalizedTrace, VectorState>;

struct DistanceReport {
  double dist = 0.0;
  Scalar argmin_lambda{0.0, 0.0};
  double mta = 0.0;
  bool mta_available = false;
  double column_bound = 0.0;
  bool column_bound_available = false;
  double trace_bound = 0.0;
};

/// dist(T, Span{A}) = min over scalars of || T - lambda A ||, with the
/// minimizing scalar.  Convex in lambda; solved by (nested) golden section.
inline std::pair<double, Scalar> dist_to_span(const Mat& t, const Mat& a) {
  return min_scalar_opnorm(t, a);
}

namespace detail {

inline double residual_norm(const Mat& t, const Mat& a, const Vec& x) {
  const Vec tx = t.apply(x);
  const Vec ax = a.apply(x);
  const double an2 = vec_norm(ax) * vec_norm(ax);
  Vec r = tx;
  if (an2 > 0.0) {
    const Scalar mu = dot(ax, tx) / an2;  // <Tx, Ax> / ||Ax||^2
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= mu * ax[i];
  }
  return vec_norm(r);
}

}  // namespace detail

/// The supremum M_T(A) = sup_{||x||=1} || Tx - (<Tx,Ax>/||Ax||^2) Ax ||,
/// requiring A bounded below.  Multistart ascent: each step re-fits the
/// scalar and moves x toward the top eigenvector of (T - mu A)*(T - mu A);
/// warm starts come from singular vectors of T - mu A over a coarse mu grid.
inline double mta_sup(const Mat& t, const Mat& a, int restarts = 32) {
  t.require_same_shape(a);
  const Svd sa = svd(a);
  const double smax = sa.sigma.front();
  const double smin = sa.sigma.back();
  if (smax == 0.0 || smin <= 1e-10 * smax || a.rows() < a.cols())
    throw Error(ErrorCode::SingularA, "mta_sup requires A bounded below");

  const std::size_t n = t.cols();
  double best = 0.0;

  auto ascend = [&](Vec x) {
    double fx = detail::residual_norm(t, a, x);
    for (int it = 0; it < 200; ++it) {
      const Vec tx = t.apply(x);
      const Vec ax = a.apply(x);
      const double an2 = vec_norm(ax) * vec_norm(ax);
      const Scalar mu = an2 > 0 ? dot(ax, tx) / an2 : Scalar{0.0, 0.0};
      Mat d = t - a * mu;
      // One power step on (T - mu A)*(T - mu A), safeguarded.
      Vec y = d.adjoint().apply(d.apply(x));
      const double yn = vec_norm(y);
      if (yn < 1e-300) break;
      scale(y, 1.0 / yn);
      const double fy = detail::residual_norm(t, a, y);
      if (fy > fx + 1e-15) {
        x = std::move(y);
        fx = fy;
      } else {
        // Damped blend keeps progress near convergence.
        bool moved = false;
        for (double damp : {0.5, 0.1, 0.01}) {
          Vec z(x.size());
          for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + damp * y[i];
          scale(z, 1.0 / vec_norm(z));
          const double fz = detail::residual_norm(t, a, z);
          if (fz > fx + 1e-16) {
            x = std::move(z);
            fx = fz;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
    }
    best = std::max(best, fx);
  };

  // Warm starts: top right-singular vectors of T - mu A over a mu grid.
  const double radius = 2.0 * op_norm(t) / std::max(smax, 1e-12) + 1e-6;
  const bool complex_field = t.field() == Field::Complex || a.field() == Field::Complex;
  std::vector<Scalar> grid;
  grid.push_back({0.0, 0.0});
  const int steps = complex_field ? 5 : 9;
  for (int i = 0; i < steps; ++i) {
    const double re = -radius + 2.0 * radius * i / (steps - 1);
    if (complex_field) {
      for (int j = 0; j < steps; ++j)
        grid.push_back({re, -radius + 2.0 * radius * j / (steps - 1)});
    } else {
      grid.push_back({re, 0.0});
    }
  }
  for (const Scalar mu : grid) ascend(column(svd(t - a * mu).v, 0));

  Rng rng(0xA5CE17D5ULL);
  for (int r = 0; r < restarts; ++r)
    ascend(rng.unit_vector(n, complex_field ? Field::Complex : Field::Real));
  return best;
}

/// The state lower bound g(T*T) - |g(A*T)|^2 / g(A*A)  <=  dist^2.
inline double state_lower_bound(const Mat& t, const Mat& a, const StateSpec& g) {
  t.require_same_shape(a);
  const Mat tt = t.adjoint() * t;
  const Mat at = a.adjoint() * t;
  const Mat aa = a.adjoint() * a;

  auto eval = [&](const Mat& s) -> Scalar {
    if (const auto* d = std::get_if<DiagonalUnit>(&g)) {
      if (d->index >= s.rows()) throw Error(ErrorCode::ShapeMismatch, "state index");
      return s(d->index, d->index);
    }
    if (std::get_if<NormalizedTrace>(&g))
      return trace(s) / Scalar{static_cast<double>(s.rows()), 0.0};
    const auto& v = std::get<VectorState>(g);
    if (std::abs(vec_norm(v.x) - 1.0) > 1e-8) throw Error(ErrorCode::NotUnit, "vector state");
    return dot(v.x, s.apply(v.x));
  };

  const double gaa = eval(aa).real();
  if (gaa <= 0.0) throw Error(ErrorCode::StateDegenerate, "g(A*A) = 0");
  return eval(tt).real() - std::norm(eval(at)) / gaa;
}

/// max over columns j of the diagonal-state bound; every column of A must be
/// nonzero.
inline double column_bound_max(const Mat& t, const Mat& a) {
  t.require_same_shape(a);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double cn = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) cn += std::norm(a(i, j));
    if (cn == 0.0) throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < a.cols(); ++j)
    best = std::max(best, state_lower_bound(t, a, DiagonalUnit{j}));
  return best;
}

inline DistanceReport distance_report(const Mat& t, const Mat& a) {
  DistanceReport rep;
  auto [d, lam] = dist_to_span(t, a);
  rep.dist = d;
  rep.argmin_lambda = lam;
  const Svd sa = svd(a);
  if (fro_norm(a) > 0.0 && sa.sigma.back() > 1e-10 * sa.sigma.front() && a.rows() == a.cols()) {
    rep.mta = mta_sup(t, a);
    rep.mta_available = true;
  }
  if (fro_norm(a) > 0.0) rep.trace_bound = state_lower_bound(t, a, NormalizedTrace{});
  try {
    rep.column_bound = column_bound_max(t, a);
    rep.column_bound_available = true;
  } catch (const Error&) {
    rep.column_bound_available = false;
  }
  return rep;
}

}  // namespace bjo
