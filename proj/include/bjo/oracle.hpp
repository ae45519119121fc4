#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "bjo/attainment.hpp"
#include "bjo/eig.hpp"
#include "bjo/matrix.hpp"
#include "bjo/optimize.hpp"
#include "bjo/rng.hpp"
#include "bjo/subspace.hpp"

namespace bjo {

enum class OracleMethod { Subgradient, Grid };

/// Ground-truth minimization result for || T + sum_j lambda_j B_j || (or the
/// numerical-radius analogue) over real coefficient vectors.  Coefficients
/// refer to the subspace generators as given; for the complex field
/// consecutive pairs are (Re, Im) of one complex coefficient.
struct OracleResult {
  double min_value = 0.0;
  RealVec argmin;
  long iterations = 0;
  OracleMethod method = OracleMethod::Subgradient;
  bool budget_exceeded = false;
  RealVec restart_values;
};

struct OracleConfig {
  int iterations = 1200;
  int restarts = 8;
  std::uint64_t seed = 0x5EEDBA5EULL;
};

namespace detail {

inline Mat combine(const Mat& t, const std::vector<Mat>& basis, const RealVec& lambda,
                   Field field) {
  Mat x = t;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Scalar c = field == Field::Complex ? Scalar{lambda[2 * j], lambda[2 * j + 1]}
                                             : Scalar{lambda[j], 0.0};
    x = x + basis[j] * c;
  }
  return x;
}

/// Attaining pair of the numerical radius: (w, theta, x) with
/// Re(e^{i theta} x* T x) = w.
inline std::tuple<double, double, Vec> numrad_attaining(const Mat& t) {
  const int grid = 96;
  auto h = [&](double theta) { return lambda_max(rotated_real_part(t, theta)); };
  double best_v = -1.0, best_theta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = 2.0 * M_PI * i / grid;
    const double v = h(theta);
    if (v > best_v) {
      best_v = v;
      best_theta = theta;
    }
  }
  const double step = 2.0 * M_PI / grid;
  auto [theta, value] = golden_max(h, best_theta - step, best_theta + step, 60);
  const HermEig eig = herm_eig(rotated_real_part(t, theta));
  return {value, theta, column(eig.eigenvectors, 0)};
}

/// Generic convex minimization used by both oracles: projected-free
/// subgradient descent with restarts plus a compass-search polish.  The
/// combined evaluation returns (f(x), subgradient at x) so expensive
/// decompositions are shared between the two.
inline OracleResult minimize_convex(
    const std::function<double(const RealVec&)>& f,
    const std::function<std::pair<double, RealVec>(const RealVec&)>& eval, std::size_t p,
    double start_scale, const OracleConfig& cfg) {
  OracleResult out;
  Rng rng(cfg.seed);
  RealVec best(p, 0.0);
  double fbest = f(best);
  long iters = 0;

  for (int r = 0; r < cfg.restarts; ++r) {
    RealVec x(p, 0.0);
    if (r > 0)
      for (auto& v : x) v = start_scale * rng.gaussian();
    RealVec rx = x;
    double rbest = f(x);
    for (int t = 1; t <= cfg.iterations; ++t, ++iters) {
      auto [fx, g] = eval(x);
      if (fx < rbest) {
        rbest = fx;
        rx = x;
      }
      const double gn = norm2(g);
      if (gn < 1e-15) break;
      const double eta = start_scale / (gn * std::sqrt(static_cast<double>(t)));
      for (std::size_t j = 0; j < p; ++j) x[j] -= eta * g[j];
    }
    {
      const double fx = f(x);
      if (fx < rbest) {
        rx = x;
      }
    }
    // Re-anchor on f: eval's value may come from a coarser computation.
    rbest = f(rx);
    pattern_polish(f, rx, rbest, 0.05 * start_scale + 1e-6, 1e-6 * start_scale + 1e-9);
    out.restart_values.push_back(rbest);
    if (rbest < fbest) {
      fbest = rbest;
      best = rx;
    }
  }
  pattern_polish(f, best, fbest, 1e-4 * start_scale + 1e-8, 1e-12);
  out.min_value = fbest;
  out.argmin = best;
  out.iterations = iters;
  return out;
}

}  // namespace detail

/// Global minimum of the convex map lambda -> || T + sum lambda_j A_j ||
/// over the generators of W.  For one-dimensional W a grid plus
/// golden-section cross-check is folded in.
inline OracleResult min_opnorm_over_subspace(const Mat& t, const SubspaceBasis& w,
                                             const OracleConfig& cfg = {}) {
  const Field field = t.field();
  if (w.trivial()) {
    OracleResult out;
    out.min_value = op_norm(t);
    return out;
  }
  for (const Mat& g : w.generators) t.require_same_shape(g);
  const std::size_t m = w.generators.size();
  const std::size_t p = field == Field::Complex ? 2 * m : m;
  double gen_scale = 0.0;
  for (const Mat& g : w.generators) gen_scale = std::max(gen_scale, fro_norm(g));
  const double scale = std::max(op_norm(t), 1e-8) / gen_scale;

  auto f = [&](const RealVec& lam) { return op_norm(detail::combine(t, w.generators, lam, field)); };
  auto eval = [&](const RealVec& lam) {
    const Mat x = detail::combine(t, w.generators, lam, field);
    auto [sigma, u, v] = top_singular_triple(x);
    RealVec g(p, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const Mat& b = w.generators[j];
      const Vec bv = b.apply(v);
      const Scalar d = dot(u, bv);  // u* B v
      if (field == Field::Complex) {
        g[2 * j] = d.real();
        g[2 * j + 1] = -d.imag();
      } else {
        g[j] = d.real();
      }
    }
    return std::make_pair(sigma, std::move(g));
  };

  OracleResult out = detail::minimize_convex(f, eval, p, scale, cfg);

  if (m == 1) {
    // Grid + local refinement cross-check.
    const double radius = 2.0 * op_norm(t) / std::max(op_norm(w.generators[0]), 1e-12) + 1.0;
    if (field == Field::Real) {
      double gx = 0.0, gv = f({0.0});
      const int n = 400;
      for (int i = 0; i <= n; ++i) {
        const double lam = -radius + 2.0 * radius * i / n;
        const double v = f({lam});
        if (v < gv) {
          gv = v;
          gx = lam;
        }
      }
      const double h = 2.0 * radius / n;
      auto [lx, lv] = golden_min([&](double a) { return f({a}); }, gx - h, gx + h);
      if (lv < out.min_value) {
        out.min_value = lv;
        out.argmin = {lx};
        out.method = OracleMethod::Grid;
      }
    } else {
      double bre = 0.0, bim = 0.0, gv = f({0.0, 0.0});
      const int n = 40;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
          const double re = -radius + 2.0 * radius * i / n;
          const double im = -radius + 2.0 * radius * j / n;
          const double v = f({re, im});
          if (v < gv) {
            gv = v;
            bre = re;
            bim = im;
          }
        }
      const double h = 2.0 * radius / n;
      auto inner = [&](double re) {
        return golden_min([&](double im) { return f({re, im}); }, bim - h, bim + h, 70).second;
      };
      auto [re, lv] = golden_min(inner, bre - h, bre + h, 70);
      const double im =
          golden_min([&](double b) { return f({re, b}); }, bim - h, bim + h, 70).first;
      if (lv < out.min_value) {
        out.min_value = lv;
        out.argmin = {re, im};
        out.method = OracleMethod::Grid;
      }
    }
  }
  return out;
}

/// Same scheme for the numerical-radius norm (complex field only).
inline OracleResult min_numrad_over_subspace(const Mat& t, const SubspaceBasis& w,
                                             const OracleConfig& cfg = {}) {
  if (t.field() != Field::Complex)
    throw Error(ErrorCode::RealFieldUnsupported, "numerical-radius oracle");
  if (w.trivial()) {
    OracleResult out;
    out.min_value = numerical_radius(t);
    return out;
  }
  const std::size_t m = w.generators.size();
  const std::size_t p = 2 * m;
  double gen_scale = 0.0;
  for (const Mat& g : w.generators) gen_scale = std::max(gen_scale, fro_norm(g));
  const double scale = std::max(numerical_radius(t), 1e-8) / gen_scale;

  auto f = [&](const RealVec& lam) {
    return numerical_radius(detail::combine(t, w.generators, lam, Field::Complex));
  };
  auto eval = [&](const RealVec& lam) {
    const Mat x = detail::combine(t, w.generators, lam, Field::Complex);
    auto [wv, theta, xv] = detail::numrad_attaining(x);
    const Scalar phase = std::polar(1.0, theta);
    RealVec g(p, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const Scalar q = phase * dot(xv, w.generators[j].apply(xv));  // e^{it} x* B x
      g[2 * j] = q.real();
      g[2 * j + 1] = -q.imag();
    }
    return std::make_pair(wv, std::move(g));
  };

  OracleConfig c = cfg;
  c.iterations = std::min(c.iterations, 400);  // w-evaluations are costly
  c.restarts = std::min(c.restarts, 4);
  return detail::minimize_convex(f, eval, p, scale, c);
}

enum class OracleNorm { Operator, NumericalRadius };
enum class OracleDecision { Orthogonal, NotOrthogonal };

/// Referee decision straight from the definition: T is orthogonal to W iff
/// no coefficient vector pushes the norm below ||T||.
inline OracleDecision decide_by_oracle(const Mat& t, const SubspaceBasis& w,
                                       OracleNorm norm = OracleNorm::Operator,
                                       const OracleConfig& cfg = {}) {
  const double base =
      norm == OracleNorm::Operator ? op_norm(t) : numerical_radius(t);
  if (base == 0.0 || w.trivial()) return OracleDecision::Orthogonal;
  const OracleResult r = norm == OracleNorm::Operator ? min_opnorm_over_subspace(t, w, cfg)
                                                      : min_numrad_over_subspace(t, w, cfg);
  return r.min_value >= base * (1.0 - 1e-6) ? OracleDecision::Orthogonal
                                            : OracleDecision::NotOrthogonal;
}

/// Global minimum over a single scalar coefficient of || T - lambda A ||,
/// by golden section (nested for complex lambda).  Returns (dist, lambda).
inline std::pair<double, Scalar> min_scalar_opnorm(const Mat& t, const Mat& a) {
  t.require_same_shape(a);
  const double an = op_norm(a);
  if (an == 0.0) return {op_norm(t), Scalar{0.0, 0.0}};
  const double radius = 2.0 * op_norm(t) / an + 1e-6;
  if (t.field() == Field::Real && a.field() == Field::Real) {
    auto f = [&](double lam) { return op_norm(t - a * Scalar{lam, 0.0}); };
    auto [x, v] = golden_min(f, -radius, radius, 110);
    return {v, Scalar{x, 0.0}};
  }
  auto f2 = [&](double re, double im) { return op_norm(t - a * Scalar{re, im}); };
  auto inner_arg = [&](double re) {
    return golden_min([&](double im) { return f2(re, im); }, -radius, radius, 90);
  };
  auto [re, v] = golden_min([&](double r) { return inner_arg(r).second; }, -radius, radius, 90);
  const double im = inner_arg(re).first;
  return {f2(re, im), Scalar{re, im}};
}

}  // namespace bjo
