#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace bjo {

using RealVec = std::vector<double>;

inline double norm2(const RealVec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline void project_ball(RealVec& x, double radius = 1.0) {
  const double n = norm2(x);
  if (n > radius) {
    const double f = radius / n;
    for (double& v : x) v *= f;
  }
}

/// Euclidean projection onto the probability simplex {x >= 0, sum x = 1}.
inline RealVec project_simplex(RealVec y) {
  RealVec u = y;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = static_cast<int>(i + 1);
      tau = t;
    }
  }
  (void)rho;
  for (double& v : y) v = std::max(0.0, v - tau);
  return y;
}

/// Golden-section minimization of a unimodal function on [lo, hi].
inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double lo,
                                            double hi, int iters = 90) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo,
                                            double hi, int iters = 90) {
  auto [x, v] = golden_min([&](double t) { return -f(t); }, lo, hi, iters);
  return {x, -v};
}

/// Local polish of a convex function by compass search with shrinking steps,
/// axis directions plus a fixed set of diagonal directions.
inline void pattern_polish(const std::function<double(const RealVec&)>& f, RealVec& x,
                           double& fx, double step0, double step_min = 1e-11) {
  const std::size_t p = x.size();
  std::vector<RealVec> dirs;
  for (std::size_t i = 0; i < p; ++i) {
    RealVec d(p, 0.0);
    d[i] = 1.0;
    dirs.push_back(d);
    d[i] = -1.0;
    dirs.push_back(d);
  }
  // Deterministic diagonal directions.
  std::uint64_t st = 0x2545F4914F6CDD1DULL;
  auto nextu = [&st]() {
    st ^= st << 13;
    st ^= st >> 7;
    st ^= st << 17;
    return st;
  };
  for (std::size_t r = 0; r < 2 * p; ++r) {
    RealVec d(p);
    double n = 0.0;
    for (auto& v : d) {
      v = static_cast<double>(static_cast<std::int64_t>(nextu() >> 11)) / 4.5e15 - 1.0;
      n += v * v;
    }
    n = std::sqrt(n);
    if (n > 0) {
      for (auto& v : d) v /= n;
      dirs.push_back(d);
    }
  }

  double step = step0;
  while (step > step_min) {
    bool improved = false;
    for (const auto& d : dirs) {
      RealVec y = x;
      for (std::size_t i = 0; i < p; ++i) y[i] += step * d[i];
      const double fy = f(y);
      if (fy < fx - 1e-16) {
        x = std::move(y);
        fx = fy;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
}

/// Gaussian elimination with partial pivoting; returns empty on (near-)
/// singular systems.
inline RealVec solve_linear(std::vector<RealVec> a, RealVec b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (std::abs(a[piv][k]) < 1e-13) return {};
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  RealVec x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Decides whether the origin lies in the convex hull of a finite point set
/// in R^d by Frank-Wolfe on min ||sum_i w_i p_i||^2 over the simplex.
/// Returns (inside, weights, final_norm).  If not inside, the separating
/// direction is -y/||y|| for the returned point y = sum w_i p_i.
struct HullMembership {
  bool inside = false;
  RealVec weights;
  RealVec point;  // closest hull point found
  double norm = 0.0;
};

inline HullMembership hull_contains_origin(const std::vector<RealVec>& pts, double tol,
                                           int max_iters = 4000) {
  HullMembership out;
  const std::size_t n = pts.size();
  if (n == 0) return out;
  const std::size_t d = pts[0].size();
  RealVec w(n, 0.0);
  w[0] = 1.0;
  RealVec y = pts[0];
  for (int it = 0; it < max_iters; ++it) {
    // Linear minimization step: vertex most opposed to y.
    std::size_t best = 0;
    double bestdot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double dp = 0.0;
      for (std::size_t j = 0; j < d; ++j) dp += y[j] * pts[i][j];
      if (dp < bestdot) {
        bestdot = dp;
        best = i;
      }
    }
    const double ynorm2 = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
    if (std::sqrt(ynorm2) <= tol) break;
    // All points strictly on the positive side of hyperplane normal y:
    // certified separation, origin outside.
    if (bestdot > 0.0) break;
    // Exact line search toward the chosen vertex.
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = pts[best][j] - y[j];
      num += y[j] * diff;
      den += diff * diff;
    }
    if (den <= 0.0) break;
    const double gamma = std::clamp(-num / den, 0.0, 1.0);
    for (double& wi : w) wi *= (1.0 - gamma);
    w[best] += gamma;
    for (std::size_t j = 0; j < d; ++j) y[j] += gamma * (pts[best][j] - y[j]);
    if (gamma == 0.0) break;
  }
  // Polish on the support: equality-constrained least squares for the
  // minimum-norm hull point, accepted only if it stays in the simplex.
  {
    std::vector<std::size_t> sup;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] > 1e-9) sup.push_back(i);
    const std::size_t s = sup.size();
    if (s >= 1 && s <= 64) {
      std::vector<RealVec> kkt(s + 1, RealVec(s + 1, 0.0));
      RealVec rhs(s + 1, 0.0);
      for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = 0; b < s; ++b)
          for (std::size_t j = 0; j < d; ++j) kkt[a][b] += pts[sup[a]][j] * pts[sup[b]][j];
        kkt[a][s] = 1.0;
        kkt[s][a] = 1.0;
      }
      rhs[s] = 1.0;
      const RealVec sol = solve_linear(kkt, rhs);
      if (!sol.empty()) {
        bool feasible = true;
        for (std::size_t a = 0; a < s; ++a)
          if (sol[a] < -1e-12) feasible = false;
        if (feasible) {
          RealVec y2(d, 0.0);
          for (std::size_t a = 0; a < s; ++a)
            for (std::size_t j = 0; j < d; ++j) y2[j] += std::max(0.0, sol[a]) * pts[sup[a]][j];
          if (norm2(y2) < norm2(y)) {
            std::fill(w.begin(), w.end(), 0.0);
            double tot = 0.0;
            for (std::size_t a = 0; a < s; ++a) tot += std::max(0.0, sol[a]);
            for (std::size_t a = 0; a < s; ++a) w[sup[a]] = std::max(0.0, sol[a]) / tot;
            y = std::move(y2);
          }
        }
      }
    }
  }
  out.norm = norm2(y);
  out.inside = out.norm <= tol;
  out.weights = std::move(w);
  out.point = std::move(y);
  return out;
}

}  // namespace bjo
