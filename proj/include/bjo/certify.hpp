#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bjo/attainment.hpp"
#include "bjo/eig.hpp"
#include "bjo/matrix.hpp"
#include "bjo/optimize.hpp"
#include "bjo/rng.hpp"
#include "bjo/subspace.hpp"

namespace bjo {

struct CheckConfig {
  double eps_dec = 1e-7;       // decision band around mu* = 0
  double eps_cert = 1e-8;      // certificate residual budget (relative)
  double eps_wit_rel = 1e-9;   // required witness decrease, relative to ||T||
  double eps_gap = kEpsGap;    // attainment cluster width
  int sep_iterations = 5000;   // per separation start
  int sep_restarts = 5;        // random starts beyond the coordinate ones
  int dykstra_iterations = 20000;
  std::uint64_t seed = 0xB10FF5EEDULL;
};

/// Density-matrix certificate of T being Birkhoff-James orthogonal to W:
/// P is PSD with unit trace, supported on the attainment subspace
/// (T*T P = ||T||^2 P) and trace-orthogonal to every generator.
struct OrthoCertificate {
  Mat p;  // n x n density matrix
  std::vector<std::pair<double, Vec>> decomposition;  // (lambda_i, x_i)

  struct Residuals {
    double trace = 0.0;
    double psd = 0.0;
    double fixed_point = 0.0;
    double trace_conditions = 0.0;
    double decomposition = 0.0;
    double weight_sum = 0.0;
    double support = 0.0;
    double max() const {
      double m = trace;
      for (double v : {psd, fixed_point, trace_conditions, decomposition, weight_sum, support})
        m = std::max(m, v);
      return m;
    }
  };
  Residuals residuals;
};

/// A direction and step that strictly decrease the operator norm, refuting
/// orthogonality.  Coefficients refer to W's orthonormalized basis.
struct NonOrthoWitness {
  std::vector<Scalar> coeffs;
  double step = 0.0;
  double achieved = 0.0;  // ||T + t B|| - ||T||, negative
};

enum class Decision { Orthogonal, NotOrthogonal, Inconclusive };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Orthogonal: return "Orthogonal";
    case Decision::NotOrthogonal: return "NotOrthogonal";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct Diagnostics {
  double mu_star = 0.0;
  long sep_iterations = 0;
  long dykstra_iterations = 0;
  double norm_t = 0.0;
  std::size_t dropped_generators = 0;
  bool compressed_range_contains_zero = false;
  bool pair_mode = false;
  std::vector<std::string> messages;
  CheckConfig config;
};

struct Verdict {
  Decision decision = Decision::Inconclusive;
  std::optional<OrthoCertificate> certificate;
  std::optional<NonOrthoWitness> witness;
  Diagnostics diagnostics;
};

/// Hermitian k x k pencil realizing x |-> <A_j x, T x> = x*(T* A_j)x on H0.
/// Complex field: per generator the Hermitian and skew parts of
/// M_j = U*(T* A_j)U, so that (Uc)*T*A_j(Uc) = c*H_{2j-1}c + i c*H_{2j}c.
/// Real field: the symmetric part only.
inline std::vector<Mat> constraint_pencil(const Mat& t, const Mat& u, const SubspaceBasis& w) {
  std::vector<Mat> pencil;
  const Mat tadj = t.adjoint();
  for (const Mat& a : w.orthonormalized) {
    t.require_same_shape(a);
    const Mat m = compress(tadj * a, u);
    const Mat madj = m.adjoint();
    pencil.push_back((m + madj) * Scalar{0.5, 0.0});
    if (t.field() == Field::Complex)
      pencil.push_back((m - madj) * Scalar{0.0, -0.5});  // (M - M*)/(2i)
  }
  return pencil;
}

struct SepResult {
  RealVec c;
  double mu = 0.0;
  long iterations = 0;
  bool budget_exceeded = false;
};

/// min over ||c|| <= 1 of f(c) = lambda_max(sum_l c_l H_l) by projected
/// subgradient with coordinate and random warm starts.  f(0) = 0, so
/// mu* <= 0 always; mu* >= -eps_dec means 0 lies in the convex hull of the
/// joint numerical range of the pencil.
inline SepResult separation_minimize(const std::vector<Mat>& pencil, const CheckConfig& cfg = {}) {
  const std::size_t d = pencil.size();
  const std::size_t k = pencil.front().rows();

  auto with_vec = [&](const RealVec& c) {
    Mat s(k, k, pencil.front().field());
    for (std::size_t l = 0; l < d; ++l) s = s + pencil[l] * Scalar{c[l], 0.0};
    return herm_eig(s);
  };
  auto f = [&](const RealVec& c) {
    RealVec cp = c;
    project_ball(cp);
    return with_vec(cp).eigenvalues.front();
  };

  SepResult out;
  out.c.assign(d, 0.0);
  out.mu = 0.0;  // value at the origin

  std::vector<RealVec> starts;
  for (std::size_t l = 0; l < d; ++l) {
    RealVec e(d, 0.0);
    e[l] = 1.0;
    starts.push_back(e);
    e[l] = -1.0;
    starts.push_back(e);
  }
  Rng rng(cfg.seed);
  for (int r = 0; r < cfg.sep_restarts; ++r) {
    RealVec c(d);
    for (auto& v : c) v = rng.gaussian();
    project_ball(c);
    starts.push_back(c);
  }

  for (const auto& start : starts) {
    RealVec c = start;
    double best_here = f(c);
    RealVec best_c = c;
    if (best_here < out.mu) {
      out.mu = best_here;
      out.c = c;
    }
    int since_improved = 0;
    for (int t = 1; t <= cfg.sep_iterations; ++t, ++out.iterations) {
      const HermEig eig = with_vec(c);
      const Vec v = column(eig.eigenvectors, 0);
      RealVec g(d);
      for (std::size_t l = 0; l < d; ++l) g[l] = dot(v, pencil[l].apply(v)).real();
      const double gn = norm2(g);
      if (gn < 1e-16) break;
      const double eta = 1.0 / (gn * std::sqrt(static_cast<double>(t)));
      for (std::size_t l = 0; l < d; ++l) c[l] -= eta * g[l];
      project_ball(c);
      const double fc = with_vec(c).eigenvalues.front();
      if (fc < best_here - 1e-14) {
        best_here = fc;
        best_c = c;
        since_improved = 0;
      } else if (++since_improved > 600) {
        break;  // stagnated
      }
    }
    if (best_here < out.mu) {
      out.mu = best_here;
      out.c = best_c;
    }
  }

  pattern_polish(f, out.c, out.mu, 0.05, 1e-10);
  project_ball(out.c);
  return out;
}

namespace detail {

/// Projection of a Hermitian matrix onto {Q >= 0, tr Q = 1}: eigenvalues go
/// through the simplex projection.
inline Mat project_spectrahedron(const Mat& q) {
  const HermEig eig = herm_eig(q);
  const RealVec lam = project_simplex(eig.eigenvalues);
  Mat out(q.rows(), q.cols(), q.field());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] == 0.0) continue;
    const Vec v = column(eig.eigenvectors, i);
    for (std::size_t r = 0; r < q.rows(); ++r)
      for (std::size_t c = 0; c < q.cols(); ++c)
        out(r, c) += lam[i] * v[r] * std::conj(v[c]);
  }
  return out;
}

/// Least-squares correction onto the affine set {tr(Q H_l) = 0 for all l},
/// with a Gram pseudo-inverse precomputed over the pencil.
class AffineProjector {
 public:
  explicit AffineProjector(const std::vector<Mat>& pencil) : pencil_(pencil) {
    const std::size_t d = pencil.size();
    Mat gram(d, d, Field::Real);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) gram(a, b) = fro_inner(pencil[a], pencil[b]).real();
    const HermEig eig = herm_eig(gram);
    const double cutoff = 1e-12 * std::max(eig.eigenvalues.front(), 1e-300);
    pinv_ = Mat(d, d, Field::Real);
    for (std::size_t i = 0; i < d; ++i) {
      if (eig.eigenvalues[i] <= cutoff) continue;
      const Vec v = column(eig.eigenvectors, i);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          pinv_(a, b) += (v[a] * std::conj(v[b])).real() / eig.eigenvalues[i];
    }
  }

  RealVec violations(const Mat& q) const {
    RealVec b(pencil_.size());
    for (std::size_t l = 0; l < pencil_.size(); ++l) b[l] = fro_inner(pencil_[l], q).real();
    return b;
  }

  Mat project(const Mat& q) const {
    const RealVec b = violations(q);
    const std::size_t d = pencil_.size();
    RealVec alpha(d, 0.0);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t l = 0; l < d; ++l) alpha[a] += pinv_(a, l).real() * b[l];
    Mat out = q;
    for (std::size_t a = 0; a < d; ++a) out = out - pencil_[a] * Scalar{alpha[a], 0.0};
    return out;
  }

 private:
  const std::vector<Mat>& pencil_;
  Mat pinv_;
};

/// Feasibility polish over the factorization Q(B) = BB*/tr(BB*), which is
/// PSD with unit trace by construction.  Levenberg-Marquardt on the affine
/// residuals tr(Q(B) H_l) converges quadratically near a feasible point,
/// where alternating projections can be sublinear (tangential intersection).
inline Mat factored_polish(const std::vector<Mat>& pencil, const Mat& start, double target,
                           int iters = 300) {
  const std::size_t k = start.rows();
  const Field field = start.field();
  const std::size_t d = pencil.size();
  const std::size_t reals = (field == Field::Complex ? 2 : 1) * k * k;

  auto unpack = [&](const RealVec& x) {
    Mat m(k, k, field);
    std::size_t p = 0;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        const double re = x[p++];
        const double im = field == Field::Complex ? x[p++] : 0.0;
        m(r, c) = Scalar{re, im};
      }
    return m;
  };
  auto density = [&](const RealVec& x) {
    const Mat b = unpack(x);
    const Mat q = b * b.adjoint();
    const double tr = std::max(trace(q).real(), 1e-300);
    return q * Scalar{1.0 / tr, 0.0};
  };
  auto residuals = [&](const RealVec& x) {
    const Mat q = density(x);
    RealVec r(d);
    for (std::size_t l = 0; l < d; ++l) r[l] = fro_inner(pencil[l], q).real();
    return r;
  };
  // Analytic Jacobian of r_l = tr(H_l BB*)/tr(BB*): with G_l = H_l B,
  // d tr(H_l BB*)/d Re B_ij = 2 Re(G_l)_ij and d/d Im B_ij = 2 Im(G_l)_ij,
  // combined through the quotient rule.
  auto jacobian = [&](const RealVec& x, const RealVec& r) {
    const Mat b = unpack(x);
    const double s = std::max(trace(b * b.adjoint()).real(), 1e-300);
    std::vector<RealVec> jac(d, RealVec(reals));
    for (std::size_t l = 0; l < d; ++l) {
      const Mat g = pencil[l] * b;
      std::size_t p = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const Scalar diff = g(i, j) - b(i, j) * Scalar{r[l], 0.0};
          jac[l][p++] = 2.0 * diff.real() / s;
          if (field == Field::Complex) jac[l][p++] = 2.0 * diff.imag() / s;
        }
    }
    return jac;
  };
  auto cost_of = [&](const RealVec& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  };

  // Factor the start through its eigendecomposition, flooring tiny
  // eigenvalues so every direction stays reachable.
  RealVec x(reals, 0.0);
  {
    const HermEig eig = herm_eig(start);
    Mat b(k, k, field);
    for (std::size_t i = 0; i < k; ++i) {
      const double s = std::sqrt(std::max(eig.eigenvalues[i], 1e-12));
      const Vec v = column(eig.eigenvectors, i);
      for (std::size_t r = 0; r < k; ++r) b(r, i) = v[r] * Scalar{s, 0.0};
    }
    std::size_t p = 0;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        x[p++] = b(r, c).real();
        if (field == Field::Complex) x[p++] = b(r, c).imag();
      }
  }

  RealVec r = residuals(x);
  double cost = cost_of(r);
  double mu = 1e-8;
  for (int it = 0; it < iters; ++it) {
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::abs(v));
    if (worst <= target) break;

    const std::vector<RealVec> jac = jacobian(x, r);

    // Minimum-norm Gauss-Newton step via the d x d dual system
    // (J J^T + mu I) y = r, step = -J^T y.
    bool stepped = false;
    for (int attempt = 0; attempt < 8 && !stepped; ++attempt) {
      std::vector<RealVec> jjt(d, RealVec(d, 0.0));
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b2 = 0; b2 < d; ++b2)
          for (std::size_t p = 0; p < reals; ++p) jjt[a][b2] += jac[a][p] * jac[b2][p];
        jjt[a][a] += mu;
      }
      const RealVec y = solve_linear(jjt, r);
      if (!y.empty()) {
        RealVec xn = x;
        for (std::size_t p = 0; p < reals; ++p) {
          double s = 0.0;
          for (std::size_t l = 0; l < d; ++l) s += jac[l][p] * y[l];
          xn[p] -= s;
        }
        const RealVec rn = residuals(xn);
        const double cn = cost_of(rn);
        if (cn < cost) {
          x = std::move(xn);
          r = rn;
          cost = cn;
          mu = std::max(mu * 0.25, 1e-14);
          stepped = true;
        }
      }
      if (!stepped) mu *= 10.0;
    }
    if (!stepped) break;
  }
  return density(x);
}

}  // namespace detail

/// Primal recovery: Dykstra alternating projections between the
/// spectrahedron and the affine trace constraints, lifted back through U and
/// decomposed into the Carathéodory form sum lambda_i x_i x_i*.
/// Throws DykstraStalled when no feasible point emerges at tolerance.
inline OrthoCertificate recover_density(const std::vector<Mat>& pencil, const Mat& u,
                                        const CheckConfig& cfg, long* iters_out = nullptr) {
  const std::size_t k = u.cols();
  const Field field = u.field();
  const double tol = 0.3 * cfg.eps_cert;

  // Constraints below tolerance hold for every density Q automatically
  // (|tr(QH)| <= ||H||_F); keeping them would make the affine projection
  // degenerate.
  std::vector<Mat> active;
  for (const Mat& h : pencil)
    if (fro_norm(h) > 0.1 * tol) active.push_back(h);

  Mat q = Mat::identity(k, field) * Scalar{1.0 / static_cast<double>(k), 0.0};

  if (active.empty()) {
    if (iters_out) *iters_out = 0;
    OrthoCertificate cert;
    const HermEig eig = herm_eig(q);
    cert.p = Mat(u.rows(), u.rows(), field);
    for (std::size_t i = 0; i < k; ++i) {
      const double lam = eig.eigenvalues[i];
      const Vec c = column(eig.eigenvectors, i);
      Vec x = u.apply(c);
      scale(x, 1.0 / vec_norm(x));
      for (std::size_t r = 0; r < u.rows(); ++r)
        for (std::size_t s = 0; s < u.rows(); ++s)
          cert.p(r, s) += lam * x[r] * std::conj(x[s]);
      cert.decomposition.emplace_back(lam, std::move(x));
    }
    return cert;
  }

  detail::AffineProjector affine(active);
  Mat inc_spec(k, k, field), inc_aff(k, k, field);

  double best_viol = std::numeric_limits<double>::infinity();
  Mat best = q;
  long it = 0;
  int stall = 0;
  for (; it < cfg.dykstra_iterations; ++it) {
    const Mat y = detail::project_spectrahedron(q + inc_spec);
    inc_spec = q + inc_spec - y;
    const Mat z = affine.project(y + inc_aff);
    inc_aff = y + inc_aff - z;
    q = z;

    double viol = 0.0;
    for (double v : affine.violations(y)) viol = std::max(viol, std::abs(v));
    if (viol < best_viol - 1e-15) {
      best_viol = viol;
      best = y;
      stall = 0;
    } else if (++stall > 500) {
      break;
    }
    if (viol <= tol) {
      best_viol = viol;
      best = y;
      break;
    }
  }
  if (iters_out) *iters_out = it;
  if (best_viol > tol) {
    // Alternating projections can stall when the spectrahedron meets the
    // affine set tangentially; hand the best iterate to the factorized
    // polish, which stays exactly feasible in the PSD/trace constraints.
    const Mat polished = detail::factored_polish(active, best, 0.3 * tol);
    double viol = 0.0;
    for (double v : affine.violations(polished)) viol = std::max(viol, std::abs(v));
    if (viol < best_viol) {
      best_viol = viol;
      best = polished;
    }
  }
  if (best_viol > tol)
    throw Error(ErrorCode::DykstraStalled,
                "no density matrix met the trace constraints (residual " +
                    std::to_string(best_viol) + ")");

  // Tighten: one exact affine correction, accepted if PSD survives.
  {
    const Mat cand = affine.project(best);
    const HermEig eig = herm_eig(cand);
    double viol = 0.0;
    for (double v : affine.violations(cand)) viol = std::max(viol, std::abs(v));
    if (eig.eigenvalues.back() >= -tol && viol <= best_viol) best = cand;
  }

  OrthoCertificate cert;
  const HermEig eig = herm_eig(best);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    if (eig.eigenvalues[i] > 1e-10) total += eig.eigenvalues[i];
  cert.p = Mat(u.rows(), u.rows(), field);
  for (std::size_t i = 0; i < k; ++i) {
    if (eig.eigenvalues[i] <= 1e-10) continue;
    const double lam = eig.eigenvalues[i] / total;
    const Vec c = column(eig.eigenvectors, i);
    Vec x = u.apply(c);
    scale(x, 1.0 / vec_norm(x));
    for (std::size_t r = 0; r < u.rows(); ++r)
      for (std::size_t s = 0; s < u.rows(); ++s)
        cert.p(r, s) += lam * x[r] * std::conj(x[s]);
    cert.decomposition.emplace_back(lam, std::move(x));
  }
  return cert;
}

/// Recomputes every certificate condition from scratch; the implementation
/// shares nothing with the recovery path beyond basic matrix arithmetic.
inline OrthoCertificate::Residuals validate_certificate(const Mat& t,
                                                        const std::vector<Mat>& generators,
                                                        const OrthoCertificate& cert) {
  OrthoCertificate::Residuals r;
  const Mat& p = cert.p;
  const double tn = op_norm(t);
  const double tn2 = std::max(tn * tn, 1e-300);

  r.trace = std::abs(trace(p) - Scalar{1.0, 0.0});
  r.psd = std::max(0.0, -herm_eig(p).eigenvalues.back());

  const Mat tt = t.adjoint() * t;
  r.fixed_point = fro_norm(tt * p - p * Scalar{tn * tn, 0.0}) / tn2;

  const Mat tp = t * p;
  for (const Mat& a : generators) {
    const double an = fro_norm(a);
    if (an == 0.0) continue;
    r.trace_conditions =
        std::max(r.trace_conditions, std::abs(fro_inner(tp, a)) / std::max(tn * an, 1e-300));
  }

  Mat rebuilt(p.rows(), p.cols(), p.field());
  double wsum = 0.0;
  for (const auto& [lam, x] : cert.decomposition) {
    wsum += lam;
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) rebuilt(i, j) += lam * x[i] * std::conj(x[j]);
    Vec y = tt.apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= tn * tn * x[i];
    r.support = std::max(r.support, vec_norm(y) / tn2);
  }
  r.decomposition = fro_norm(p - rebuilt);
  r.weight_sum = std::abs(wsum - 1.0);
  return r;
}

/// First-order norm-decreasing step along the separating direction.
/// Throws WitnessValidationFailed when no decreasing step exists.
inline NonOrthoWitness witness_from_direction(const RealVec& c, const SubspaceBasis& w,
                                              const Mat& t, const CheckConfig& cfg = {}) {
  const std::size_t m = w.dim();
  std::vector<Scalar> gamma(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (t.field() == Field::Complex)
      gamma[j] = Scalar{c[2 * j], -c[2 * j + 1]};
    else
      gamma[j] = Scalar{c[j], 0.0};
  }
  Mat b(t.rows(), t.cols(), t.field());
  for (std::size_t j = 0; j < m; ++j) b = b + w.orthonormalized[j] * gamma[j];

  const double tn = op_norm(t);
  const double bn = fro_norm(b);
  if (bn == 0.0) throw Error(ErrorCode::WitnessValidationFailed, "zero direction");
  const double eps_wit = cfg.eps_wit_rel * tn;

  double t0 = tn / bn;
  for (int h = 0; h <= 60; ++h, t0 *= 0.5) {
    for (double sign : {1.0, -1.0}) {
      const double nn = op_norm(t + b * Scalar{sign * t0, 0.0});
      if (nn < tn - eps_wit) {
        NonOrthoWitness wit;
        wit.coeffs = gamma;
        if (sign < 0)
          for (auto& g : wit.coeffs) g = -g;
        wit.step = t0;
        wit.achieved = nn - tn;
        return wit;
      }
    }
  }
  throw Error(ErrorCode::WitnessValidationFailed, "no norm-decreasing step found");
}

/// Recomputation of the witness inequality ||T + t B|| < ||T|| - eps_wit.
inline bool validate_witness(const Mat& t, const SubspaceBasis& w, const NonOrthoWitness& wit,
                             double eps_wit_rel = 1e-9) {
  Mat b(t.rows(), t.cols(), t.field());
  for (std::size_t j = 0; j < w.dim(); ++j) b = b + w.orthonormalized[j] * wit.coeffs[j];
  const double tn = op_norm(t);
  return op_norm(t + b * Scalar{wit.step, 0.0}) < tn - eps_wit_rel * tn;
}

/// The decision procedure: T perp_B span(W)?
inline Verdict check_subspace(const Mat& t, const SubspaceBasis& w, const CheckConfig& cfg = {}) {
  Verdict verdict;
  verdict.diagnostics.config = cfg;
  verdict.diagnostics.dropped_generators = w.dropped;
  for (const Mat& g : w.generators) t.require_same_shape(g);

  const double tn = op_norm(t);
  verdict.diagnostics.norm_t = tn;

  if (tn == 0.0) {
    // The zero operator is orthogonal to everything.
    OrthoCertificate cert;
    cert.p = Mat(t.cols(), t.cols(), t.field());
    cert.p(0, 0) = 1.0;
    cert.decomposition.emplace_back(1.0, unit_basis(t.cols(), 0));
    cert.residuals = validate_certificate(t, w.generators, cert);
    verdict.decision = Decision::Orthogonal;
    verdict.certificate = std::move(cert);
    verdict.diagnostics.messages.push_back("zero operator: orthogonal by definition");
    return verdict;
  }

  const Mat tn_inv = t * Scalar{1.0 / tn, 0.0};
  const AttainmentSubspace att = attainment_subspace(tn_inv, cfg.eps_gap);

  if (w.trivial()) {
    OrthoCertificate cert;
    const Vec x = column(att.basis, 0);
    cert.p = outer(x, x, t.field());
    cert.decomposition.emplace_back(1.0, x);
    cert.residuals = validate_certificate(t, w.generators, cert);
    verdict.decision = Decision::Orthogonal;
    verdict.certificate = std::move(cert);
    verdict.diagnostics.messages.push_back("trivial subspace");
    return verdict;
  }

  const std::vector<Mat> pencil = constraint_pencil(tn_inv, att.basis, w);
  const SepResult sep = separation_minimize(pencil, cfg);
  verdict.diagnostics.mu_star = sep.mu;
  verdict.diagnostics.sep_iterations = sep.iterations;
  verdict.diagnostics.compressed_range_contains_zero = sep.mu >= -cfg.eps_dec;

  if (sep.mu >= -cfg.eps_dec) {
    try {
      OrthoCertificate cert =
          recover_density(pencil, att.basis, cfg, &verdict.diagnostics.dykstra_iterations);
      cert.residuals = validate_certificate(t, w.generators, cert);
      if (cert.residuals.max() <= cfg.eps_cert) {
        verdict.decision = Decision::Orthogonal;
        verdict.certificate = std::move(cert);
      } else {
        verdict.decision = Decision::Inconclusive;
        verdict.diagnostics.messages.push_back(
            "certificate residual " + std::to_string(cert.residuals.max()) + " above tolerance");
      }
    } catch (const Error& e) {
      verdict.decision = Decision::Inconclusive;
      verdict.diagnostics.messages.push_back(e.what());
    }
  } else {
    try {
      NonOrthoWitness wit = witness_from_direction(sep.c, w, t, cfg);
      verdict.decision = Decision::NotOrthogonal;
      verdict.witness = std::move(wit);
    } catch (const Error& e) {
      verdict.decision = Decision::Inconclusive;
      verdict.diagnostics.messages.push_back(e.what());
    }
  }
  return verdict;
}

inline Verdict check_subspace(const Mat& t, const std::vector<Mat>& generators,
                              const CheckConfig& cfg = {}) {
  return check_subspace(t, make_subspace(generators, t.field()), cfg);
}

/// Pair specialization; the compressed numerical range flag in the
/// diagnostics reports whether {x* T*A x : x in S_{H0}} contains 0.
inline Verdict check_pair(const Mat& t, const Mat& a, const CheckConfig& cfg = {}) {
  Verdict v = check_subspace(t, std::vector<Mat>{a}, cfg);
  v.diagnostics.pair_mode = true;
  return v;
}

}  // namespace bjo
