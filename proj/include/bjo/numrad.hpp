#pragma once

#include <optional>
#include <vector>

#include "bjo/attainment.hpp"
#include "bjo/matrix.hpp"
#include "bjo/optimize.hpp"
#include "bjo/oracle.hpp"
#include "bjo/subspace.hpp"

namespace bjo {

/// Certificate that T is numerical-radius orthogonal to W: a convex
/// combination of radius-attaining unit vectors x_i whose weighted features
/// conj(x*Tx) (x*A_j x) sum to zero for every generator.
struct WOrthoCertificate {
  struct Point {
    double lambda = 0.0;
    Vec x;
    Scalar value{0.0, 0.0};  // x* T x
  };
  std::vector<Point> points;
  double w = 0.0;
  std::vector<double> residuals;  // per generator, |sum lambda conj(v) x*Ax|
};

/// Searches the sampled attainment set for the sufficient condition.  A
/// returned certificate proves orthogonality; absence proves nothing.
inline std::optional<WOrthoCertificate> worth_certify(const Mat& t, const SubspaceBasis& w,
                                                      double eps_cert = 1e-8,
                                                      double eps_w = kEpsW) {
  if (t.field() != Field::Complex)
    throw Error(ErrorCode::RealFieldUnsupported, "numerical-radius orthogonality");
  const NumRadAttainment att = numrad_attainment(t, eps_w);
  if (att.samples.empty()) return std::nullopt;
  const std::size_t m = w.dim();
  if (m == 0) {
    WOrthoCertificate cert;
    cert.w = att.w;
    cert.points.push_back(
        {1.0, att.samples.front().x, dot(att.samples.front().x, t.apply(att.samples.front().x))});
    return cert;
  }

  // Feature vectors Phi(x) = (conj(x*Tx) (x*A_j x))_j flattened to R^{2m}.
  std::vector<RealVec> pts;
  std::vector<Scalar> values;
  for (const auto& s : att.samples) {
    const Scalar v = dot(s.x, t.apply(s.x));
    values.push_back(v);
    RealVec p(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
      const Scalar phi = std::conj(v) * dot(s.x, w.orthonormalized[j].apply(s.x));
      p[2 * j] = phi.real();
      p[2 * j + 1] = phi.imag();
    }
    pts.push_back(std::move(p));
  }

  const double tol = 0.5 * eps_cert * att.w;  // basis is Frobenius-orthonormal
  const HullMembership hull = hull_contains_origin(pts, tol, 20000);
  if (!hull.inside) return std::nullopt;

  WOrthoCertificate cert;
  cert.w = att.w;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (hull.weights[i] <= 1e-12) continue;
    cert.points.push_back({hull.weights[i], att.samples[i].x, values[i]});
  }
  cert.residuals.assign(w.generators.size(), 0.0);
  for (std::size_t j = 0; j < w.generators.size(); ++j) {
    Scalar s{0.0, 0.0};
    for (const auto& pt : cert.points)
      s += pt.lambda * std::conj(pt.value) * dot(pt.x, w.generators[j].apply(pt.x));
    cert.residuals[j] = std::abs(s);
  }
  return cert;
}

struct WOrthoResiduals {
  double certificate = 0.0;  // compare against eps_cert
  double attainment = 0.0;   // compare against eps_w
};

/// Independent recomputation of the certificate conditions.
inline WOrthoResiduals validate_worth_certificate(const Mat& t,
                                                  const std::vector<Mat>& generators,
                                                  const WOrthoCertificate& cert) {
  WOrthoResiduals out;
  double wsum = 0.0;
  const double wv = std::max(cert.w, 1e-300);
  for (const auto& pt : cert.points) {
    wsum += pt.lambda;
    out.certificate = std::max(out.certificate, std::abs(vec_norm(pt.x) - 1.0));
    const Scalar v = dot(pt.x, t.apply(pt.x));
    out.certificate = std::max(out.certificate, std::abs(v - pt.value) / wv);
    out.attainment = std::max(out.attainment, std::abs(std::abs(v) - cert.w) / wv);
  }
  out.certificate = std::max(out.certificate, std::abs(wsum - 1.0));
  for (const Mat& a : generators) {
    const double an = fro_norm(a);
    if (an == 0.0) continue;
    Scalar s{0.0, 0.0};
    for (const auto& pt : cert.points)
      s += pt.lambda * std::conj(pt.value) * dot(pt.x, a.apply(pt.x));
    out.certificate = std::max(out.certificate, std::abs(s) / (wv * an));
  }
  return out;
}

enum class WOrthoDecision { CertifiedOrthogonal, OracleOrthogonal, NotOrthogonal };

inline const char* to_string(WOrthoDecision d) {
  switch (d) {
    case WOrthoDecision::CertifiedOrthogonal: return "CertifiedOrthogonal";
    case WOrthoDecision::OracleOrthogonal: return "OracleOrthogonal";
    case WOrthoDecision::NotOrthogonal: return "NotOrthogonal";
  }
  return "?";
}

struct WOrthoResult {
  WOrthoDecision decision = WOrthoDecision::NotOrthogonal;
  std::optional<WOrthoCertificate> certificate;
  double w = 0.0;
  double oracle_min = 0.0;
  RealVec oracle_argmin;
};

/// Certificate first (the theorem's sufficiency); oracle referee otherwise.
/// OracleOrthogonal records instances where the sampled search found no
/// certificate but the convex minimum still sits at w(T).
inline WOrthoResult worth_check(const Mat& t, const SubspaceBasis& w,
                                const OracleConfig& cfg = {}) {
  if (t.field() != Field::Complex)
    throw Error(ErrorCode::RealFieldUnsupported, "numerical-radius orthogonality");
  WOrthoResult out;
  out.w = numerical_radius(t);
  if (out.w == 0.0) {
    out.decision = WOrthoDecision::CertifiedOrthogonal;
    return out;
  }
  if (auto cert = worth_certify(t, w)) {
    out.decision = WOrthoDecision::CertifiedOrthogonal;
    out.certificate = std::move(cert);
    return out;
  }
  const OracleResult r = min_numrad_over_subspace(t, w, cfg);
  out.oracle_min = r.min_value;
  out.oracle_argmin = r.argmin;
  out.decision = r.min_value >= out.w * (1.0 - 1e-6) ? WOrthoDecision::OracleOrthogonal
                                                     : WOrthoDecision::NotOrthogonal;
  return out;
}

}  // namespace bjo
