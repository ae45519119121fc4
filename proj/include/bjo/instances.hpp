#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "bjo/certify.hpp"
#include "bjo/matrix.hpp"
#include "bjo/rng.hpp"
#include "bjo/subspace.hpp"

namespace bjo {

enum class InstanceLabel { OrthogonalByConstruction, ContainsT, OracleLabeled };

inline const char* to_string(InstanceLabel l) {
  switch (l) {
    case InstanceLabel::OrthogonalByConstruction: return "orthogonal";
    case InstanceLabel::ContainsT: return "contains-t";
    case InstanceLabel::OracleLabeled: return "oracle-labeled";
  }
  return "?";
}

struct InstanceSpec {
  std::size_t n = 3;
  std::size_t k = 1;  // attainment dimension, 1 <= k <= n
  std::size_t m = 1;  // subspace dimension
  Field field = Field::Complex;
  std::uint64_t seed = 0;
  InstanceLabel label = InstanceLabel::OracleLabeled;
};

struct Instance {
  Mat t;
  std::vector<Mat> generators;
  std::optional<OrthoCertificate> planted;
  InstanceSpec spec;
};

namespace detail {

inline Rng spec_rng(const InstanceSpec& spec) {
  // Fold the shape into the stream so distinct specs with equal seeds
  // separate.
  std::uint64_t s = spec.seed;
  s = s * 0x100000001B3ULL ^ spec.n;
  s = s * 0x100000001B3ULL ^ spec.k;
  s = s * 0x100000001B3ULL ^ spec.m;
  s = s * 0x100000001B3ULL ^ (spec.field == Field::Complex ? 2 : 1);
  return Rng(s);
}

inline RealVec simplex_draw(Rng& rng, std::size_t h) {
  RealVec lam(h);
  double total = 0.0;
  for (auto& v : lam) {
    v = -std::log(std::max(rng.u01(), 1e-300));
    total += v;
  }
  for (auto& v : lam) v /= total;
  return lam;
}

}  // namespace detail

/// Builds an instance with T perp_B span(W) guaranteed by construction:
/// T has unit norm with a k-dimensional attainment subspace, a density P is
/// planted inside it, and the generators are sampled from the kernel of
/// A -> tr((TP)*A).  P is returned as the planted certificate.
inline Instance gen_orthogonal(const InstanceSpec& spec) {
  Rng rng = detail::spec_rng(spec);
  const std::size_t n = spec.n, k = spec.k, m = spec.m;
  Instance inst;
  inst.spec = spec;

  const Mat u = rng.unitary(n, spec.field);
  const Mat v = rng.unitary(n, spec.field);
  std::vector<double> s(n, 1.0);
  for (std::size_t i = k; i < n; ++i) s[i] = rng.uniform(0.2, 0.8);
  std::sort(s.begin() + k, s.end(), std::greater<double>());
  Mat d(n, n, spec.field);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = s[i];
  inst.t = u * d * v.adjoint();
  inst.t.set_field(spec.field);

  // Attainment basis: first k columns of V.
  std::vector<Vec> h0;
  for (std::size_t j = 0; j < k; ++j) h0.push_back(column(v, j));

  // Density supported in H0 with h <= k rank-one terms.
  const std::size_t h = 1 + rng.next_u64() % k;
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < h; ++i) {
    Vec x(n, Scalar{0.0, 0.0});
    for (std::size_t j = 0; j < k; ++j) {
      const Scalar c = rng.scalar(spec.field);
      for (std::size_t r = 0; r < n; ++r) x[r] += c * h0[j][r];
    }
    // Orthonormalize against previous terms for a clean decomposition.
    for (const Vec& prev : xs) {
      const Scalar p = dot(prev, x);
      for (std::size_t r = 0; r < n; ++r) x[r] -= p * prev[r];
    }
    const double nrm = vec_norm(x);
    if (nrm < 1e-6) continue;
    scale(x, 1.0 / nrm);
    xs.push_back(std::move(x));
  }
  const RealVec lam = detail::simplex_draw(rng, xs.size());

  OrthoCertificate cert;
  cert.p = Mat(n, n, spec.field);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) cert.p(r, c) += lam[i] * xs[i][r] * std::conj(xs[i][c]);
    cert.decomposition.emplace_back(lam[i], xs[i]);
  }

  // Generators from ker(A -> tr((TP)*A)).
  const Mat tp = inst.t * cert.p;
  const double tp2 = fro_norm(tp) * fro_norm(tp);
  for (std::size_t j = 0; j < m; ++j) {
    Mat g = rng.matrix(n, n, spec.field);
    Scalar c = fro_inner(tp, g) / tp2;
    if (spec.field == Field::Real) c = Scalar{c.real(), 0.0};
    inst.generators.push_back(g - tp * c);
  }
  inst.planted = std::move(cert);
  return inst;
}

/// Random T with T itself inside W: never orthogonal for T != 0.
inline Instance gen_nonorthogonal(const InstanceSpec& spec) {
  Rng rng = detail::spec_rng(spec);
  Instance inst;
  inst.spec = spec;
  inst.t = rng.matrix(spec.n, spec.n, spec.field);
  inst.generators.push_back(inst.t);
  for (std::size_t j = 1; j < spec.m; ++j)
    inst.generators.push_back(rng.matrix(spec.n, spec.n, spec.field));
  return inst;
}

/// Fully random instance, to be labeled by the oracle.
inline Instance gen_random(const InstanceSpec& spec) {
  Rng rng = detail::spec_rng(spec);
  Instance inst;
  inst.spec = spec;
  inst.t = rng.matrix(spec.n, spec.n, spec.field);
  for (std::size_t j = 0; j < spec.m; ++j)
    inst.generators.push_back(rng.matrix(spec.n, spec.n, spec.field));
  return inst;
}

inline Instance generate(const InstanceSpec& spec) {
  switch (spec.label) {
    case InstanceLabel::OrthogonalByConstruction: return gen_orthogonal(spec);
    case InstanceLabel::ContainsT: return gen_nonorthogonal(spec);
    case InstanceLabel::OracleLabeled: return gen_random(spec);
  }
  return gen_random(spec);
}

/// The operators vanishing on the hyperplane ker(f): span{ e_i f* }.
/// check_subspace against this basis realizes the hyperplane-kernel
/// orthogonality criterion.
inline SubspaceBasis hyperplane_kernel_subspace(const Vec& f, std::size_t codomain_dim,
                                                Field field) {
  if (std::abs(vec_norm(f) - 1.0) > 1e-10) throw Error(ErrorCode::NotUnit, "f must be unit");
  std::vector<Mat> gens;
  for (std::size_t i = 0; i < codomain_dim; ++i)
    gens.push_back(outer(unit_basis(codomain_dim, i), f, field));
  return make_subspace(std::move(gens), field);
}

}  // namespace bjo
