#include <doctest.h>

#include "bjo/certify.hpp"
#include "bjo/instances.hpp"
#include "bjo/oracle.hpp"
#include "bjo/rng.hpp"

using namespace bjo;

namespace {

const Mat kShift = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}}, Field::Real);

}  // namespace

TEST_CASE("constraint_pencil worked cases") {
  const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
  {
    const AttainmentSubspace att = attainment_subspace(t);
    const SubspaceBasis w = make_subspace({kShift}, Field::Real);
    const auto pencil = constraint_pencil(t, att.basis, w);
    REQUIRE(pencil.size() == 1);
    CHECK(pencil[0].rows() == 1);
    CHECK(std::abs(pencil[0](0, 0)) < 1e-14);
  }
  {
    const Mat i2 = Mat::identity(2, Field::Real);
    const Mat a = Mat::diag({1.0, -1.0}, Field::Real);
    const auto pencil = constraint_pencil(i2, Mat::identity(2, Field::Real),
                                          make_subspace({a}, Field::Real));
    REQUIRE(pencil.size() == 1);
    CHECK(fro_norm(pencil[0] - a * Scalar{1.0 / fro_norm(a), 0.0}) < 1e-12);
  }
}

TEST_CASE("constraint_pencil quadratic-form identity (complex)") {
  Rng rng(31);
  const Mat t = rng.matrix(4, 4, Field::Complex);
  const Mat a = rng.matrix(4, 4, Field::Complex);
  const AttainmentSubspace att = attainment_subspace(t);
  const SubspaceBasis w = make_subspace({a}, Field::Complex);
  const auto pencil = constraint_pencil(t, att.basis, w);
  REQUIRE(pencil.size() == 2);
  const Mat ta = t.adjoint() * w.orthonormalized[0];
  for (int probe = 0; probe < 100; ++probe) {
    const Vec c = rng.unit_vector(att.basis.cols(), Field::Complex);
    const Vec x = att.basis.apply(c);
    const Scalar form = dot(x, ta.apply(x));
    const double re = dot(c, pencil[0].apply(c)).real();
    const double im = dot(c, pencil[1].apply(c)).real();
    CHECK(std::abs(form - Scalar{re, im}) < 1e-10);
  }
}

TEST_CASE("separation_minimize small pencils") {
  const Mat pm = Mat::diag({1.0, -1.0}, Field::Real);
  CHECK(separation_minimize({pm}).mu >= -1e-9);

  const Mat neg = Mat::diag({-1.0, -2.0}, Field::Real);
  const SepResult s = separation_minimize({neg});
  CHECK(s.mu == doctest::Approx(-1.0).epsilon(1e-6));

  const Mat swap = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Real);
  CHECK(separation_minimize({pm, swap}).mu >= -1e-7);
}

TEST_CASE("recover_density worked cases") {
  CheckConfig cfg;
  {
    // T = I2, W = span of the two traceless Paulis: P = I/2.
    const Mat i2 = Mat::identity(2, Field::Real);
    const SubspaceBasis w = make_subspace(
        {Mat::diag({1.0, -1.0}, Field::Real), Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Real)},
        Field::Real);
    const auto pencil = constraint_pencil(i2, Mat::identity(2, Field::Real), w);
    const OrthoCertificate cert = recover_density(pencil, Mat::identity(2, Field::Real), cfg);
    CHECK(fro_norm(cert.p - i2 * Scalar{0.5, 0.0}) < 1e-7);
    const auto r = validate_certificate(i2, w.generators, cert);
    CHECK(r.max() <= 1e-8);
  }
  {
    const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
    const AttainmentSubspace att = attainment_subspace(t);
    const SubspaceBasis w = make_subspace({kShift}, Field::Real);
    const auto pencil = constraint_pencil(t, att.basis, w);
    const OrthoCertificate cert = recover_density(pencil, att.basis, cfg);
    REQUIRE(cert.decomposition.size() == 1);
    CHECK(cert.decomposition[0].first == doctest::Approx(1.0));
    CHECK(std::abs(cert.p(0, 0) - Scalar{1.0, 0.0}) < 1e-10);
    CHECK(validate_certificate(t, w.generators, cert).max() <= 1e-8);
  }
}

TEST_CASE("validate_certificate flags tampering") {
  const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
  OrthoCertificate cert;
  cert.p = Mat(2, 2, Field::Real);
  cert.p(0, 0) = 1.0;
  cert.decomposition.emplace_back(1.0, unit_basis(2, 0));
  CHECK(validate_certificate(t, {kShift}, cert).max() <= 1e-12);

  OrthoCertificate bad_trace = cert;
  bad_trace.p(0, 0) = 1.1;
  CHECK(validate_certificate(t, {kShift}, bad_trace).trace == doctest::Approx(0.1));

  OrthoCertificate off_support = cert;
  off_support.p = Mat(2, 2, Field::Real);
  off_support.p(1, 1) = 1.0;  // supported on the non-attaining direction
  off_support.decomposition = {{1.0, unit_basis(2, 1)}};
  CHECK(validate_certificate(t, {kShift}, off_support).fixed_point > 0.1);
}

TEST_CASE("witness_from_direction worked cases") {
  {
    const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
    const SubspaceBasis w = make_subspace({Mat::diag({1.0, 0.0}, Field::Real)}, Field::Real);
    const NonOrthoWitness wit = witness_from_direction({-1.0}, w, t);
    CHECK(wit.achieved < 0.0);
    CHECK(validate_witness(t, w, wit));
  }
  {
    const Mat i3 = Mat::identity(3, Field::Real);
    const SubspaceBasis w = make_subspace({i3}, Field::Real);
    const NonOrthoWitness wit = witness_from_direction({-1.0}, w, i3);
    CHECK(op_norm(i3 + w.orthonormalized[0] * (wit.coeffs[0] * wit.step)) < 1.0);
  }
}

TEST_CASE("check_subspace worked cases") {
  {
    // Skew-symmetric generator: x*Ax = 0 on the whole sphere.
    const Mat skew = Mat::from_rows({{0.0, -1.0}, {1.0, 0.0}}, Field::Real);
    const Verdict v = check_subspace(Mat::identity(2, Field::Real), {skew});
    CHECK(v.decision == Decision::Orthogonal);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->residuals.max() <= 1e-8);
  }
  {
    Rng rng(4);
    const Mat t = rng.matrix(3, 3, Field::Complex);
    const Verdict v = check_subspace(t, {t});
    CHECK(v.decision == Decision::NotOrthogonal);
    REQUIRE(v.witness.has_value());
    CHECK(validate_witness(t, make_subspace({t}, Field::Complex), *v.witness));
  }
  {
    // T = 0 and W = {0} degenerate policies.
    CHECK(check_subspace(Mat(2, 2, Field::Real), {Mat::identity(2, Field::Real)}).decision ==
          Decision::Orthogonal);
    CHECK(check_subspace(Mat::identity(2, Field::Real), {Mat(2, 2, Field::Real)}).decision ==
          Decision::Orthogonal);
  }
}

TEST_CASE("check_pair worked cases and coherence") {
  const Verdict v1 = check_pair(Mat::diag({1.0, 0.5}, Field::Real), kShift);
  CHECK(v1.decision == Decision::Orthogonal);
  CHECK(v1.diagnostics.pair_mode);
  CHECK(v1.diagnostics.compressed_range_contains_zero);

  const Verdict v2 = check_pair(Mat::identity(2, Field::Real), Mat::identity(2, Field::Real));
  CHECK(v2.decision == Decision::NotOrthogonal);
  CHECK_FALSE(v2.diagnostics.compressed_range_contains_zero);

  Rng rng(62);
  for (int trial = 0; trial < 8; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Mat t = rng.matrix(3, 3, field);
    const Mat a = rng.matrix(3, 3, field);
    CHECK(check_pair(t, a).decision == check_subspace(t, {a}).decision);
  }
}

TEST_CASE("check_subspace agrees with the oracle on random instances") {
  Rng rng(99);
  int inconclusive = 0;
  for (int trial = 0; trial < 40; ++trial) {
    InstanceSpec spec;
    spec.n = 2 + trial % 4;
    spec.m = 1 + trial % 3;
    spec.k = 1 + trial % spec.n;
    spec.field = trial % 2 ? Field::Complex : Field::Real;
    spec.seed = 1000 + trial;
    spec.label = trial % 3 == 0 ? InstanceLabel::OrthogonalByConstruction
                                : InstanceLabel::OracleLabeled;
    const Instance inst = generate(spec);
    const SubspaceBasis w = make_subspace(inst.generators, spec.field);
    const Verdict v = check_subspace(inst.t, w);
    if (v.decision == Decision::Inconclusive) {
      ++inconclusive;
      continue;
    }
    const OracleDecision od = decide_by_oracle(inst.t, w);
    CHECK((v.decision == Decision::Orthogonal) == (od == OracleDecision::Orthogonal));
  }
  CHECK(inconclusive == 0);
}

TEST_CASE("decisions are scale and unitary invariant") {
  Rng rng(123);
  for (int trial = 0; trial < 6; ++trial) {
    InstanceSpec spec;
    spec.n = 3;
    spec.m = 2;
    spec.k = 1 + trial % 3;
    spec.field = trial % 2 ? Field::Complex : Field::Real;
    spec.seed = 77 + trial;
    spec.label =
        trial % 2 ? InstanceLabel::OrthogonalByConstruction : InstanceLabel::OracleLabeled;
    const Instance inst = generate(spec);
    const Decision base = check_subspace(inst.t, inst.generators).decision;

    for (double alpha : {1e-3, 2.0, 1e3})
      CHECK(check_subspace(inst.t * Scalar{alpha, 0.0}, inst.generators).decision == base);

    const Mat u = rng.unitary(3, spec.field);
    const Mat vv = rng.unitary(3, spec.field);
    std::vector<Mat> rotated;
    for (const Mat& a : inst.generators) rotated.push_back(u * a * vv);
    CHECK(check_subspace(u * inst.t * vv, rotated).decision == base);
  }
}

TEST_CASE("orthogonal verdicts imply oracle optimality at zero") {
  for (int trial = 0; trial < 6; ++trial) {
    InstanceSpec spec;
    spec.n = 3;
    spec.k = 1 + trial % 3;
    spec.m = 2;
    spec.field = trial % 2 ? Field::Complex : Field::Real;
    spec.seed = 400 + trial;
    spec.label = InstanceLabel::OrthogonalByConstruction;
    const Instance inst = generate(spec);
    const SubspaceBasis w = make_subspace(inst.generators, spec.field);
    REQUIRE(check_subspace(inst.t, w).decision == Decision::Orthogonal);
    const OracleResult r = min_opnorm_over_subspace(inst.t, w);
    CHECK(r.min_value >= op_norm(inst.t) * (1.0 - 1e-6));
  }
}
