#include <doctest.h>

#include "bjo/numrad.hpp"
#include "bjo/rng.hpp"

using namespace bjo;

TEST_CASE("worth_certify worked cases") {
  {
    const Mat t = Mat::diag({1.0, -1.0}, Field::Complex);
    const Mat a = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Complex);
    const auto cert = worth_certify(t, make_subspace({a}, Field::Complex));
    REQUIRE(cert.has_value());
    CHECK(cert->w == doctest::Approx(1.0));
    const WOrthoResiduals r = validate_worth_certificate(t, {a}, *cert);
    CHECK(r.certificate <= 1e-8);
    CHECK(r.attainment <= kEpsW);
  }
  {
    const Mat i2 = Mat::identity(2, Field::Complex);
    const Mat a = Mat::diag({1.0, -1.0}, Field::Complex);
    const auto cert = worth_certify(i2, make_subspace({a}, Field::Complex));
    REQUIRE(cert.has_value());
    CHECK(validate_worth_certificate(i2, {a}, *cert).certificate <= 1e-8);
  }
  {
    const Mat t = Mat::diag({1.0, -1.0}, Field::Complex);
    const Mat a = Mat::diag({1.0, 0.0}, Field::Complex);
    const auto cert = worth_certify(t, make_subspace({a}, Field::Complex));
    REQUIRE(cert.has_value());
    const OracleResult r = min_numrad_over_subspace(t, make_subspace({a}, Field::Complex));
    CHECK(r.min_value >= 1.0 - 1e-6);
  }
  CHECK_THROWS_AS(worth_certify(Mat::identity(2, Field::Real), make_subspace({}, Field::Real)),
                  Error);
}

TEST_CASE("worth_check worked cases") {
  const Mat t = Mat::diag({1.0, -1.0}, Field::Complex);
  const Mat a = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Complex);
  CHECK(worth_check(t, make_subspace({a}, Field::Complex)).decision ==
        WOrthoDecision::CertifiedOrthogonal);

  const Mat i2 = Mat::identity(2, Field::Complex);
  const WOrthoResult r = worth_check(i2, make_subspace({i2}, Field::Complex));
  CHECK(r.decision == WOrthoDecision::NotOrthogonal);
  CHECK(r.oracle_min <= 1e-6);

  const Mat shift = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}}, Field::Complex);
  CHECK(worth_check(shift, make_subspace({shift}, Field::Complex)).decision ==
        WOrthoDecision::NotOrthogonal);
}

TEST_CASE("certified verdicts are confirmed by the oracle") {
  Rng rng(13);
  int certified = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Mat t = rng.matrix(2 + trial % 2, 2 + trial % 2, Field::Complex);
    const Mat a = rng.matrix(t.rows(), t.cols(), Field::Complex);
    const SubspaceBasis w = make_subspace({a}, Field::Complex);
    const auto cert = worth_certify(t, w);
    if (!cert) continue;
    ++certified;
    const double wt = numerical_radius(t);
    const OracleResult r = min_numrad_over_subspace(t, w);
    CHECK(r.min_value >= wt * (1.0 - 1e-6));
  }
  (void)certified;  // count is instance-dependent; soundness is what matters
}

TEST_CASE("w-decisions are scale invariant") {
  const Mat t = Mat::diag({1.0, -1.0}, Field::Complex);
  const Mat a = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Complex);
  const SubspaceBasis w = make_subspace({a}, Field::Complex);
  const WOrthoDecision base = worth_check(t, w).decision;
  for (double alpha : {1e-3, 7.0, 1e3})
    CHECK(worth_check(t * Scalar{alpha, 0.0}, w).decision == base);
}

TEST_CASE("validate_worth_certificate flags tampering") {
  const Mat t = Mat::diag({1.0, -1.0}, Field::Complex);
  const Mat a = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Complex);
  auto cert = worth_certify(t, make_subspace({a}, Field::Complex));
  REQUIRE(cert.has_value());
  cert->points.front().lambda += 0.2;  // break the convex combination
  CHECK(validate_worth_certificate(t, {a}, *cert).certificate > 0.1);
}
