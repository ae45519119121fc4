#include <doctest.h>

#include "bjo/oracle.hpp"
#include "bjo/rng.hpp"
#include "bjo/subspace.hpp"

using namespace bjo;

TEST_CASE("min_opnorm_over_subspace worked cases") {
  {
    const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
    const SubspaceBasis w = make_subspace({Mat::diag({1.0, 0.0}, Field::Real)}, Field::Real);
    const OracleResult r = min_opnorm_over_subspace(t, w);
    CHECK(r.min_value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.argmin[0] == doctest::Approx(-1.0).epsilon(1e-3));
  }
  {
    const Mat i2 = Mat::identity(2, Field::Real);
    const OracleResult r = min_opnorm_over_subspace(i2, make_subspace({i2}, Field::Real));
    CHECK(r.min_value <= 1e-6);
  }
  {
    const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
    const Mat a = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}}, Field::Real);
    const OracleResult r = min_opnorm_over_subspace(t, make_subspace({a}, Field::Real));
    CHECK(r.min_value == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("oracle result re-evaluates to its min_value") {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Mat t = rng.matrix(3, 3, field);
    std::vector<Mat> gens;
    for (int j = 0; j < 1 + trial % 3; ++j) gens.push_back(rng.matrix(3, 3, field));
    const SubspaceBasis w = make_subspace(gens, field);
    const OracleResult r = min_opnorm_over_subspace(t, w);
    CHECK(r.min_value <= op_norm(t) + 1e-12);
    const Mat at_min = detail::combine(t, w.generators, r.argmin, field);
    CHECK(op_norm(at_min) == doctest::Approx(r.min_value).epsilon(1e-10));
  }
}

TEST_CASE("objective is convex along random segments") {
  Rng rng(23);
  const Mat t = rng.matrix(3, 3, Field::Complex);
  std::vector<Mat> gens = {rng.matrix(3, 3, Field::Complex), rng.matrix(3, 3, Field::Complex)};
  auto g = [&](const RealVec& lam) { return op_norm(detail::combine(t, gens, lam, Field::Complex)); };
  auto h = [&](const RealVec& lam) {
    return numerical_radius(detail::combine(t, gens, lam, Field::Complex));
  };
  for (int probe = 0; probe < 100; ++probe) {
    RealVec l1(4), l2(4);
    for (auto& v : l1) v = rng.gaussian();
    for (auto& v : l2) v = rng.gaussian();
    const double s = rng.u01();
    RealVec mid(4);
    for (int i = 0; i < 4; ++i) mid[i] = s * l1[i] + (1.0 - s) * l2[i];
    CHECK(g(mid) <= s * g(l1) + (1.0 - s) * g(l2) + 1e-10);
    if (probe < 25) CHECK(h(mid) <= s * h(l1) + (1.0 - s) * h(l2) + 1e-7);
  }
}

TEST_CASE("min_numrad_over_subspace worked cases") {
  const Mat i2 = Mat::identity(2, Field::Complex);
  CHECK(min_numrad_over_subspace(i2, make_subspace({i2}, Field::Complex)).min_value <= 1e-6);

  const Mat shift = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}}, Field::Complex);
  const OracleResult r = min_numrad_over_subspace(shift, make_subspace({i2}, Field::Complex));
  CHECK(r.min_value == doctest::Approx(0.5).epsilon(1e-5));

  const Mat t = Mat::diag({1.0, -1.0}, Field::Complex);
  const Mat a = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Field::Complex);
  const OracleResult r2 = min_numrad_over_subspace(t, make_subspace({a}, Field::Complex));
  CHECK(r2.min_value >= 1.0 - 1e-6);

  CHECK_THROWS_AS(
      min_numrad_over_subspace(Mat::identity(2, Field::Real), make_subspace({i2}, Field::Complex)),
      Error);
}

TEST_CASE("decide_by_oracle thresholding") {
  const Mat t = Mat::diag({1.0, 0.5}, Field::Real);
  CHECK(decide_by_oracle(t, make_subspace({Mat::diag({1.0, 0.0}, Field::Real)}, Field::Real)) ==
        OracleDecision::NotOrthogonal);
  const Mat i2 = Mat::identity(2, Field::Real);
  CHECK(decide_by_oracle(i2, make_subspace({i2}, Field::Real)) == OracleDecision::NotOrthogonal);
  const Mat shift = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}}, Field::Real);
  CHECK(decide_by_oracle(t, make_subspace({shift}, Field::Real)) == OracleDecision::Orthogonal);
  CHECK(decide_by_oracle(Mat(2, 2, Field::Real), make_subspace({i2}, Field::Real)) ==
        OracleDecision::Orthogonal);
  CHECK(decide_by_oracle(i2, make_subspace({Mat(2, 2, Field::Real)}, Field::Real)) ==
        OracleDecision::Orthogonal);
}

TEST_CASE("restart stability") {
  Rng rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Mat t = rng.matrix(4, 4, field);
    std::vector<Mat> gens = {rng.matrix(4, 4, field), rng.matrix(4, 4, field)};
    const OracleResult r = min_opnorm_over_subspace(t, make_subspace(gens, field));
    double lo = r.restart_values.front(), hi = lo;
    for (double v : r.restart_values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo <= 1e-6);
  }
}

TEST_CASE("min_scalar_opnorm matches the subspace oracle for m = 1") {
  Rng rng(88);
  for (int trial = 0; trial < 6; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Mat t = rng.matrix(3, 3, field);
    const Mat a = rng.matrix(3, 3, field);
    auto [d, lam] = min_scalar_opnorm(t, a);
    // min over lambda of ||T - lambda A|| vs min over mu of ||T + mu A||.
    const OracleResult r = min_opnorm_over_subspace(t, make_subspace({a}, field));
    CHECK(d == doctest::Approx(r.min_value).epsilon(1e-6));
    CHECK(op_norm(t - a * lam) == doctest::Approx(d).epsilon(1e-10));
  }
}
