#include <doctest.h>

#include "bjo/attainment.hpp"
#include "bjo/eig.hpp"
#include "bjo/rng.hpp"

using namespace bjo;

TEST_CASE("attainment_subspace on diagonal matrices") {
  const AttainmentSubspace a = attainment_subspace(Mat::diag({1.0, 1.0, 0.5}, Field::Real));
  CHECK(a.basis.cols() == 2);
  CHECK(a.norm == doctest::Approx(1.0));
  CHECK(a.gap == doctest::Approx(0.5));
  // H0 = span{e1, e2}: rows 0 and 1 carry all the mass.
  double tail = std::abs(a.basis(2, 0)) + std::abs(a.basis(2, 1));
  CHECK(tail < 1e-10);
}

TEST_CASE("attainment_subspace of a unitary covers the whole space") {
  Rng rng(3);
  const Mat u = rng.unitary(4, Field::Complex);
  const AttainmentSubspace a = attainment_subspace(u);
  CHECK(a.basis.cols() == 4);
  CHECK(a.norm == doctest::Approx(1.0));
  CHECK(a.gap == doctest::Approx(0.0));
}

TEST_CASE("clustered singular values stay in one attainment subspace") {
  const AttainmentSubspace a = attainment_subspace(Mat::diag({1.0, 1.0 - 1e-12}, Field::Real), 1e-8);
  CHECK(a.basis.cols() == 2);
}

TEST_CASE("attainment_subspace rejects the zero operator") {
  CHECK_THROWS_AS(attainment_subspace(Mat(2, 2, Field::Real)), Error);
}

TEST_CASE("attainment basis is orthonormal and norm-attaining") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Mat t = rng.matrix(5, 4, field);
    const AttainmentSubspace a = attainment_subspace(t);
    CHECK(a.norm == doctest::Approx(op_norm(t)));
    for (std::size_t i = 0; i < a.basis.cols(); ++i)
      for (std::size_t j = 0; j < a.basis.cols(); ++j) {
        const Scalar p = dot(column(a.basis, i), column(a.basis, j));
        CHECK(std::abs(p - (i == j ? Scalar{1.0, 0.0} : Scalar{0.0, 0.0})) < 1e-10);
      }
    // Random unit combinations attain the norm.
    for (int probe = 0; probe < 20; ++probe) {
      Vec c = rng.unit_vector(a.basis.cols(), field);
      const Vec x = a.basis.apply(c);
      CHECK(vec_norm(t.apply(x)) == doctest::Approx(a.norm).epsilon(1e-7));
    }
  }
}

TEST_CASE("positive scaling preserves the attainment projector") {
  Rng rng(9);
  const Mat t = rng.matrix(4, 4, Field::Complex);
  const AttainmentSubspace a1 = attainment_subspace(t);
  const AttainmentSubspace a2 = attainment_subspace(t * Scalar{5.0, 0.0});
  CHECK(a2.norm == doctest::Approx(5.0 * a1.norm));
  const Mat p1 = a1.basis * a1.basis.adjoint();
  const Mat p2 = a2.basis * a2.basis.adjoint();
  CHECK(fro_norm(p1 - p2) < 1e-8);
}

TEST_CASE("compress basics and quadratic-form identity") {
  Rng rng(14);
  const Mat u2 = attainment_subspace(rng.matrix(4, 4, Field::Complex)).basis;
  CHECK(fro_norm(compress(Mat::identity(4, Field::Complex), u2) -
                 Mat::identity(u2.cols(), Field::Complex)) < 1e-12);

  Mat pick(3, 2, Field::Real);
  pick(0, 0) = 1.0;
  pick(2, 1) = 1.0;
  const Mat d = compress(Mat::diag({1.0, 2.0, 3.0}, Field::Real), pick);
  CHECK(d(0, 0) == Scalar{1.0, 0.0});
  CHECK(d(1, 1) == Scalar{3.0, 0.0});
  CHECK(std::abs(d(0, 1)) < 1e-15);

  const Mat m = rng.matrix(4, 4, Field::Complex);
  const Mat c = compress(m, u2);
  for (int probe = 0; probe < 100; ++probe) {
    const Vec cv = rng.unit_vector(u2.cols(), Field::Complex);
    const Vec x = u2.apply(cv);
    const Scalar lhs = dot(x, m.apply(x));
    const Scalar rhs = dot(cv, c.apply(cv));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("numerical radius worked cases") {
  const Mat shift = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}}, Field::Complex);
  CHECK(numrad_attainment(shift).w == doctest::Approx(0.5));
  CHECK(numerical_radius(shift) == doctest::Approx(0.5));

  const Mat normal = Mat::diag({Scalar{1.0, 0.0}, Scalar{0.0, 1.0}}, Field::Complex);
  CHECK(numrad_attainment(normal).w == doctest::Approx(1.0));

  Rng rng(8);
  const Mat g = rng.matrix(3, 3, Field::Complex);
  const Mat herm = (g + g.adjoint()) * Scalar{0.5, 0.0};
  CHECK(numrad_attainment(herm).w == doctest::Approx(op_norm(herm)));
}

TEST_CASE("numerical radius errors") {
  CHECK_THROWS_AS(numrad_attainment(Mat::identity(2, Field::Real)), Error);
  CHECK_THROWS_AS(numrad_attainment(Mat(3, 2, Field::Complex)), Error);
  CHECK_THROWS_AS(numrad_attainment(Mat(2, 2, Field::Complex)), Error);
  CHECK(numerical_radius(Mat(2, 2, Field::Complex)) == 0.0);
}

TEST_CASE("numerical radius norm equivalence and sample validity") {
  Rng rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    const Mat t = rng.matrix(2 + trial % 3, 2 + trial % 3, Field::Complex);
    const NumRadAttainment att = numrad_attainment(t);
    const double on = op_norm(t);
    CHECK(att.w <= on * (1.0 + 1e-9));
    CHECK(on <= 2.0 * att.w * (1.0 + 1e-9));
    CHECK(!att.samples.empty());
    for (const auto& s : att.samples) {
      CHECK(std::abs(vec_norm(s.x) - 1.0) < 1e-10);
      CHECK(std::abs(std::abs(dot(s.x, t.apply(s.x))) - att.w) <= kEpsW * att.w);
    }
  }
}
