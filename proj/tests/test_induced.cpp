#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nhf/induced.hpp"
#include "oracles.hpp"

using namespace nhf;
using oracle::unit;
using oracle::vec;

TEST_CASE("a = e3 in R^3 gives the plane with the plain dot product") {
  const auto space = oracle::plane();
  CHECK(space->dimension() == 2);
  // Basis columns are ambient-orthogonal to e3 and lie in span{e1, e2}.
  CHECK(space->basis().row(2).norm() < 1e-15);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Vector x = rng.gaussian_vector(3, Field::real);
    Vector y = rng.gaussian_vector(3, Field::real);
    x(2) = 0.0;
    y(2) = 0.0;
    CHECK(std::abs(space->inner(x, y) - oracle::dot(x, y)) < 1e-12);
  }
}

TEST_CASE("dimension count for R^4 with n = 3") {
  const InducedSpace s =
      InducedSpace::build(AmbientSpace(4, Field::real), FixedTuple({unit(4, 2), unit(4, 3)}));
  CHECK(s.dimension() == 2);
}

TEST_CASE("basis is orthonormal under the induced form and matches a Gram-Schmidt oracle") {
  const Vector a = vec({0, 1, 1}) / std::sqrt(2.0);
  const InducedSpace s = InducedSpace::build(AmbientSpace(3, Field::real), FixedTuple({a}));
  const Matrix& b = s.basis();
  REQUIRE(b.cols() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(oracle::n_inner2(b.col(i), b.col(j), a) - (i == j ? 1.0 : 0.0)) < 1e-9);

  // Oracle: classical Gram-Schmidt of e1, e2 - <e2,a>a under the n = 2 form.
  std::vector<Vector> o;
  for (const Vector& c : {unit(3, 0), Vector(unit(3, 1) - oracle::dot(unit(3, 1), a) * a)}) {
    Vector r = c;
    for (const auto& q : o) r -= oracle::n_inner2(r, q, a) * q;
    o.push_back(r / std::sqrt(oracle::n_inner2(r, r, a).real()));
  }
  // Both bases span the same space: the change of basis is unitary.
  Matrix w(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w(i, j) = oracle::n_inner2(b.col(i), o[static_cast<std::size_t>(j)], a);
  CHECK((w.adjoint() * w - Matrix::Identity(2, 2)).norm() < 1e-9);
  CHECK(s.basis_defect() < 1e-12);
}

TEST_CASE("projection kills the fixed tuple and reads off coordinates") {
  const auto s = oracle::random_space(5, 3, Field::real, 21);
  for (const auto& a : s->fixed().vectors()) CHECK(s->project(a).norm() < 1e-12);
  for (Eigen::Index k = 0; k < s->dimension(); ++k) {
    const Vector coords = s->project(s->basis().col(k));
    CHECK((coords - Vector::Unit(s->dimension(), k)).norm() < 1e-12);
  }
  CHECK(s->embed(Vector::Zero(s->dimension())).norm() == 0.0);
}

TEST_CASE("embed then project is the identity") {
  for (Field field : {Field::real, Field::complex}) {
    const auto s = oracle::random_space(6, 3, field, 4);
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      const Vector v = rng.gaussian_vector(s->dimension(), field);
      CHECK((s->project(s->embed(v)) - v).norm() <= 1e-12 * std::max(1.0, v.norm()));
    }
  }
}

TEST_CASE("identification with coordinates is an isometry") {
  for (Field field : {Field::real, Field::complex}) {
    const auto s = oracle::random_space(5, 3, field, 8);
    const auto& rest = s->fixed().vectors();
    Rng rng(30);
    for (int t = 0; t < 100; ++t) {
      const Vector x = rng.gaussian_vector(5, field);
      const Vector y = rng.gaussian_vector(5, field);
      const Scalar ambient = oracle::n_inner3(x, y, rest[0], rest[1]);
      const Scalar coords = oracle::dot(s->project(x), s->project(y));
      CHECK(std::abs(ambient - coords) <= 1e-9 * std::max(1.0, x.norm() * y.norm()));
      // Three readings of the induced norm agree.
      const double n1 = s->norm(x);
      const double n2 = n_norm(x, s->fixed());
      const double n3 = s->project(x).norm();
      CHECK(std::abs(n1 - n2) <= 1e-9 * std::max(1.0, n1));
      CHECK(std::abs(n1 - n3) <= 1e-9 * std::max(1.0, n1));
    }
  }
}

TEST_CASE("span of the fixed tuple is the kernel of the induced form") {
  const auto s = oracle::random_space(5, 3, Field::complex, 2);
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const Vector x = rng.scalar(Field::complex) * s->fixed().vectors()[0] +
                     rng.scalar(Field::complex) * s->fixed().vectors()[1];
    const Vector y = rng.gaussian_vector(5, Field::complex);
    CHECK(std::abs(s->inner(x, y)) <= 1e-9 * x.norm() * y.norm() * 10.0);
  }
}

TEST_CASE("stored bases are validated on reload") {
  const auto s = oracle::random_space(4, 2, Field::real, 1);
  const InducedSpace back = InducedSpace::from_basis(s->ambient(), s->fixed(), s->basis());
  CHECK(back.basis() == s->basis());
  CHECK(back.projector() == s->projector());
  CHECK_THROWS_AS(InducedSpace::from_basis(s->ambient(), s->fixed(), 2.0 * s->basis()),
                  StructuralError);
  CHECK_THROWS_AS(InducedSpace::from_basis(s->ambient(), s->fixed(), s->basis().leftCols(1)),
                  StructuralError);
}

TEST_CASE("structural mismatches are rejected") {
  CHECK_THROWS_AS(InducedSpace::build(AmbientSpace(4, Field::real), FixedTuple({unit(3, 0)})),
                  StructuralError);
  CHECK_THROWS_AS(InducedSpace::build(AmbientSpace(2, Field::real),
                                      FixedTuple({unit(2, 0), unit(2, 1)})),
                  StructuralError);
  const auto s = oracle::plane();
  CHECK_THROWS_AS(s->project(unit(4, 0)), StructuralError);
  CHECK_THROWS_AS(s->embed(unit(3, 0)), StructuralError);
}
