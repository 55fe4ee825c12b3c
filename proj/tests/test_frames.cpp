#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nhf/frames.hpp"
#include "oracles.hpp"

using namespace nhf;
using oracle::vec;

namespace {

Matrix coords(std::initializer_list<std::initializer_list<double>> cols) {
  Matrix m(2, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index j = 0;
  for (const auto& c : cols) m.col(j++) = vec(c);
  return m;
}

Matrix diag(std::initializer_list<double> d) { return vec(d).asDiagonal(); }

// Random sequence of `count` ambient vectors in a random induced space.
VectorSequence random_sequence(std::uint64_t seed, int d, int n, int count, Field field) {
  const auto space = oracle::random_space(d, n, field, seed);
  Rng rng = Rng::stream(seed, 99);
  std::vector<Vector> elements;
  for (int i = 0; i < count; ++i) elements.push_back(rng.gaussian_vector(d, field));
  return VectorSequence(space, elements);
}

}  // namespace

TEST_CASE("analysis and synthesis on the coordinate basis") {
  const auto plane = oracle::plane();
  const VectorSequence onb = oracle::sequence(plane, Matrix::Identity(2, 2));
  CHECK((analysis(onb, vec({1, 0})) - vec({1, 0})).norm() < 1e-15);
  CHECK(analysis(onb, Vector::Zero(2)).norm() == 0.0);
  CHECK((synthesis(onb, vec({1, 0})) - plane->project(onb.elements()[0])).norm() < 1e-15);
  CHECK(synthesis(onb, Vector::Zero(2)).norm() == 0.0);
}

TEST_CASE("analysis agrees with n-inner products against the fixed tuple") {
  const VectorSequence seq = random_sequence(3, 5, 3, 6, Field::complex);
  const InducedSpace& s = seq.space();
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Vector f = rng.gaussian_vector(s.dimension(), Field::complex);
    const Vector a = analysis(seq, f);
    const auto& rest = s.fixed().vectors();
    for (Eigen::Index i = 0; i < seq.count(); ++i) {
      const Scalar expected =
          oracle::n_inner3(s.embed(f), seq.elements()[static_cast<std::size_t>(i)], rest[0], rest[1]);
      CHECK(std::abs(a(i) - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("synthesis is the adjoint of analysis") {
  const VectorSequence seq = random_sequence(4, 6, 2, 8, Field::complex);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Vector c = rng.gaussian_vector(seq.count(), Field::complex);
    const Vector f = rng.gaussian_vector(seq.space().dimension(), Field::complex);
    const Scalar lhs = oracle::dot(synthesis(seq, c), f);
    const Scalar rhs = oracle::dot(c, analysis(seq, f));
    CHECK(std::abs(lhs - rhs) < 1e-9 * c.norm() * f.norm());
  }
}

TEST_CASE("frame operator examples") {
  const auto plane = oracle::plane();
  CHECK((frame_operator(oracle::sequence(plane, Matrix::Identity(2, 2))) - Matrix::Identity(2, 2))
            .norm() < 1e-15);
  const VectorSequence e1e2e1 = oracle::sequence(plane, coords({{1, 0}, {0, 1}, {1, 0}}));
  CHECK((frame_operator(e1e2e1) - diag({2, 1})).norm() < 1e-15);

  const VectorSequence seq = random_sequence(5, 5, 2, 7, Field::real);
  const Matrix& t = seq.synthesis_matrix();
  CHECK((frame_operator(seq) - t * t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("frame bound examples") {
  const auto plane = oracle::plane();
  const BoundsResult onb = frame_bounds(oracle::sequence(plane, Matrix::Identity(2, 2)));
  CHECK(onb.bounds.lower == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(onb.bounds.upper == doctest::Approx(1.0).epsilon(1e-15));
  const BoundsResult b = frame_bounds(oracle::sequence(plane, coords({{1, 0}, {0, 1}, {1, 0}})));
  CHECK(b.bounds.lower == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.bounds.upper == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("frame bounds match the spectrum and sampled Rayleigh quotients") {
  for (int t = 0; t < 30; ++t) {
    const Field field = t % 2 ? Field::complex : Field::real;
    const VectorSequence seq = random_sequence(100 + t, 6, 3, 7, field);
    const BoundsResult b = frame_bounds(seq);
    const auto ev = oracle::eigenvalues(seq.synthesis_matrix() * seq.synthesis_matrix().adjoint());
    CHECK(std::abs(b.bounds.lower - ev.front()) < 1e-9 * ev.back());
    CHECK(std::abs(b.bounds.upper - ev.back()) < 1e-9 * ev.back());
    Rng rng(static_cast<std::uint64_t>(t));
    for (int k = 0; k < 100; ++k) {
      const Vector f = rng.unit_vector(seq.space().dimension(), field);
      const double q = analysis(seq, f).squaredNorm();
      CHECK(q >= b.bounds.lower - 1e-9 * b.bounds.upper);
      CHECK(q <= b.bounds.upper * (1.0 + 1e-9));
    }
    // Witnesses attain the bounds.
    CHECK(std::abs(analysis(seq, b.witness_lower).squaredNorm() - b.bounds.lower) < 1e-6);
    CHECK(std::abs(analysis(seq, b.witness_upper).squaredNorm() - b.bounds.upper) < 1e-6);
  }
}

TEST_CASE("K-frame bound examples") {
  const auto plane = oracle::plane();
  const VectorSequence onb = oracle::sequence(plane, Matrix::Identity(2, 2));
  const auto same = kframe_bounds(onb, Matrix::Identity(2, 2));
  REQUIRE(same);
  CHECK(same->bounds.lower == doctest::Approx(1.0));
  CHECK(same->bounds.upper == doctest::Approx(1.0));

  const auto proj = kframe_bounds(onb, diag({1, 0}));
  REQUIRE(proj);
  CHECK(proj->bounds.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj->bounds.upper == doctest::Approx(1.0).epsilon(1e-12));

  // K-frame that is not a frame.
  const VectorSequence line = oracle::sequence(plane, coords({{1, 0}}));
  CHECK(frame_bounds(line).bounds.lower == doctest::Approx(0.0));
  const auto sep = kframe_bounds(line, diag({1, 0}));
  REQUIRE(sep);
  CHECK(sep->bounds.lower > 0.0);
  CHECK(verify_frame_inequality(line, Operator(diag({1, 0})), sep->bounds, 200, 4, 1e-9).pass());
  CHECK_FALSE(kframe_bounds(line, Matrix::Identity(2, 2)).has_value());

  const auto zero = kframe_bounds(onb, Matrix::Zero(2, 2));
  REQUIRE(zero);
  CHECK(std::isinf(zero->bounds.lower));
}

TEST_CASE("K-frame lower bound equals the bisection oracle") {
  for (int t = 0; t < 30; ++t) {
    const Field field = t % 3 ? Field::real : Field::complex;
    const VectorSequence seq = random_sequence(200 + t, 5, 2, 3, field);
    const Matrix& tm = seq.synthesis_matrix();
    Rng rng(static_cast<std::uint64_t>(t));
    const Matrix k = tm * rng.gaussian_matrix(tm.cols(), tm.rows(), field);
    const auto b = kframe_bounds(seq, k);
    REQUIRE(b);
    const double expected = oracle::kframe_lower(tm, k);
    CHECK(std::abs(b->bounds.lower - expected) <= 1e-6 * std::max(1.0, expected));
  }
}

TEST_CASE("the inequality verifier flags false bounds") {
  const VectorSequence seq = random_sequence(7, 4, 2, 5, Field::real);
  const FrameBounds b = frame_bounds(seq).bounds;
  CHECK(verify_frame_inequality(seq, std::nullopt, b, 100, 1, 1e-9).pass());
  const Report bad =
      verify_frame_inequality(seq, std::nullopt, FrameBounds{b.upper + 1, b.upper + 2}, 100, 1, 1e-9);
  CHECK_FALSE(bad.pass());
  REQUIRE(bad.find("lower"));
  CHECK_FALSE(bad.find("lower")->pass);
  CHECK(bad.find("upper")->pass);
}

TEST_CASE("appending never lowers the upper bound or the K-frame lower bound") {
  for (int t = 0; t < 30; ++t) {
    const VectorSequence seq = random_sequence(300 + t, 5, 2, 4, Field::real);
    const Matrix& tm = seq.synthesis_matrix();
    Rng rng(static_cast<std::uint64_t>(t));
    const Matrix k = tm * rng.gaussian_matrix(tm.cols(), tm.rows(), Field::real);
    const VectorSequence more = seq.appended(rng.gaussian_vector(5, Field::real));
    CHECK(frame_bounds(more).bounds.upper >= frame_bounds(seq).bounds.upper * (1 - 1e-12));
    CHECK(kframe_bounds(more, k)->bounds.lower >=
          kframe_bounds(seq, k)->bounds.lower * (1 - 1e-9));
  }
}

TEST_CASE("scaling the sequence scales both bounds by |t|^2") {
  const VectorSequence seq = random_sequence(9, 5, 3, 6, Field::complex);
  const Scalar t(1.5, -0.5);
  const FrameBounds a = frame_bounds(seq).bounds;
  const FrameBounds b = frame_bounds(seq.scaled(t)).bounds;
  CHECK(b.lower == doctest::Approx(std::norm(t) * a.lower).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(std::norm(t) * a.upper).epsilon(1e-12));
}

TEST_CASE("an invertible K turns a K-frame bound into a frame bound") {
  for (int t = 0; t < 20; ++t) {
    const VectorSequence seq = random_sequence(400 + t, 5, 2, 6, Field::real);
    Rng rng(static_cast<std::uint64_t>(t));
    const Matrix k = rng.gaussian_matrix(4, 4, Field::real);
    const auto kb = kframe_bounds(seq, k);
    REQUIRE(kb);
    const double smin = Eigen::JacobiSVD<Matrix>(k.adjoint()).singularValues()(3);
    CHECK(frame_bounds(seq).bounds.lower >= kb->bounds.lower * smin * smin * (1 - 1e-9));
  }
}

TEST_CASE("shape errors") {
  const auto plane = oracle::plane();
  CHECK_THROWS_AS(VectorSequence(plane, {vec({1, 0})}), StructuralError);
  CHECK_THROWS_AS(VectorSequence(plane, {}), StructuralError);
  const VectorSequence onb = oracle::sequence(plane, Matrix::Identity(2, 2));
  CHECK_THROWS_AS(kframe_bounds(onb, Matrix::Identity(3, 3)), StructuralError);
}
