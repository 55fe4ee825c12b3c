#ifndef NHF_NSPACE_HPP
#define NHF_NSPACE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nhf/report.hpp"
#include "nhf/types.hpp"

namespace nhf {

/// Finite-dimensional scalar-product space hosting every ambient vector.
struct AmbientSpace {
  int dimension = 0;
  Field field = Field::real;

  AmbientSpace() = default;
  AmbientSpace(int dim, Field f);

  /// Throws StructuralError naming `what` unless v has this space's length.
  void require(const Vector& v, const char* what = "vector") const;
};

/// The frozen slots (a_2, ..., a_n) of an n-inner product. Construction
/// rejects dependent vectors; arity n is the number of vectors plus one.
class FixedTuple {
 public:
  FixedTuple() = default;
  explicit FixedTuple(std::vector<Vector> vectors);

  int arity() const { return static_cast<int>(vectors_.size()) + 1; }
  Eigen::Index ambient_dimension() const;
  const std::vector<Vector>& vectors() const { return vectors_; }
  /// Vectors as columns.
  Matrix matrix() const;
  /// sigma_min / sigma_max of matrix().
  double conditioning() const;

 private:
  std::vector<Vector> vectors_;
};

/// <x, y> = sum_k x_k conj(y_k): linear in x, conjugate-linear in y.
Scalar scalar_inner(const Vector& x, const Vector& y);

/// Gram determinant det[<v_j, v_k>] of an arbitrary list.
Scalar gram_determinant(std::span<const Vector> vectors);

/// Standard n-inner product <x, y | rest...>: determinant of the n x n matrix
/// with (1,1) entry <x,y>, first row <x,a_k>, first column <a_j,y> and
/// interior <a_j,a_k>. Evaluated through a partially pivoted LU.
Scalar n_inner(const Vector& x, const Vector& y, std::span<const Vector> rest);
Scalar n_inner(const Vector& x, const Vector& y, const FixedTuple& fixed);

/// ||x, rest...|| = sqrt(<x, x | rest...>). A radicand below
/// -tol * ||x||^2 * prod ||a||^2 raises DegeneracyError; smaller negative
/// noise is clamped to zero.
double n_norm(const Vector& x, std::span<const Vector> rest, double tol = tol::check);
double n_norm(const Vector& x, const FixedTuple& fixed, double tol = tol::check);

/// Samples random tuples and records, per axiom of the n-inner product and
/// the induced n-norm plus the Schwarz inequality and the parallelogram law,
/// the worst violation relative to the Hadamard scale of the participating
/// vectors.
Report check_axioms(const AmbientSpace& space, int n, int trials, std::uint64_t seed,
                    double tol = tol::check);

}  // namespace nhf

#endif  // NHF_NSPACE_HPP
