#ifndef NHF_INDUCED_HPP
#define NHF_INDUCED_HPP

#include "nhf/nspace.hpp"
#include "nhf/types.hpp"

namespace nhf {

/// Coordinates of an element of the induced space in its complement basis.
using InducedVector = Vector;

/// The Hilbert space H_F carried by the semi-inner product
/// <x, y>_F = <x, y | a_2, ..., a_n>. Its kernel is L_F = span(a_2..a_n); the
/// quotient is realized on the ambient-orthogonal complement M_F, whose basis
/// is orthonormal for <.,.>_F. In finite dimension M_F is already complete.
///
/// Immutable once built.
class InducedSpace {
 public:
  /// Orthonormalizes a basis of span(F)^perp with respect to <.,.>_F.
  /// Throws StructuralError when F does not fit the space or is
  /// ill-conditioned (sigma_min < 1e-12 sigma_max).
  static InducedSpace build(const AmbientSpace& ambient, const FixedTuple& fixed);

  /// Rebuilds a space from a stored basis (bit-exact deserialization). The
  /// basis is validated against the invariants instead of being recomputed.
  static InducedSpace from_basis(const AmbientSpace& ambient, const FixedTuple& fixed,
                                 Matrix basis, double tol = tol::check);

  const AmbientSpace& ambient() const { return ambient_; }
  const FixedTuple& fixed() const { return fixed_; }
  Field field() const { return ambient_.field; }
  /// m = ambient dimension - (n - 1).
  Eigen::Index dimension() const { return basis_.cols(); }

  /// Columns: <.,.>_F-orthonormal basis of M_F (ambient dim x m).
  const Matrix& basis() const { return basis_; }
  /// Linear map x -> project(x) (m x ambient dim). Row k evaluates
  /// <x, b_k>_F, so it annihilates L_F.
  const Matrix& projector() const { return projector_; }

  InducedVector project(const Vector& x) const;
  Vector embed(const InducedVector& v) const;

  /// <x, y>_F evaluated directly as an n-inner product.
  Scalar inner(const Vector& x, const Vector& y) const;
  /// ||x, a_2, ..., a_n||.
  double norm(const Vector& x) const;

  /// Maximum entrywise defect of the basis invariants: F-Gram minus identity
  /// and ambient overlap with the fixed vectors.
  double basis_defect() const;

 private:
  InducedSpace(AmbientSpace ambient, FixedTuple fixed, Matrix basis);

  AmbientSpace ambient_;
  FixedTuple fixed_;
  Matrix basis_;
  Matrix projector_;
};

inline InducedSpace build_induced_space(const AmbientSpace& ambient, const FixedTuple& fixed) {
  return InducedSpace::build(ambient, fixed);
}

}  // namespace nhf

#endif  // NHF_INDUCED_HPP
