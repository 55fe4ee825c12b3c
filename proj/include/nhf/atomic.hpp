#ifndef NHF_ATOMIC_HPP
#define NHF_ATOMIC_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nhf/frames.hpp"

namespace nhf {

/// Closed subspace Y of the induced space, stored by an orthonormal basis.
class Subspace {
 public:
  /// `basis` columns must be orthonormal to 1e-9 (m x k, k <= m).
  explicit Subspace(Matrix basis, double tol = tol::check);
  /// Orthonormalizes the span of arbitrary columns (rank by the global cutoff).
  static Subspace spanned_by(const Matrix& vectors);
  static Subspace zero(Eigen::Index ambient_dimension);

  Eigen::Index space_dimension() const { return basis_.rows(); }
  Eigen::Index dimension() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  Matrix basis_;
};

/// Bounded b-linear functionals T_i(f, a_2, ..., a_n) = <f, g_i>_F, kept as
/// their Riesz vectors g_i (columns, induced coordinates).
class BLinearFunctionalFamily {
 public:
  explicit BLinearFunctionalFamily(Matrix dual_vectors) : dual_(std::move(dual_vectors)) {}

  const Matrix& dual_vectors() const { return dual_; }
  Eigen::Index count() const { return dual_.cols(); }
  /// (T_1(f), ..., T_N(f)).
  Vector evaluate(const InducedVector& f) const;
  /// M = max_i ||g_i||, a bound for every |T_i(f)| / ||f||.
  double bound() const;

 private:
  Matrix dual_;
};

struct AtomicCertificate {
  /// ||T^+ K||: the smallest C with ||c|| <= C ||f|| for the minimal-norm
  /// coefficient map. Zero exactly when K = 0.
  double constant = 0.0;
  /// Upper frame bound of the sequence (finite sequences are always Bessel).
  double bessel_bound = 0.0;
  std::optional<VectorSequence> dual;
  std::string notes;
};

/// Present iff range(K) lies in range(T) within the rank cutoff.
std::optional<AtomicCertificate> is_atomic_system(const Matrix& synthesis, const Operator& k);
std::optional<AtomicCertificate> is_atomic_system(const VectorSequence& seq, const Operator& k);

/// Minimal-norm c with T c = K f. Throws RangeError when K f is unreachable.
CoefficientSequence atomic_decompose(const Matrix& synthesis, const Operator& k,
                                     const InducedVector& f);
CoefficientSequence atomic_decompose(const VectorSequence& seq, const Operator& k,
                                     const InducedVector& f);

/// Columns g_i = K* (T^+)* e_i, so that K* f = sum <f, f_i> g_i and
/// K f = sum <f, g_i> f_i.
Matrix kframe_dual_matrix(const Matrix& synthesis, const Operator& k);
VectorSequence kframe_dual(const VectorSequence& seq, const Operator& k);

/// Riesz vectors g_i = (T^+ P_Y)* e_i, giving P_Y f = sum <f, g_i> f_i.
/// Throws RangeError when Y is not inside range(T).
BLinearFunctionalFamily local_atom_dual(const Matrix& synthesis, const Subspace& y);
BLinearFunctionalFamily local_atom_dual(const VectorSequence& seq, const Subspace& y);

/// Checks the two local-atom conditions on Y (the quadratic bound with its
/// measured constant C, and reconstruction), boundedness of each functional,
/// and the consequence that the sequence is a frame for Y with lower bound at
/// least 1/C.
Report verify_local_atoms(const Matrix& synthesis, const Subspace& y,
                          const BLinearFunctionalFamily& family, int trials, std::uint64_t seed,
                          double tol, Field field);
Report verify_local_atoms(const VectorSequence& seq, const Subspace& y,
                          const BLinearFunctionalFamily& family, int trials, std::uint64_t seed,
                          double tol);

/// Measured condition-(I) constant on Y: lambda_max of Y* G G* Y.
double local_atom_constant(const Subspace& y, const BLinearFunctionalFamily& family);
/// Optimal lower frame bound of the sequence restricted to Y.
double frame_lower_bound_on(const Matrix& synthesis, const Subspace& y);

}  // namespace nhf

#endif  // NHF_ATOMIC_HPP
