#ifndef NHF_TENSORPROD_HPP
#define NHF_TENSORPROD_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nhf/atomic.hpp"
#include "nhf/frames.hpp"

// Kronecker realization of tensor products of induced spaces. Product-space
// coordinates and coefficient indices are i-major, j-minor: the pair (i, j)
// sits at i * N2 + j.
namespace nhf {

/// One side of a tensor instance: a sequence in its induced space plus the
/// operator K acting there.
struct FactorBundle {
  VectorSequence sequence;
  Operator k;

  const InducedSpace& space() const { return sequence.space(); }
};

/// Two factor bundles and their assembled Kronecker counterparts.
class TensorInstance {
 public:
  TensorInstance(FactorBundle left, FactorBundle right);

  const FactorBundle& left() const { return left_; }
  const FactorBundle& right() const { return right_; }
  Field field() const;

  Eigen::Index dimension() const { return synthesis_.rows(); }
  Eigen::Index count() const { return synthesis_.cols(); }
  /// T1 (x) T2: column i * N2 + j is project(f_i) (x) project(g_j).
  const Matrix& synthesis() const { return synthesis_; }
  const Matrix& frame_operator() const { return frame_operator_; }
  /// K1 (x) K2.
  const Operator& op() const { return op_; }

 private:
  FactorBundle left_;
  FactorBundle right_;
  Matrix synthesis_;
  Matrix frame_operator_;
  Operator op_;
};

Vector kron_vec(const Vector& f, const Vector& g);
Matrix kron_op(const Matrix& q, const Matrix& t);

/// Numerical check of the operator tensor identities: norm multiplicativity,
/// action on simple tensors, composition, invertibility with the inverse
/// formula, and the adjoint formula.
Report operator_tensor_props_check(const Matrix& q, const Matrix& t, int trials,
                                   std::uint64_t seed, double tol, Field field = Field::real);

struct SimpleTensor {
  Vector left;
  Vector right;
};

/// Leading rank-one pair of u reshaped to m1 x m2, absent when the second
/// singular value exceeds the separability cutoff. Throws on u = 0.
std::optional<SimpleTensor> factor_simple_tensor(const Vector& u, Eigen::Index m1,
                                                 Eigen::Index m2);

/// Scalars with other.left = A * base.left and other.right = B * base.right.
/// Both pairs must describe the same simple tensor; then A * B = 1.
struct GaugeScalars {
  Scalar a;
  Scalar b;
};
GaugeScalars simple_tensor_gauge(const SimpleTensor& base, const SimpleTensor& other);

/// Product formula <f,f'>_F <g,g'>_G and the same quantity read off the
/// assembled Kronecker coordinates.
struct TensorInner {
  Scalar product_formula;
  Scalar assembled;
};
TensorInner tensor_n_inner(const TensorInstance& inst, const Vector& f, const Vector& g,
                           const Vector& f2, const Vector& g2);

struct TensorBoundsReport {
  std::optional<BoundsResult> assembled;
  std::optional<BoundsResult> left;
  std::optional<BoundsResult> right;
  /// (A C, B D) from the factor optimal bounds, when both factors are present.
  std::optional<FrameBounds> product;
  /// "left", "right", "both" or empty.
  std::string failing_side;
  /// product lower <= assembled lower and assembled upper <= product upper.
  bool product_valid = false;
  /// Largest relative gap between assembled and product bounds.
  double product_gap = 0.0;
};
TensorBoundsReport tensor_frame_bounds(const TensorInstance& inst);

/// Factor bounds recovered from the assembled K1 (x) K2 bounds (A, B) by
/// fixing a witness on the other side:
///   A1 = A ||K2* g||^2 / sum_j |<g, g_j>|^2,  B1 = B ||g||^2 / sum_j |<g, g_j>|^2
/// and symmetrically for the right factor with a left witness f.
struct FactorizedBounds {
  FrameBounds left;
  FrameBounds right;
  InducedVector left_witness;   // f used for the right factor
  InducedVector right_witness;  // g used for the left factor
};
/// Witnesses default to the top eigenvectors of the factor frame operators.
/// Throws RangeError when the assembled sequence is not a K1 (x) K2-frame.
FactorizedBounds tensor_frame_factorize(const TensorInstance& inst,
                                        const std::optional<InducedVector>& left_witness = {},
                                        const std::optional<InducedVector>& right_witness = {});

/// Operator-level defects of the isometry hypotheses for U = T1 (x) T2.
struct IsometryDefects {
  double isometry = 0.0;     // max |U* U - I|
  double commutation = 0.0;  // max |(K1 (x) K2)* U - U (K1 (x) K2)*|
};
IsometryDefects isometry_defects(const TensorInstance& inst, const Operator& t1,
                                 const Operator& t2);

/// Instance with elements (T1 (x) T2)*(f_i (x) g_j) = T1* f_i (x) T2* g_j.
/// Throws StructuralError when a hypothesis defect exceeds tol.
TensorInstance transform_isometry(const TensorInstance& inst, const Operator& t1,
                                  const Operator& t2, double tol = tol::check);

/// Instance with elements L1 f_i (x) L2 g_j and operators L1 K1, L2 K2, so the
/// assembled operator is (L1 (x) L2)(K1 (x) K2).
struct LeftTransform {
  TensorInstance instance;
  Operator op;
};
LeftTransform transform_left(const TensorInstance& inst, const Operator& l1, const Operator& l2);

/// Samples simple tensors f (x) g (reported as "simple") and generic product
/// vectors ("generic") against A ||op* u||^2 <= sum |<u, e_ij>|^2 <= B ||u||^2.
Report verify_tensor_frame_inequality(const Matrix& synthesis, const Operator& op,
                                      const FrameBounds& bounds, Eigen::Index m1,
                                      Eigen::Index m2, int trials, std::uint64_t seed,
                                      double tol, Field field);

/// Rank-one coefficient array N1 x N2 with entries c_i d_j.
using CoefficientArray = Matrix;

struct TensorDecomposition {
  CoefficientArray coefficients;
  CoefficientSequence left;   // c, for K1 f
  CoefficientSequence right;  // d, for K2 g
  double constant = 0.0;      // C = C1 C2
  double left_constant = 0.0;
  double right_constant = 0.0;
  double residual = 0.0;  // ||sum c_i d_j (f_i (x) g_j) - (K1 (x) K2)(f (x) g)||
};
/// Throws RangeError naming the failing side.
TensorDecomposition tensor_atomic_decompose(const TensorInstance& inst, const InducedVector& f,
                                            const InducedVector& g);

struct AtomicFactorization {
  CoefficientSequence left;   // c with K1 f = sum c_i (A f_i)
  CoefficientSequence right;  // d with K2 g = sum d_j (B g_j)
  Scalar a;
  Scalar b;
  double left_residual = 0.0;
  double right_residual = 0.0;
  double left_constant = 0.0;   // C1 = C ||g|| / ||d||
  double right_constant = 0.0;  // C2 = C ||f|| / ||c||
};
/// Splits a separable array back into factor decompositions of K1 f and K2 g.
/// The leading singular pair is rescaled so that ||T1 c|| = ||K1 f||, which
/// leaves A and B unimodular. Throws StructuralError for arrays of rank > 1
/// and for a vanishing factor.
AtomicFactorization tensor_atomic_factorize(const CoefficientArray& arr,
                                            const TensorInstance& inst, const InducedVector& f,
                                            const InducedVector& g, double constant);

}  // namespace nhf

#endif  // NHF_TENSORPROD_HPP
