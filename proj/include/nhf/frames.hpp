#ifndef NHF_FRAMES_HPP
#define NHF_FRAMES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "nhf/induced.hpp"
#include "nhf/report.hpp"
#include "nhf/types.hpp"

namespace nhf {

/// Bounded operator on the induced space, acting on coordinates (m x m).
using Operator = Matrix;
/// Finite coefficient sequence {c_i}.
using CoefficientSequence = Vector;

/// A finite sequence {f_i} of ambient vectors together with the induced space
/// it is read in. The projected elements are cached as the columns of the
/// synthesis matrix T (m x N).
class VectorSequence {
 public:
  VectorSequence(std::shared_ptr<const InducedSpace> space, std::vector<Vector> elements);

  /// Sequence whose ambient elements are embed(column) for each column of
  /// `coordinates` (m x N).
  static VectorSequence from_induced(std::shared_ptr<const InducedSpace> space,
                                     const Matrix& coordinates);

  const InducedSpace& space() const { return *space_; }
  const std::shared_ptr<const InducedSpace>& space_ptr() const { return space_; }
  Eigen::Index count() const { return static_cast<Eigen::Index>(elements_.size()); }
  const std::vector<Vector>& elements() const { return elements_; }
  const Matrix& synthesis_matrix() const { return synthesis_; }

  /// Sequence with one more element.
  VectorSequence appended(const Vector& element) const;
  /// Every element multiplied by t.
  VectorSequence scaled(Scalar t) const;

 private:
  std::shared_ptr<const InducedSpace> space_;
  std::vector<Vector> elements_;
  Matrix synthesis_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Optimal bounds with the unit vectors that attain them. For K-frames the
/// lower witness attains ||T* f||^2 = lower * ||K* f||^2.
struct BoundsResult {
  FrameBounds bounds;
  Vector witness_lower;
  Vector witness_upper;
  bool range_condition = true;
};

// Matrix-level routines take the synthesis matrix T directly, so they also
// serve the assembled Kronecker space.

/// i-th entry is <f, T e_i>.
Vector analysis(const Matrix& synthesis, const InducedVector& f);
InducedVector synthesis(const Matrix& synthesis, const CoefficientSequence& c);
Matrix frame_operator(const Matrix& synthesis);
BoundsResult frame_bounds(const Matrix& synthesis);
/// Largest A with S >= A K K*, together with B = lambda_max(S). Absent when
/// range(K) is not contained in range(T) (relative residual above the rank
/// cutoff). For K = 0 every A works and the lower bound is +infinity.
std::optional<BoundsResult> kframe_bounds(const Matrix& synthesis, const Operator& k);

Vector analysis(const VectorSequence& seq, const InducedVector& f);
InducedVector synthesis(const VectorSequence& seq, const CoefficientSequence& c);
Matrix frame_operator(const VectorSequence& seq);
BoundsResult frame_bounds(const VectorSequence& seq);
std::optional<BoundsResult> kframe_bounds(const VectorSequence& seq, const Operator& k);

/// Relative defect of range(K) against range(T): ||(I - P_T) K|| / ||K||.
double range_defect(const Matrix& synthesis, const Operator& k);

/// Samples unit vectors f (plus the extreme eigenvectors of the frame
/// operator) and reports the worst relative violation of
///   A ||K* f||^2 <= sum |<f, f_i>|^2 <= B ||f||^2
/// with K = identity when absent.
Report verify_frame_inequality(const Matrix& synthesis, const std::optional<Operator>& k,
                               const FrameBounds& bounds, int trials, std::uint64_t seed,
                               double tol, Field field);
Report verify_frame_inequality(const VectorSequence& seq, const std::optional<Operator>& k,
                               const FrameBounds& bounds, int trials, std::uint64_t seed,
                               double tol);

}  // namespace nhf

#endif  // NHF_FRAMES_HPP
