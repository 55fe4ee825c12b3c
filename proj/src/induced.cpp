#include "nhf/induced.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace nhf {

namespace {

void require_fit(const AmbientSpace& ambient, const FixedTuple& fixed) {
  if (fixed.ambient_dimension() != ambient.dimension)
    throw StructuralError("fixed tuple lives in dimension " +
                          std::to_string(fixed.ambient_dimension()) + ", ambient dimension is " +
                          std::to_string(ambient.dimension));
  if (ambient.dimension < fixed.arity())
    throw StructuralError("ambient dimension " + std::to_string(ambient.dimension) +
                          " is smaller than n = " + std::to_string(fixed.arity()));
}

}  // namespace

InducedSpace::InducedSpace(AmbientSpace ambient, FixedTuple fixed, Matrix basis)
    : ambient_(ambient), fixed_(std::move(fixed)), basis_(std::move(basis)) {
  const Eigen::Index d = ambient_.dimension;
  const Eigen::Index m = basis_.cols();
  projector_.resize(m, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Vector e = Vector::Unit(d, j);
    for (Eigen::Index k = 0; k < m; ++k) projector_(k, j) = n_inner(e, basis_.col(k), fixed_);
  }
}

InducedSpace InducedSpace::build(const AmbientSpace& ambient, const FixedTuple& fixed) {
  require_fit(ambient, fixed);
  if (fixed.conditioning() < tol::conditioning)
    throw StructuralError("fixed tuple is ill-conditioned (singular value ratio " +
                          std::to_string(fixed.conditioning()) + ")");

  const Eigen::Index d = ambient.dimension;
  const Eigen::Index slots = fixed.arity() - 1;
  const Eigen::Index m = d - slots;

  // Standard basis vectors pushed into the ambient-orthogonal complement of
  // L_F, so coordinate-aligned tuples give coordinate-aligned bases.
  Eigen::HouseholderQR<Matrix> qr(fixed.matrix());
  const Matrix q = qr.householderQ() * Matrix::Identity(d, slots);
  std::vector<Vector> candidates;
  for (Eigen::Index j = 0; j < d; ++j) {
    const Vector e = Vector::Unit(d, j);
    candidates.emplace_back(e - q * (q.adjoint() * e));
  }

  // Gram-Schmidt with respect to <.,.>_F, two passes per vector. The next
  // vector is the lowest-index candidate within a factor of two of the best
  // remaining residual.
  Matrix basis(d, m);
  std::vector<bool> used(candidates.size(), false);
  for (Eigen::Index k = 0; k < m; ++k) {
    std::vector<Vector> residuals(candidates.size());
    std::vector<double> norms(candidates.size(), -1.0);
    double best_norm = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      Vector r = candidates[c];
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index j = 0; j < k; ++j)
          r -= n_inner(r, basis.col(j), fixed) * basis.col(j);
      norms[c] = n_norm(r, fixed);
      best_norm = std::max(best_norm, norms[c]);
      residuals[c] = std::move(r);
    }
    if (!(best_norm > 0.0))
      throw StructuralError("complement basis degenerated during orthonormalization");
    std::size_t pick = 0;
    while (used[pick] || norms[pick] < 0.5 * best_norm) ++pick;
    used[pick] = true;
    basis.col(k) = residuals[pick] / norms[pick];
  }
  return InducedSpace(ambient, fixed, std::move(basis));
}

InducedSpace InducedSpace::from_basis(const AmbientSpace& ambient, const FixedTuple& fixed,
                                      Matrix basis, double tol) {
  require_fit(ambient, fixed);
  const Eigen::Index m = ambient.dimension - (fixed.arity() - 1);
  if (basis.rows() != ambient.dimension || basis.cols() != m)
    throw StructuralError("complement basis must be " + std::to_string(ambient.dimension) + " x " +
                          std::to_string(m) + ", got " + std::to_string(basis.rows()) + " x " +
                          std::to_string(basis.cols()));
  InducedSpace space(ambient, fixed, std::move(basis));
  const double defect = space.basis_defect();
  if (!(defect <= tol))
    throw StructuralError("stored complement basis violates its invariants (defect " +
                          std::to_string(defect) + ")");
  return space;
}

InducedVector InducedSpace::project(const Vector& x) const {
  ambient_.require(x, "projected vector");
  return projector_ * x;
}

Vector InducedSpace::embed(const InducedVector& v) const {
  if (v.size() != dimension())
    throw StructuralError("induced vector has length " + std::to_string(v.size()) +
                          ", induced dimension is " + std::to_string(dimension()));
  return basis_ * v;
}

Scalar InducedSpace::inner(const Vector& x, const Vector& y) const {
  ambient_.require(x);
  ambient_.require(y);
  return n_inner(x, y, fixed_);
}

double InducedSpace::norm(const Vector& x) const {
  ambient_.require(x);
  return n_norm(x, fixed_);
}

double InducedSpace::basis_defect() const {
  double worst = 0.0;
  const Eigen::Index m = dimension();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector bi = basis_.col(i);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Scalar g = n_inner(bi, basis_.col(j), fixed_);
      worst = std::max(worst, std::abs(g - (i == j ? Scalar(1.0) : Scalar(0.0))));
    }
    for (const auto& a : fixed_.vectors())
      worst = std::max(worst, std::abs(scalar_inner(bi, a)) / (bi.norm() * a.norm()));
  }
  return worst;
}

}  // namespace nhf
