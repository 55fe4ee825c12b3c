#include "nhf/atomic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nhf/linalg.hpp"
#include "nhf/random.hpp"

namespace nhf {

Subspace::Subspace(Matrix basis, double tol) : basis_(std::move(basis)) {
  if (basis_.cols() > basis_.rows())
    throw StructuralError("subspace basis has more columns than the space dimension");
  const Eigen::Index k = basis_.cols();
  const double defect = k == 0 ? 0.0
                               : (basis_.adjoint() * basis_ - Matrix::Identity(k, k))
                                     .cwiseAbs()
                                     .maxCoeff();
  if (!(defect <= tol))
    throw StructuralError("subspace basis is not orthonormal (defect " + std::to_string(defect) +
                          ")");
}

Subspace Subspace::spanned_by(const Matrix& vectors) {
  return Subspace(linalg::range_factor(vectors).left);
}

Subspace Subspace::zero(Eigen::Index ambient_dimension) {
  return Subspace(Matrix(ambient_dimension, 0));
}

Vector BLinearFunctionalFamily::evaluate(const InducedVector& f) const {
  if (f.size() != dual_.rows())
    throw StructuralError("functional argument has wrong dimension");
  return dual_.adjoint() * f;
}

double BLinearFunctionalFamily::bound() const {
  if (dual_.cols() == 0) return 0.0;
  return dual_.colwise().norm().maxCoeff();
}

// ---------------------------------------------------------------------------

namespace {

void require_operator(const Matrix& t, const Operator& k) {
  if (k.rows() != t.rows() || k.cols() != t.rows())
    throw StructuralError("operator is " + std::to_string(k.rows()) + " x " +
                          std::to_string(k.cols()) + ", expected " + std::to_string(t.rows()) +
                          " x " + std::to_string(t.rows()));
}

bool range_contains(const linalg::RangeFactor& range, const Matrix& x) {
  const double xn = linalg::spectral_norm(x);
  if (xn == 0.0) return true;
  return linalg::outside_residual(range.left, x) <= tol::rank_cutoff * xn;
}

}  // namespace

std::optional<AtomicCertificate> is_atomic_system(const Matrix& t, const Operator& k) {
  require_operator(t, k);
  const auto range = linalg::range_factor(t);
  if (!range_contains(range, k)) return std::nullopt;
  AtomicCertificate cert;
  cert.bessel_bound = range.largest * range.largest;
  cert.constant = linalg::spectral_norm(linalg::pseudo_inverse(t) * k);
  if (cert.constant == 0.0) cert.notes = "K = 0: every positive constant is valid";
  return cert;
}

std::optional<AtomicCertificate> is_atomic_system(const VectorSequence& seq, const Operator& k) {
  auto cert = is_atomic_system(seq.synthesis_matrix(), k);
  if (cert) cert->dual = kframe_dual(seq, k);
  return cert;
}

CoefficientSequence atomic_decompose(const Matrix& t, const Operator& k, const InducedVector& f) {
  require_operator(t, k);
  if (f.size() != t.rows()) throw StructuralError("decomposed vector has wrong dimension");
  const Vector target = k * f;
  const Vector c = linalg::pseudo_inverse(t) * target;
  if (!is_atomic_system(t, k)) {
    const double residual = (t * c - target).norm();
    throw RangeError("range(K) is not contained in the synthesis range; residual for this vector " +
                         std::to_string(residual),
                     residual);
  }
  return c;
}

CoefficientSequence atomic_decompose(const VectorSequence& seq, const Operator& k,
                                     const InducedVector& f) {
  return atomic_decompose(seq.synthesis_matrix(), k, f);
}

Matrix kframe_dual_matrix(const Matrix& t, const Operator& k) {
  require_operator(t, k);
  const auto range = linalg::range_factor(t);
  if (!range_contains(range, k)) {
    const double residual = linalg::outside_residual(range.left, k);
    throw RangeError("range(K) is not contained in the synthesis range (residual " +
                         std::to_string(residual) + ")",
                     residual);
  }
  return k.adjoint() * linalg::pseudo_inverse(t).adjoint();
}

VectorSequence kframe_dual(const VectorSequence& seq, const Operator& k) {
  return VectorSequence::from_induced(seq.space_ptr(),
                                      kframe_dual_matrix(seq.synthesis_matrix(), k));
}

BLinearFunctionalFamily local_atom_dual(const Matrix& t, const Subspace& y) {
  if (y.space_dimension() != t.rows())
    throw StructuralError("subspace lives in dimension " + std::to_string(y.space_dimension()) +
                          ", induced dimension is " + std::to_string(t.rows()));
  const auto range = linalg::range_factor(t);
  if (y.dimension() > 0) {
    const double residual = linalg::outside_residual(range.left, y.basis());
    if (residual > tol::rank_cutoff)
      throw RangeError("Y is not contained in the synthesis range (residual " +
                           std::to_string(residual) + ")",
                       residual);
  }
  return BLinearFunctionalFamily(y.projector() * linalg::pseudo_inverse(t).adjoint());
}

BLinearFunctionalFamily local_atom_dual(const VectorSequence& seq, const Subspace& y) {
  return local_atom_dual(seq.synthesis_matrix(), y);
}

double local_atom_constant(const Subspace& y, const BLinearFunctionalFamily& family) {
  if (y.dimension() == 0) return 0.0;
  const Matrix restricted = family.dual_vectors().adjoint() * y.basis();
  const double s = linalg::spectral_norm(restricted);
  return s * s;
}

double frame_lower_bound_on(const Matrix& t, const Subspace& y) {
  if (y.dimension() == 0) return 0.0;
  const Matrix restricted = y.basis().adjoint() * frame_operator(t) * y.basis();
  return std::max(0.0, linalg::hermitian_eigen(restricted).values(0));
}

Report verify_local_atoms(const Matrix& t, const Subspace& y,
                          const BLinearFunctionalFamily& family, int trials, std::uint64_t seed,
                          double tol, Field field) {
  if (trials < 1) throw StructuralError("trials must be at least 1");
  if (family.count() != t.cols() || family.dual_vectors().rows() != t.rows() ||
      y.space_dimension() != t.rows())
    throw StructuralError("local-atom family, subspace and sequence shapes disagree");

  const Eigen::Index m = t.rows();
  const Eigen::Index k = y.dimension();
  const double c = local_atom_constant(y, family);
  const double bound = family.bound();
  const Matrix& g = family.dual_vectors();

  WorstCase quadratic, reconstruction, bounded;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Vector any = rng.unit_vector(m, field);
    const Vector values = g.adjoint() * any;
    bounded.observe(std::max(0.0, values.cwiseAbs().maxCoeff() - bound) / std::max(bound, 1e-300),
                    i);
    if (k == 0) continue;
    const Vector f = y.basis() * rng.unit_vector(k, field);
    const Vector coeffs = g.adjoint() * f;
    const double energy = coeffs.squaredNorm();
    quadratic.observe(std::max(0.0, energy - c) / std::max(c, 1e-300), i);
    reconstruction.observe((t * coeffs - f).norm(), i);
  }

  Report report("local atoms");
  report.add("functionals_bounded", bounded.value(), tol, bounded.witness());
  report.add("condition_I_quadratic_bound", quadratic.value(), tol, quadratic.witness());
  report.add("condition_II_reconstruction", reconstruction.value(), tol, reconstruction.witness());

  double lower_violation = 0.0;
  std::ostringstream witness;
  if (k > 0) {
    const double lower = frame_lower_bound_on(t, y);
    witness << "frame lower bound on Y " << lower << ", 1/C " << (c > 0 ? 1.0 / c : 0.0);
    lower_violation = c > 0.0 ? std::max(0.0, 1.0 / c - lower) : 1.0;
  }
  report.add("frame_lower_bound_at_least_inverse_C", lower_violation, tol, witness.str());
  return report;
}

Report verify_local_atoms(const VectorSequence& seq, const Subspace& y,
                          const BLinearFunctionalFamily& family, int trials, std::uint64_t seed,
                          double tol) {
  return verify_local_atoms(seq.synthesis_matrix(), y, family, trials, seed, tol,
                            seq.space().field());
}

}  // namespace nhf
