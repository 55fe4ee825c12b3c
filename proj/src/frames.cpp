#include "nhf/frames.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nhf/linalg.hpp"
#include "nhf/random.hpp"

namespace nhf {

VectorSequence::VectorSequence(std::shared_ptr<const InducedSpace> space,
                               std::vector<Vector> elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
  if (!space_) throw StructuralError("vector sequence needs an induced space");
  if (elements_.empty()) throw StructuralError("vector sequence must have at least one element");
  synthesis_.resize(space_->dimension(), count());
  for (Eigen::Index i = 0; i < count(); ++i) {
    const auto& f = elements_[static_cast<std::size_t>(i)];
    if (f.size() != space_->ambient().dimension)
      throw StructuralError("sequence element " + std::to_string(i) + " has length " +
                            std::to_string(f.size()) + ", ambient dimension is " +
                            std::to_string(space_->ambient().dimension));
    synthesis_.col(i) = space_->project(f);
  }
}

VectorSequence VectorSequence::from_induced(std::shared_ptr<const InducedSpace> space,
                                            const Matrix& coordinates) {
  if (!space) throw StructuralError("vector sequence needs an induced space");
  std::vector<Vector> elements;
  for (Eigen::Index i = 0; i < coordinates.cols(); ++i)
    elements.push_back(space->embed(coordinates.col(i)));
  return VectorSequence(std::move(space), std::move(elements));
}

VectorSequence VectorSequence::appended(const Vector& element) const {
  auto elements = elements_;
  elements.push_back(element);
  return VectorSequence(space_, std::move(elements));
}

VectorSequence VectorSequence::scaled(Scalar t) const {
  auto elements = elements_;
  for (auto& f : elements) f *= t;
  return VectorSequence(space_, std::move(elements));
}

// ---------------------------------------------------------------------------

namespace {

void require_rows(const Matrix& synthesis, Eigen::Index size, const char* what) {
  if (size != synthesis.rows())
    throw StructuralError(std::string(what) + " has size " + std::to_string(size) +
                          ", induced dimension is " + std::to_string(synthesis.rows()));
}

void require_operator(const Matrix& synthesis, const Operator& k) {
  if (k.rows() != synthesis.rows() || k.cols() != synthesis.rows())
    throw StructuralError("operator is " + std::to_string(k.rows()) + " x " +
                          std::to_string(k.cols()) + ", expected " +
                          std::to_string(synthesis.rows()) + " x " +
                          std::to_string(synthesis.rows()));
}

}  // namespace

Vector analysis(const Matrix& synthesis, const InducedVector& f) {
  require_rows(synthesis, f.size(), "analysed vector");
  return synthesis.adjoint() * f;
}

InducedVector synthesis(const Matrix& t, const CoefficientSequence& c) {
  if (c.size() != t.cols())
    throw StructuralError("coefficient sequence has length " + std::to_string(c.size()) +
                          ", sequence has " + std::to_string(t.cols()) + " elements");
  return t * c;
}

Matrix frame_operator(const Matrix& synthesis) {
  Matrix s = synthesis * synthesis.adjoint();
  return 0.5 * (s + s.adjoint());
}

BoundsResult frame_bounds(const Matrix& synthesis) {
  const auto eig = linalg::hermitian_eigen(frame_operator(synthesis));
  const Eigen::Index m = eig.values.size();
  BoundsResult out;
  out.bounds.lower = std::max(0.0, eig.values(0));
  out.bounds.upper = std::max(0.0, eig.values(m - 1));
  out.witness_lower = eig.vectors.col(0);
  out.witness_upper = eig.vectors.col(m - 1);
  return out;
}

double range_defect(const Matrix& synthesis, const Operator& k) {
  const double kn = linalg::spectral_norm(k);
  if (kn == 0.0) return 0.0;
  const auto range = linalg::range_factor(synthesis);
  return linalg::outside_residual(range.left, k) / kn;
}

std::optional<BoundsResult> kframe_bounds(const Matrix& synthesis, const Operator& k) {
  require_operator(synthesis, k);
  const auto range = linalg::range_factor(synthesis);
  const Eigen::Index m = synthesis.rows();

  BoundsResult out;
  out.bounds.upper = range.largest * range.largest;
  const auto upper = frame_bounds(synthesis);
  out.witness_upper = upper.witness_upper;

  const double kn = linalg::spectral_norm(k);
  if (kn == 0.0) {
    out.bounds.lower = std::numeric_limits<double>::infinity();
    out.witness_lower = Vector::Unit(m, 0);
    return out;
  }
  if (linalg::outside_residual(range.left, k) > tol::rank_cutoff * kn) return std::nullopt;

  // A_opt = 1 / lambda_max(S^{+1/2} K K* S^{+1/2}) = 1 / ||Sigma^-1 U* K||^2.
  const Matrix w = range.singular.cwiseInverse().cast<Scalar>().asDiagonal() *
                   (range.left.adjoint() * k);
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU);
  const double top = svd.singularValues()(0);
  out.bounds.lower = 1.0 / (top * top);
  Vector f = range.left * (range.singular.cwiseInverse().cast<Scalar>().asDiagonal() *
                           svd.matrixU().col(0));
  out.witness_lower = f / f.norm();
  return out;
}

Vector analysis(const VectorSequence& seq, const InducedVector& f) {
  return analysis(seq.synthesis_matrix(), f);
}

InducedVector synthesis(const VectorSequence& seq, const CoefficientSequence& c) {
  return synthesis(seq.synthesis_matrix(), c);
}

Matrix frame_operator(const VectorSequence& seq) { return frame_operator(seq.synthesis_matrix()); }

BoundsResult frame_bounds(const VectorSequence& seq) { return frame_bounds(seq.synthesis_matrix()); }

std::optional<BoundsResult> kframe_bounds(const VectorSequence& seq, const Operator& k) {
  return kframe_bounds(seq.synthesis_matrix(), k);
}

// ---------------------------------------------------------------------------

Report verify_frame_inequality(const Matrix& t, const std::optional<Operator>& k,
                               const FrameBounds& bounds, int trials, std::uint64_t seed,
                               double tol, Field field) {
  if (trials < 1) throw StructuralError("trials must be at least 1");
  const Eigen::Index m = t.rows();
  if (k) require_operator(t, *k);

  std::vector<Vector> samples;
  const auto extremes = frame_bounds(t);
  samples.push_back(extremes.witness_lower);
  samples.push_back(extremes.witness_upper);
  if (k) {
    if (auto kb = kframe_bounds(t, *k)) samples.push_back(kb->witness_lower);
  }
  for (int i = 0; i < trials; ++i)
    samples.push_back(Rng::stream(seed, static_cast<std::uint64_t>(i)).unit_vector(m, field));

  WorstCase lower, upper;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Vector& f = samples[s];
    const double energy = (t.adjoint() * f).squaredNorm();
    const double target = k ? (k->adjoint() * f).squaredNorm() : f.squaredNorm();
    double lhs = 0.0;
    if (target > 0.0) lhs = bounds.lower * target;  // inf * 0 never happens here
    const double rhs = bounds.upper * f.squaredNorm();
    const std::string where = s < samples.size() - static_cast<std::size_t>(trials)
                                  ? "witness " + std::to_string(s)
                                  : "trial " + std::to_string(s - (samples.size() - trials));
    const auto rel = [](double a, double b) {
      const double excess = a - b;
      if (!(excess > 0.0)) return 0.0;
      if (std::isinf(a)) return 1.0;
      return excess / std::max({std::abs(a), std::abs(b), 1e-300});
    };
    lower.observe(rel(lhs, energy), where);
    upper.observe(rel(energy, rhs), where);
  }

  Report report("frame inequality");
  report.add("lower", lower.value(), tol, lower.witness());
  report.add("upper", upper.value(), tol, upper.witness());
  return report;
}

Report verify_frame_inequality(const VectorSequence& seq, const std::optional<Operator>& k,
                               const FrameBounds& bounds, int trials, std::uint64_t seed,
                               double tol) {
  return verify_frame_inequality(seq.synthesis_matrix(), k, bounds, trials, seed, tol,
                                 seq.space().field());
}

}  // namespace nhf
