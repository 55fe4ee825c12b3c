#include "nhf/tensorprod.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "nhf/linalg.hpp"
#include "nhf/random.hpp"

namespace nhf {

namespace {

double relative_excess(double a, double b) {
  const double excess = a - b;
  if (!(excess > 0.0)) return 0.0;
  if (std::isinf(a)) return 1.0;
  return excess / std::max({std::abs(a), std::abs(b), 1e-300});
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool invertible(const Matrix& m) {
  return m.rows() == m.cols() && linalg::numerical_rank(m) == m.rows();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw StructuralError(std::string(what) + " must be square, got " + std::to_string(m.rows()) +
                          " x " + std::to_string(m.cols()));
}

}  // namespace

// ---------------------------------------------------------------------------

TensorInstance::TensorInstance(FactorBundle left, FactorBundle right)
    : left_(std::move(left)), right_(std::move(right)) {
  const auto check = [](const FactorBundle& side, const char* name) {
    const auto m = side.space().dimension();
    if (side.k.rows() != m || side.k.cols() != m)
      throw StructuralError(std::string(name) + " operator is " + std::to_string(side.k.rows()) +
                            " x " + std::to_string(side.k.cols()) + ", induced dimension is " +
                            std::to_string(m));
  };
  check(left_, "left");
  check(right_, "right");
  synthesis_ = kron_op(left_.sequence.synthesis_matrix(), right_.sequence.synthesis_matrix());
  frame_operator_ = kron_op(nhf::frame_operator(left_.sequence.synthesis_matrix()),
                            nhf::frame_operator(right_.sequence.synthesis_matrix()));
  op_ = kron_op(left_.k, right_.k);
}

Field TensorInstance::field() const {
  return left_.space().field() == Field::complex || right_.space().field() == Field::complex
             ? Field::complex
             : Field::real;
}

Vector kron_vec(const Vector& f, const Vector& g) {
  return Eigen::kroneckerProduct(f, g).eval();
}

Matrix kron_op(const Matrix& q, const Matrix& t) {
  return Eigen::kroneckerProduct(q, t).eval();
}

// ---------------------------------------------------------------------------

Report operator_tensor_props_check(const Matrix& q, const Matrix& t, int trials,
                                   std::uint64_t seed, double tol, Field field) {
  if (trials < 1) throw StructuralError("trials must be at least 1");
  require_square(q, "Q");
  require_square(t, "T");
  const Matrix qt = kron_op(q, t);
  const double nq = linalg::spectral_norm(q);
  const double nt = linalg::spectral_norm(t);
  const double scale = std::max(nq * nt, 1e-300);

  Report report("operator tensor identities");
  report.add("I.norm_product", std::abs(linalg::spectral_norm(qt) - nq * nt) / scale, tol);

  WorstCase action, composition;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Vector f = rng.unit_vector(q.cols(), field);
    const Vector g = rng.unit_vector(t.cols(), field);
    action.observe((qt * kron_vec(f, g) - kron_vec(q * f, t * g)).norm() / scale, i);
    const Matrix q2 = rng.gaussian_matrix(q.rows(), q.cols(), field);
    const Matrix t2 = rng.gaussian_matrix(t.rows(), t.cols(), field);
    const double cscale =
        std::max(scale * linalg::spectral_norm(q2) * linalg::spectral_norm(t2), 1e-300);
    composition.observe(max_abs(qt * kron_op(q2, t2) - kron_op(q * q2, t * t2)) / cscale, i);
  }
  report.add("II.action_on_simple_tensors", action.value(), tol, action.witness());
  report.add("III.composition", composition.value(), tol, composition.witness());

  const bool q_inv = invertible(q);
  const bool t_inv = invertible(t);
  const bool qt_inv = invertible(qt);
  std::ostringstream w;
  w << "Q invertible: " << (q_inv ? "yes" : "no") << ", T invertible: " << (t_inv ? "yes" : "no")
    << ", Q(x)T invertible: " << (qt_inv ? "yes" : "no");
  report.add_flag("IV.invertibility_equivalence", qt_inv == (q_inv && t_inv), w.str());
  double inverse_defect = 0.0;
  if (q_inv && t_inv && qt_inv) {
    const Matrix expected = kron_op(q.inverse(), t.inverse());
    inverse_defect = max_abs(qt.inverse() - expected) / std::max(max_abs(expected), 1e-300);
  }
  report.add("IV.inverse_formula", inverse_defect, tol, w.str());
  report.add("V.adjoint", max_abs(qt.adjoint() - kron_op(q.adjoint(), t.adjoint())) / scale, tol);
  return report;
}

std::optional<SimpleTensor> factor_simple_tensor(const Vector& u, Eigen::Index m1,
                                                 Eigen::Index m2) {
  if (m1 < 1 || m2 < 1 || u.size() != m1 * m2)
    throw StructuralError("product vector of length " + std::to_string(u.size()) +
                          " does not match shape " + std::to_string(m1) + " x " +
                          std::to_string(m2));
  if (u.norm() == 0.0) throw StructuralError("the zero vector has no nonzero factors");
  Matrix arr(m1, m2);
  for (Eigen::Index i = 0; i < m1; ++i)
    for (Eigen::Index j = 0; j < m2; ++j) arr(i, j) = u(i * m2 + j);
  Eigen::JacobiSVD<Matrix> svd(arr, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  if (s.size() > 1 && s(1) > tol::separability * s(0)) return std::nullopt;
  const double root = std::sqrt(s(0));
  return SimpleTensor{root * svd.matrixU().col(0), root * svd.matrixV().col(0).conjugate()};
}

GaugeScalars simple_tensor_gauge(const SimpleTensor& base, const SimpleTensor& other) {
  const Vector u = kron_vec(base.left, base.right);
  const Vector v = kron_vec(other.left, other.right);
  if (u.norm() == 0.0 || v.norm() == 0.0)
    throw StructuralError("gauge scalars need nonzero factors");
  if ((u - v).norm() > tol::separability * u.norm())
    throw StructuralError("the two factor pairs describe different tensors");
  const Scalar a = base.left.dot(other.left) / base.left.squaredNorm();
  const Scalar b = base.right.dot(other.right) / base.right.squaredNorm();
  return {a, b};
}

TensorInner tensor_n_inner(const TensorInstance& inst, const Vector& f, const Vector& g,
                           const Vector& f2, const Vector& g2) {
  const InducedSpace& hl = inst.left().space();
  const InducedSpace& hr = inst.right().space();
  TensorInner out;
  out.product_formula = hl.inner(f, f2) * hr.inner(g, g2);
  const Vector u = kron_vec(hl.project(f), hr.project(g));
  const Vector v = kron_vec(hl.project(f2), hr.project(g2));
  out.assembled = v.dot(u);
  return out;
}

// ---------------------------------------------------------------------------

TensorBoundsReport tensor_frame_bounds(const TensorInstance& inst) {
  TensorBoundsReport out;
  out.left = kframe_bounds(inst.left().sequence, inst.left().k);
  out.right = kframe_bounds(inst.right().sequence, inst.right().k);
  out.assembled = kframe_bounds(inst.synthesis(), inst.op());
  if (!out.left && !out.right)
    out.failing_side = "both";
  else if (!out.left)
    out.failing_side = "left";
  else if (!out.right)
    out.failing_side = "right";

  if (out.left && out.right) {
    FrameBounds p;
    p.lower = out.left->bounds.lower * out.right->bounds.lower;
    p.upper = out.left->bounds.upper * out.right->bounds.upper;
    out.product = p;
    if (out.assembled) {
      const FrameBounds& a = out.assembled->bounds;
      const double slack = 1e-9;
      const bool lower_ok = std::isinf(a.lower) || p.lower <= a.lower * (1.0 + slack);
      const bool upper_ok = a.upper <= p.upper * (1.0 + slack) + 1e-300;
      out.product_valid = lower_ok && upper_ok;
      const auto gap = [](double x, double y) {
        if (std::isinf(x) && std::isinf(y)) return 0.0;
        return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
      };
      out.product_gap = std::max(gap(p.lower, a.lower), gap(p.upper, a.upper));
    }
  }
  return out;
}

FactorizedBounds tensor_frame_factorize(const TensorInstance& inst,
                                        const std::optional<InducedVector>& left_witness,
                                        const std::optional<InducedVector>& right_witness) {
  const auto assembled = kframe_bounds(inst.synthesis(), inst.op());
  if (!assembled) {
    const double residual = range_defect(inst.synthesis(), inst.op());
    throw RangeError("assembled sequence is not a K1 (x) K2-frame", residual);
  }
  const double a = assembled->bounds.lower;
  const double b = assembled->bounds.upper;

  // Picks the witness on one side: explicit when it has nonzero analysis
  // energy, otherwise the top eigenvector of that side's frame operator.
  const auto pick = [](const FactorBundle& side, const std::optional<InducedVector>& given,
                       const char* name) {
    const Matrix& t = side.sequence.synthesis_matrix();
    if (given) {
      if (given->size() != t.rows())
        throw StructuralError(std::string(name) + " witness has wrong dimension");
      if ((t.adjoint() * *given).squaredNorm() > 0.0) return InducedVector(*given);
    }
    const auto top = frame_bounds(t);
    if (!(top.bounds.upper > 0.0))
      throw StructuralError(std::string(name) + " sequence is identically zero");
    return InducedVector(top.witness_upper);
  };

  const auto split = [a, b](const FactorBundle& other, const InducedVector& w) {
    const double energy = (other.sequence.synthesis_matrix().adjoint() * w).squaredNorm();
    const double k_energy = (other.k.adjoint() * w).squaredNorm();
    FrameBounds fb;
    fb.lower = k_energy == 0.0 ? 0.0 : a * k_energy / energy;
    fb.upper = b * w.squaredNorm() / energy;
    return fb;
  };

  FactorizedBounds out;
  out.right_witness = pick(inst.right(), right_witness, "right");
  out.left_witness = pick(inst.left(), left_witness, "left");
  out.left = split(inst.right(), out.right_witness);
  out.right = split(inst.left(), out.left_witness);
  return out;
}

IsometryDefects isometry_defects(const TensorInstance& inst, const Operator& t1,
                                 const Operator& t2) {
  const auto m1 = inst.left().space().dimension();
  const auto m2 = inst.right().space().dimension();
  if (t1.rows() != m1 || t1.cols() != m1 || t2.rows() != m2 || t2.cols() != m2)
    throw StructuralError("transform operators do not match the factor dimensions");
  const Matrix u = kron_op(t1, t2);
  const Matrix& k = inst.op();
  IsometryDefects d;
  d.isometry = max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
  const double scale = std::max(1.0, linalg::spectral_norm(k) * linalg::spectral_norm(u));
  d.commutation = max_abs(k.adjoint() * u - u * k.adjoint()) / scale;
  return d;
}

TensorInstance transform_isometry(const TensorInstance& inst, const Operator& t1,
                                  const Operator& t2, double tol) {
  const IsometryDefects d = isometry_defects(inst, t1, t2);
  if (!(d.isometry <= tol))
    throw StructuralError("T1 (x) T2 is not an isometry (defect " + std::to_string(d.isometry) +
                          ")");
  if (!(d.commutation <= tol))
    throw StructuralError("(K1 (x) K2)* does not commute with T1 (x) T2 (defect " +
                          std::to_string(d.commutation) + ")");
  const auto& l = inst.left();
  const auto& r = inst.right();
  FactorBundle left{VectorSequence::from_induced(l.sequence.space_ptr(),
                                                 t1.adjoint() * l.sequence.synthesis_matrix()),
                    l.k};
  FactorBundle right{VectorSequence::from_induced(r.sequence.space_ptr(),
                                                  t2.adjoint() * r.sequence.synthesis_matrix()),
                     r.k};
  return TensorInstance(std::move(left), std::move(right));
}

LeftTransform transform_left(const TensorInstance& inst, const Operator& l1, const Operator& l2) {
  const auto& l = inst.left();
  const auto& r = inst.right();
  if (l1.rows() != l.k.rows() || l1.cols() != l.k.cols() || l2.rows() != r.k.rows() ||
      l2.cols() != r.k.cols())
    throw StructuralError("transform operators do not match the factor dimensions");
  FactorBundle left{
      VectorSequence::from_induced(l.sequence.space_ptr(), l1 * l.sequence.synthesis_matrix()),
      l1 * l.k};
  FactorBundle right{
      VectorSequence::from_induced(r.sequence.space_ptr(), l2 * r.sequence.synthesis_matrix()),
      l2 * r.k};
  TensorInstance out(std::move(left), std::move(right));
  Operator op = out.op();
  return {std::move(out), std::move(op)};
}

Report verify_tensor_frame_inequality(const Matrix& t, const Operator& op,
                                      const FrameBounds& bounds, Eigen::Index m1,
                                      Eigen::Index m2, int trials, std::uint64_t seed,
                                      double tol, Field field) {
  if (trials < 1) throw StructuralError("trials must be at least 1");
  if (t.rows() != m1 * m2 || op.rows() != t.rows() || op.cols() != t.rows())
    throw StructuralError("tensor inequality shapes disagree");

  const auto measure = [&](const Vector& u, WorstCase& lower, WorstCase& upper,
                           const std::string& where) {
    const double energy = (t.adjoint() * u).squaredNorm();
    const double target = (op.adjoint() * u).squaredNorm();
    const double lhs = target > 0.0 ? bounds.lower * target : 0.0;
    lower.observe(relative_excess(lhs, energy), where);
    upper.observe(relative_excess(energy, bounds.upper * u.squaredNorm()), where);
  };

  WorstCase simple_lower, simple_upper, generic_lower, generic_upper;
  if (auto kb = kframe_bounds(t, op)) {
    measure(kb->witness_lower, generic_lower, generic_upper, "lower witness");
    measure(kb->witness_upper, generic_lower, generic_upper, "upper witness");
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Vector f = rng.unit_vector(m1, field);
    const Vector g = rng.unit_vector(m2, field);
    const std::string where = "trial " + std::to_string(i);
    measure(kron_vec(f, g), simple_lower, simple_upper, where);
    measure(rng.unit_vector(m1 * m2, field), generic_lower, generic_upper, where);
  }
  Report report("tensor frame inequality");
  report.add("simple.lower", simple_lower.value(), tol, simple_lower.witness());
  report.add("simple.upper", simple_upper.value(), tol, simple_upper.witness());
  report.add("generic.lower", generic_lower.value(), tol, generic_lower.witness());
  report.add("generic.upper", generic_upper.value(), tol, generic_upper.witness());
  return report;
}

// ---------------------------------------------------------------------------

TensorDecomposition tensor_atomic_decompose(const TensorInstance& inst, const InducedVector& f,
                                            const InducedVector& g) {
  const Matrix& t1 = inst.left().sequence.synthesis_matrix();
  const Matrix& t2 = inst.right().sequence.synthesis_matrix();
  if (f.size() != t1.rows() || g.size() != t2.rows())
    throw StructuralError("decomposed vectors do not match the factor dimensions");
  const auto left = is_atomic_system(t1, inst.left().k);
  const auto right = is_atomic_system(t2, inst.right().k);
  if (!left || !right) {
    const std::string side = !left && !right ? "left and right" : (!left ? "left" : "right");
    const double residual = !left ? range_defect(t1, inst.left().k)
                                  : range_defect(t2, inst.right().k);
    throw RangeError(side + " factor is not an atomic system (range defect " +
                         std::to_string(residual) + ")",
                     residual);
  }
  TensorDecomposition out;
  out.left = atomic_decompose(t1, inst.left().k, f);
  out.right = atomic_decompose(t2, inst.right().k, g);
  out.coefficients = out.left * out.right.transpose();
  out.left_constant = left->constant;
  out.right_constant = right->constant;
  out.constant = left->constant * right->constant;
  const Vector target = kron_vec(inst.left().k * f, inst.right().k * g);
  out.residual = (inst.synthesis() * kron_vec(out.left, out.right) - target).norm();
  return out;
}

AtomicFactorization tensor_atomic_factorize(const CoefficientArray& arr,
                                            const TensorInstance& inst, const InducedVector& f,
                                            const InducedVector& g, double constant) {
  const Matrix& t1 = inst.left().sequence.synthesis_matrix();
  const Matrix& t2 = inst.right().sequence.synthesis_matrix();
  if (arr.rows() != t1.cols() || arr.cols() != t2.cols())
    throw StructuralError("coefficient array is " + std::to_string(arr.rows()) + " x " +
                          std::to_string(arr.cols()) + ", sequences have " +
                          std::to_string(t1.cols()) + " and " + std::to_string(t2.cols()) +
                          " elements");
  if (f.size() != t1.rows() || g.size() != t2.rows())
    throw StructuralError("factorized vectors do not match the factor dimensions");

  Eigen::JacobiSVD<Matrix> svd(arr, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) throw StructuralError("coefficient array is zero");
  if (s.size() > 1 && s(1) > tol::separability * s(0))
    throw StructuralError("coefficient array is not separable (singular value ratio " +
                          std::to_string(s(1) / s(0)) + ")");

  const double root = std::sqrt(s(0));
  Vector c = root * svd.matrixU().col(0);
  Vector d = root * svd.matrixV().col(0).conjugate();

  const Vector k1f = inst.left().k * f;
  const Vector k2g = inst.right().k * g;
  const Vector t1c = t1 * c;
  if (k1f.norm() == 0.0 || t1c.norm() == 0.0)
    throw StructuralError("left factor vanishes; the gauge is undetermined");
  const double lambda = k1f.norm() / t1c.norm();
  c *= lambda;
  d /= lambda;
  if (d.norm() == 0.0 || c.norm() == 0.0) throw StructuralError("zero factor coefficients");

  AtomicFactorization out;
  const Vector tc = t1 * c;
  const Vector td = t2 * d;
  out.a = tc.dot(k1f) / tc.squaredNorm();
  out.b = td.squaredNorm() > 0.0 ? td.dot(k2g) / td.squaredNorm() : Scalar(0.0);
  out.left_residual = (k1f - out.a * tc).norm();
  out.right_residual = (k2g - out.b * td).norm();
  out.left_constant = constant * g.norm() / d.norm();
  out.right_constant = constant * f.norm() / c.norm();
  out.left = std::move(c);
  out.right = std::move(d);
  return out;
}

}  // namespace nhf
