#include "nhf/verify.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "nhf/linalg.hpp"
#include "nhf/random.hpp"

namespace nhf {

namespace {

struct IdName {
  TheoremId id;
  const char* name;
};

constexpr std::array<IdName, 12> kIds{{{TheoremId::T2_4, "T2_4"},
                                       {TheoremId::T3_2, "T3_2"},
                                       {TheoremId::T3_5, "T3_5"},
                                       {TheoremId::T3_6, "T3_6"},
                                       {TheoremId::T3_9, "T3_9"},
                                       {TheoremId::T4_3, "T4_3"},
                                       {TheoremId::T4_4, "T4_4"},
                                       {TheoremId::T4_5a, "T4_5a"},
                                       {TheoremId::T4_5b, "T4_5b"},
                                       {TheoremId::T4_7, "T4_7"},
                                       {TheoremId::T4_8, "T4_8"},
                                       {TheoremId::T4_9, "T4_9"}}};

double relative_excess(double a, double b) {
  const double excess = a - b;
  if (!(excess > 0.0)) return 0.0;
  if (std::isinf(a)) return 1.0;
  return excess / std::max({std::abs(a), std::abs(b), 1e-300});
}

double relative_gap(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

const FactorBundle& right_of(const TheoremInput& in) {
  if (!in.right) throw StructuralError("this theorem needs a tensor instance (left and right)");
  return *in.right;
}

TensorInstance tensor_of(const TheoremInput& in) {
  return TensorInstance(in.left, right_of(in));
}

Field field_of(const FactorBundle& b) { return b.space().field(); }

// K-frame hypothesis for one factor.
std::optional<BoundsResult> kframe_hypothesis(Report& report, const FactorBundle& side,
                                              const std::string& name) {
  auto kb = kframe_bounds(side.sequence, side.k);
  std::string witness = kb ? "bounds (" + fmt(kb->bounds.lower) + ", " + fmt(kb->bounds.upper) + ")"
                           : "range(K) not inside synthesis range, defect " +
                                 fmt(range_defect(side.sequence.synthesis_matrix(), side.k));
  report.add_flag("hypothesis." + name + "_kframe", kb.has_value() && kb->bounds.lower > 0.0,
                  witness);
  return kb;
}

std::optional<AtomicCertificate> atomic_hypothesis(Report& report, const FactorBundle& side,
                                                   const std::string& name) {
  auto cert = is_atomic_system(side.sequence.synthesis_matrix(), side.k);
  report.add_flag("hypothesis." + name + "_atomic", cert.has_value(),
                  cert ? "C = " + fmt(cert->constant)
                       : "range defect " +
                             fmt(range_defect(side.sequence.synthesis_matrix(), side.k)));
  return cert;
}

// ---------------------------------------------------------------------------

Report theorem_2_4(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const Operator& q = in.left.k;
  const Operator& t = in.right ? in.right->k : in.left.k;
  const Field field = in.right && field_of(*in.right) == Field::complex ? Field::complex
                                                                        : field_of(in.left);
  Report report("T2_4");
  report.append(operator_tensor_props_check(q, t, trials, seed, tol, field), "conclusion.");

  const Eigen::Index m1 = q.rows();
  const Eigen::Index m2 = t.rows();
  WorstCase gauge, reconstruction;
  bool rejects = true;
  std::string reject_witness;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed ^ 0x5eedULL, static_cast<std::uint64_t>(i));
    const SimpleTensor base{rng.gaussian_vector(m1, field), rng.gaussian_vector(m2, field)};
    const Vector u = kron_vec(base.left, base.right);
    const auto recovered = factor_simple_tensor(u, m1, m2);
    if (!recovered) {
      gauge.observe(std::numeric_limits<double>::infinity(), i);
      continue;
    }
    const GaugeScalars g = simple_tensor_gauge(*recovered, base);
    gauge.observe(std::abs(g.a * g.b - 1.0), i);
    reconstruction.observe(
        (kron_vec(recovered->left, recovered->right) - u).norm() / u.norm(), i);
    if (m1 >= 2 && m2 >= 2) {
      Vector f2 = rng.gaussian_vector(m1, field);
      Vector g2 = rng.gaussian_vector(m2, field);
      const Vector entangled = u + kron_vec(f2, g2);
      if (factor_simple_tensor(entangled, m1, m2)) {
        rejects = false;
        reject_witness = "trial " + std::to_string(i);
      }
    }
  }
  report.add("conclusion.VI.gauge_product_is_one", gauge.value(), tol, gauge.witness());
  report.add("conclusion.VI.reconstruction", reconstruction.value(), tol, reconstruction.witness());
  report.add_flag("conclusion.VI.rejects_rank_two", rejects, reject_witness);
  return report;
}

Report theorem_3_2(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const VectorSequence& seq = in.left.sequence;
  const InducedSpace& space = seq.space();
  const FrameBounds bounds = frame_bounds(seq).bounds;
  Report report("T3_2");
  std::ostringstream w;
  w << "bounds (" << fmt(bounds.lower) << ", " << fmt(bounds.upper) << ")";
  report.add_flag("hypothesis.bounds_computed", bounds.upper >= bounds.lower, w.str());

  // Ambient route: n-inner products against the fixed tuple.
  WorstCase analysis_gap, lower, upper;
  const Eigen::Index d = space.ambient().dimension;
  std::vector<Vector> samples;
  const auto witnesses = frame_bounds(seq);
  samples.push_back(space.embed(witnesses.witness_lower));
  samples.push_back(space.embed(witnesses.witness_upper));
  for (int i = 0; i < trials; ++i)
    samples.push_back(Rng::stream(seed, static_cast<std::uint64_t>(i)).unit_vector(d, space.field()));

  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Vector& x = samples[s];
    Vector ambient_coeffs(seq.count());
    for (Eigen::Index i = 0; i < seq.count(); ++i)
      ambient_coeffs(i) = n_inner(x, seq.elements()[static_cast<std::size_t>(i)], space.fixed());
    const Vector induced_coeffs = analysis(seq, space.project(x));
    const double nx = space.norm(x);
    const double scale = std::max(std::sqrt(bounds.upper) * nx, 1e-300);
    const std::string where = "sample " + std::to_string(s);
    analysis_gap.observe((ambient_coeffs - induced_coeffs).norm() / scale, where);
    const double energy = ambient_coeffs.squaredNorm();
    lower.observe(relative_excess(bounds.lower * nx * nx, energy), where);
    upper.observe(relative_excess(energy, bounds.upper * nx * nx), where);
  }
  report.add("conclusion.ambient_equals_induced_analysis", analysis_gap.value(), tol,
             analysis_gap.witness());
  report.add("conclusion.ambient_lower_inequality", lower.value(), tol, lower.witness());
  report.add("conclusion.ambient_upper_inequality", upper.value(), tol, upper.witness());
  return report;
}

Report theorem_3_5(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const Matrix& t = in.left.sequence.synthesis_matrix();
  const Subspace y = in.subspace ? *in.subspace : default_subspace(t);
  Report report("T3_5");
  const auto family = local_atom_dual(t, y);
  const Report local = verify_local_atoms(t, y, family, trials, seed, tol, field_of(in.left));
  for (const Check& c : local.checks()) {
    const bool conclusion = c.name == "frame_lower_bound_at_least_inverse_C";
    Check copy = c;
    copy.name = (conclusion ? "conclusion." : "hypothesis.") + c.name;
    report.add(copy.name, copy.worst_violation, copy.tolerance, copy.witness);
  }
  // Bessel half of the conclusion on Y.
  const double upper = frame_bounds(t).bounds.upper;
  report.append(verify_frame_inequality(t,
                                        std::optional<Operator>(y.projector()),
                                        FrameBounds{0.0, upper}, trials, seed, tol,
                                        field_of(in.left)),
                "conclusion.bessel_");
  return report;
}

Report theorem_3_6(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const Matrix& t = in.left.sequence.synthesis_matrix();
  const Subspace y = in.subspace ? *in.subspace : default_subspace(t);
  const Field field = field_of(in.left);
  const Eigen::Index m = t.rows();
  Report report("T3_6");

  const auto family = local_atom_dual(t, y);
  const Matrix& g = family.dual_vectors();
  const double dual_bessel = frame_bounds(g).bounds.upper;
  const double bound = family.bound();
  const Matrix p = y.projector();

  WorstCase projection, bounded, quadratic, reconstruction;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Vector f = rng.unit_vector(m, field);
    const Vector values = g.adjoint() * f;
    projection.observe((p * f - t * values).norm(), i);
    bounded.observe(relative_excess(values.cwiseAbs().maxCoeff(), bound), i);
    quadratic.observe(relative_excess(values.squaredNorm(), dual_bessel), i);
    if (y.dimension() > 0) {
      const Vector fy = y.basis() * rng.unit_vector(y.dimension(), field);
      reconstruction.observe((t * (g.adjoint() * fy) - fy).norm(), i);
    }
  }
  report.add_flag("hypothesis.dual_is_bessel", std::isfinite(dual_bessel),
                  "Bessel bound " + fmt(dual_bessel));
  report.add("hypothesis.projection_identity", projection.value(), tol, projection.witness());
  report.add("conclusion.functionals_bounded_by_M", bounded.value(), tol,
             "M = " + fmt(bound) + ", " + bounded.witness());
  report.add("conclusion.condition_I", quadratic.value(), tol, quadratic.witness());
  report.add("conclusion.condition_II", reconstruction.value(), tol, reconstruction.witness());
  return report;
}

Report theorem_3_9(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const Matrix& t = in.left.sequence.synthesis_matrix();
  const Operator& k = in.left.k;
  Report report("T3_9");
  const auto kb = kframe_hypothesis(report, in.left, "left");
  if (!kb) return report;
  const Matrix g = kframe_dual_matrix(t, k);
  const double dual_bessel = frame_bounds(g).bounds.upper;
  const double scale = std::max(1.0, linalg::spectral_norm(k));
  WorstCase adjoint_rec, direct_rec;
  for (int i = 0; i < trials; ++i) {
    const Vector f =
        Rng::stream(seed, static_cast<std::uint64_t>(i)).unit_vector(t.rows(), field_of(in.left));
    adjoint_rec.observe((k.adjoint() * f - g * (t.adjoint() * f)).norm() / scale, i);
    direct_rec.observe((k * f - t * (g.adjoint() * f)).norm() / scale, i);
  }
  report.add_flag("conclusion.dual_is_bessel", std::isfinite(dual_bessel),
                  "Bessel bound " + fmt(dual_bessel));
  report.add("conclusion.adjoint_reconstruction", adjoint_rec.value(), tol, adjoint_rec.witness());
  report.add("conclusion.direct_reconstruction", direct_rec.value(), tol, direct_rec.witness());
  return report;
}

Report theorem_4_3(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_3");
  const auto tb = tensor_frame_bounds(inst);
  const bool factors = tb.left.has_value() && tb.right.has_value();
  const bool assembled = tb.assembled.has_value();
  report.add_flag("conclusion.biconditional", factors == assembled,
                  std::string("factors: ") + (factors ? "yes" : "no") +
                      ", assembled: " + (assembled ? "yes" : "no") +
                      (tb.failing_side.empty() ? "" : ", failing side " + tb.failing_side));
  if (!factors || !assembled) return report;

  report.add("conclusion.product_bounds", tb.product_gap, tol,
             "product (" + fmt(tb.product->lower) + ", " + fmt(tb.product->upper) +
                 "), assembled (" + fmt(tb.assembled->bounds.lower) + ", " +
                 fmt(tb.assembled->bounds.upper) + ")");
  report.append(verify_tensor_frame_inequality(inst.synthesis(), inst.op(), tb.assembled->bounds,
                                               inst.left().space().dimension(),
                                               inst.right().space().dimension(), trials, seed,
                                               tol, inst.field()),
                "conclusion.tensor_");
  const FactorizedBounds fb = tensor_frame_factorize(inst);
  report.append(verify_frame_inequality(inst.left().sequence, inst.left().k, fb.left, trials,
                                        seed, tol),
                "conclusion.left_factor_");
  report.append(verify_frame_inequality(inst.right().sequence, inst.right().k, fb.right, trials,
                                        seed, tol),
                "conclusion.right_factor_");
  return report;
}

Report theorem_4_4(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_4");
  const double b1 = frame_bounds(inst.left().sequence).bounds.upper;
  const double b2 = frame_bounds(inst.right().sequence).bounds.upper;
  const double b = frame_bounds(inst.synthesis()).bounds.upper;
  report.add_flag("hypothesis.factors_bessel", std::isfinite(b1) && std::isfinite(b2),
                  "B1 = " + fmt(b1) + ", B2 = " + fmt(b2));
  report.add("conclusion.tensor_bessel_bound_is_product", relative_gap(b, b1 * b2), tol,
             "assembled " + fmt(b) + ", product " + fmt(b1 * b2));
  const Operator identity = Operator::Identity(inst.dimension(), inst.dimension());
  const Report upper =
      verify_tensor_frame_inequality(inst.synthesis(), identity, FrameBounds{0.0, b1 * b2},
                                     inst.left().space().dimension(),
                                     inst.right().space().dimension(), trials, seed, tol,
                                     inst.field());
  for (const Check& c : upper.checks())
    if (c.name.ends_with("upper"))
      report.add("conclusion.tensor_" + c.name, c.worst_violation, c.tolerance, c.witness);

  // Converse: factor Bessel bounds recovered from the tensor bound.
  const auto converse = [&](const FactorBundle& side, const FactorBundle& other,
                            const std::string& name) {
    const Vector w = frame_bounds(other.sequence).witness_upper;
    const double energy = analysis(other.sequence, w).squaredNorm();
    const double recovered = b * w.squaredNorm() / energy;
    const Report r = verify_frame_inequality(side.sequence, std::nullopt,
                                             FrameBounds{0.0, recovered}, trials, seed, tol);
    report.add("conclusion." + name + "_bessel_from_tensor", r.find("upper")->worst_violation, tol,
               "recovered bound " + fmt(recovered));
  };
  converse(inst.left(), inst.right(), "left");
  converse(inst.right(), inst.left(), "right");
  return report;
}

Operator default_isometry(const FactorBundle& side) {
  const Eigen::Index m = side.space().dimension();
  if (side.space().field() == Field::complex)
    return Scalar(std::cos(0.7), std::sin(0.7)) * Operator::Identity(m, m);
  return -Operator::Identity(m, m);
}

Report theorem_4_5a(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_5a");
  const auto left = kframe_hypothesis(report, inst.left(), "left");
  const auto right = kframe_hypothesis(report, inst.right(), "right");
  const Operator t1 = in.isometry_left ? *in.isometry_left : default_isometry(inst.left());
  const Operator t2 = in.isometry_right ? *in.isometry_right : default_isometry(inst.right());
  const IsometryDefects defects = isometry_defects(inst, t1, t2);
  report.add("hypothesis.isometry", defects.isometry, tol);
  report.add("hypothesis.commutation", defects.commutation, tol);
  if (!left || !right || !report.pass()) return report;

  const TensorInstance moved = transform_isometry(inst, t1, t2, tol);
  const double ac = left->bounds.lower * right->bounds.lower;
  const double u_norm = linalg::spectral_norm(kron_op(t1, t2));
  const double bd = left->bounds.upper * right->bounds.upper * u_norm * u_norm;
  const auto kb = kframe_bounds(moved.synthesis(), moved.op());
  report.add_flag("conclusion.is_kframe", kb.has_value());
  if (!kb) return report;
  report.add("conclusion.lower_at_least_AC", relative_excess(ac, kb->bounds.lower), tol,
             "A C = " + fmt(ac) + ", measured " + fmt(kb->bounds.lower));
  report.add("conclusion.upper_at_most_BD", relative_excess(kb->bounds.upper, bd), tol,
             "B D ||T||^2 = " + fmt(bd) + ", measured " + fmt(kb->bounds.upper));
  report.append(verify_tensor_frame_inequality(moved.synthesis(), moved.op(), FrameBounds{ac, bd},
                                               moved.left().space().dimension(),
                                               moved.right().space().dimension(), trials, seed,
                                               tol, moved.field()),
                "conclusion.sampled_");
  return report;
}

Report theorem_4_5b(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_5b");
  const auto left = kframe_hypothesis(report, inst.left(), "left");
  const auto right = kframe_hypothesis(report, inst.right(), "right");
  if (!left || !right) return report;

  Rng rng = Rng::stream(seed, 0xA11CEULL);
  const Eigen::Index m1 = inst.left().space().dimension();
  const Eigen::Index m2 = inst.right().space().dimension();
  const Operator l1 =
      in.transform_left ? *in.transform_left : rng.gaussian_matrix(m1, m1, inst.field());
  const Operator l2 =
      in.transform_right ? *in.transform_right : rng.gaussian_matrix(m2, m2, inst.field());
  const LeftTransform moved = transform_left(inst, l1, l2);
  const double ac = left->bounds.lower * right->bounds.lower;
  const double l_norm = linalg::spectral_norm(kron_op(l1, l2));
  const double bd = left->bounds.upper * right->bounds.upper * l_norm * l_norm;
  report.append(verify_tensor_frame_inequality(moved.instance.synthesis(), moved.op,
                                               FrameBounds{ac, bd}, m1, m2, trials, seed, tol,
                                               inst.field()),
                "conclusion.");
  return report;
}

Report theorem_4_7(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_7");
  const auto c1 = atomic_hypothesis(report, inst.left(), "left");
  const auto c2 = atomic_hypothesis(report, inst.right(), "right");
  if (!c1 || !c2) return report;
  const Eigen::Index m1 = inst.left().space().dimension();
  const Eigen::Index m2 = inst.right().space().dimension();
  const double scale = std::max(1.0, linalg::spectral_norm(inst.op()));
  WorstCase residual, bound;
  double constant = 0.0;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Vector f = rng.unit_vector(m1, inst.field());
    const Vector g = rng.unit_vector(m2, inst.field());
    const TensorDecomposition dec = tensor_atomic_decompose(inst, f, g);
    constant = dec.constant;
    residual.observe(dec.residual / scale, i);
    bound.observe(std::max(0.0, dec.coefficients.norm() - dec.constant * f.norm() * g.norm()), i);
  }
  report.add("conclusion.decomposition_residual", residual.value(), tol, residual.witness());
  report.add("conclusion.coefficient_bound", bound.value(), tol,
             "C = C1 C2 = " + fmt(constant) + ", " + bound.witness());
  const double bessel = frame_bounds(inst.synthesis()).bounds.upper;
  report.add("conclusion.tensor_bessel", relative_gap(bessel, c1->bessel_bound * c2->bessel_bound),
             tol, "B = " + fmt(bessel));
  return report;
}

Report theorem_4_8(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_8");
  const auto c1 = is_atomic_system(inst.left().sequence.synthesis_matrix(), inst.left().k);
  const auto c2 = is_atomic_system(inst.right().sequence.synthesis_matrix(), inst.right().k);
  const bool tensor_atomic =
      is_atomic_system(inst.synthesis(), inst.op()).has_value() && c1 && c2;
  report.add_flag("hypothesis.tensor_atomic", tensor_atomic);
  if (!tensor_atomic) return report;

  const Eigen::Index m1 = inst.left().space().dimension();
  const Eigen::Index m2 = inst.right().space().dimension();
  const double s1 = std::max(1.0, linalg::spectral_norm(inst.left().k));
  const double s2 = std::max(1.0, linalg::spectral_norm(inst.right().k));
  WorstCase gauge, left_res, right_res, left_bound, right_bound;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Vector f = rng.unit_vector(m1, inst.field());
    const Vector g = rng.unit_vector(m2, inst.field());
    const TensorDecomposition dec = tensor_atomic_decompose(inst, f, g);
    if (dec.left.norm() == 0.0 || dec.right.norm() == 0.0) continue;
    const AtomicFactorization fac =
        tensor_atomic_factorize(dec.coefficients, inst, f, g, dec.constant);
    gauge.observe(std::abs(fac.a * fac.b - 1.0), i);
    left_res.observe(fac.left_residual / s1, i);
    right_res.observe(fac.right_residual / s2, i);
    left_bound.observe(std::max(0.0, fac.left.norm() - fac.left_constant * f.norm()), i);
    right_bound.observe(std::max(0.0, fac.right.norm() - fac.right_constant * g.norm()), i);
  }
  report.add("conclusion.gauge_product_is_one", gauge.value(), tol, gauge.witness());
  report.add("conclusion.left_reconstruction", left_res.value(), tol, left_res.witness());
  report.add("conclusion.right_reconstruction", right_res.value(), tol, right_res.witness());
  report.add("conclusion.left_coefficient_bound", left_bound.value(), tol, left_bound.witness());
  report.add("conclusion.right_coefficient_bound", right_bound.value(), tol,
             right_bound.witness());
  return report;
}

Report theorem_4_9(const TheoremInput& in, int trials, std::uint64_t seed, double tol) {
  const TensorInstance inst = tensor_of(in);
  Report report("T4_9");
  const auto c1 = atomic_hypothesis(report, inst.left(), "left");
  const auto c2 = atomic_hypothesis(report, inst.right(), "right");
  if (!c1 || !c2) return report;
  const auto kb = kframe_bounds(inst.synthesis(), inst.op());
  report.add_flag("conclusion.is_kframe", kb.has_value());
  if (!kb) return report;
  const double cc = c1->constant * c2->constant;
  const double guaranteed =
      cc > 0.0 ? 1.0 / (cc * cc) : std::numeric_limits<double>::infinity();
  const double violation = std::isinf(kb->bounds.lower)
                               ? 0.0
                               : std::max(0.0, guaranteed - kb->bounds.lower);
  report.add("conclusion.lower_at_least_inverse_C1C2_squared", violation, tol,
             "1/(C1 C2)^2 = " + fmt(guaranteed) + ", measured " + fmt(kb->bounds.lower));
  if (std::isfinite(guaranteed))
    report.append(verify_tensor_frame_inequality(
                      inst.synthesis(), inst.op(), FrameBounds{guaranteed, kb->bounds.upper},
                      inst.left().space().dimension(), inst.right().space().dimension(), trials,
                      seed, tol, inst.field()),
                  "conclusion.sampled_");
  return report;
}

}  // namespace

const char* to_string(TheoremId id) {
  for (const auto& e : kIds)
    if (e.id == id) return e.name;
  return "?";
}

TheoremId parse_theorem_id(std::string_view name) {
  for (const auto& e : kIds)
    if (name == e.name) return e.id;
  throw StructuralError("unknown theorem id '" + std::string(name) + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& e : kIds) v.push_back(e.id);
    return v;
  }();
  return ids;
}

bool needs_tensor(TheoremId id) {
  switch (id) {
    case TheoremId::T3_2:
    case TheoremId::T3_5:
    case TheoremId::T3_6:
    case TheoremId::T3_9:
    case TheoremId::T2_4:
      return false;
    default:
      return true;
  }
}

Subspace default_subspace(const Matrix& synthesis) {
  const Eigen::Index rank = linalg::numerical_rank(synthesis);
  const Eigen::Index take = std::max<Eigen::Index>(1, (rank + 1) / 2);
  return Subspace::spanned_by(synthesis.leftCols(std::min(take, synthesis.cols())));
}

Report verify_theorem(TheoremId id, const TheoremInput& input, int trials, std::uint64_t seed,
                      double tol) {
  if (trials < 1) throw StructuralError("trials must be at least 1");
  switch (id) {
    case TheoremId::T2_4: return theorem_2_4(input, trials, seed, tol);
    case TheoremId::T3_2: return theorem_3_2(input, trials, seed, tol);
    case TheoremId::T3_5: return theorem_3_5(input, trials, seed, tol);
    case TheoremId::T3_6: return theorem_3_6(input, trials, seed, tol);
    case TheoremId::T3_9: return theorem_3_9(input, trials, seed, tol);
    case TheoremId::T4_3: return theorem_4_3(input, trials, seed, tol);
    case TheoremId::T4_4: return theorem_4_4(input, trials, seed, tol);
    case TheoremId::T4_5a: return theorem_4_5a(input, trials, seed, tol);
    case TheoremId::T4_5b: return theorem_4_5b(input, trials, seed, tol);
    case TheoremId::T4_7: return theorem_4_7(input, trials, seed, tol);
    case TheoremId::T4_8: return theorem_4_8(input, trials, seed, tol);
    case TheoremId::T4_9: return theorem_4_9(input, trials, seed, tol);
  }
  throw StructuralError("unknown theorem id");
}

}  // namespace nhf
