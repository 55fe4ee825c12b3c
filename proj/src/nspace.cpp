#include "nhf/nspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nhf/random.hpp"

namespace nhf {

AmbientSpace::AmbientSpace(int dim, Field f) : dimension(dim), field(f) {
  if (dim < 1) throw StructuralError("ambient dimension must be positive");
}

void AmbientSpace::require(const Vector& v, const char* what) const {
  if (v.size() != dimension)
    throw StructuralError(std::string(what) + " has length " + std::to_string(v.size()) +
                          ", ambient dimension is " + std::to_string(dimension));
}

FixedTuple::FixedTuple(std::vector<Vector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw StructuralError("fixed tuple needs at least one vector (n >= 2)");
  const auto d = vectors_.front().size();
  for (const auto& v : vectors_)
    if (v.size() != d) throw StructuralError("fixed tuple vectors have different lengths");
  if (static_cast<Eigen::Index>(vectors_.size()) > d)
    throw StructuralError("fixed tuple has " + std::to_string(vectors_.size()) +
                          " vectors in dimension " + std::to_string(d) +
                          "; they cannot be independent");
  Eigen::JacobiSVD<Matrix> svd(matrix());
  const RealVector& s = svd.singularValues();
  const double eps = std::numeric_limits<double>::epsilon() * static_cast<double>(d);
  if (s(0) == 0.0 || s(s.size() - 1) <= eps * s(0))
    throw StructuralError("fixed tuple vectors are linearly dependent");
}

Eigen::Index FixedTuple::ambient_dimension() const {
  return vectors_.empty() ? 0 : vectors_.front().size();
}

Matrix FixedTuple::matrix() const {
  Matrix m(ambient_dimension(), static_cast<Eigen::Index>(vectors_.size()));
  for (std::size_t k = 0; k < vectors_.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vectors_[k];
  return m;
}

double FixedTuple::conditioning() const {
  Eigen::JacobiSVD<Matrix> svd(matrix());
  const RealVector& s = svd.singularValues();
  return s(s.size() - 1) / s(0);
}

Scalar scalar_inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw StructuralError("scalar product of vectors with lengths " + std::to_string(x.size()) +
                          " and " + std::to_string(y.size()));
  // Eigen's dot is conjugate-linear in its first argument.
  return y.dot(x);
}

namespace {

void require_same_length(const Vector& x, const Vector& y, std::span<const Vector> rest) {
  const auto d = x.size();
  bool ok = y.size() == d;
  for (const auto& a : rest) ok = ok && a.size() == d;
  if (!ok) throw StructuralError("n-inner product arguments have mismatched lengths");
}

Scalar determinant(const Matrix& m) {
  if (m.rows() == 1) return m(0, 0);
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

double hadamard_scale(std::span<const Vector> rest) {
  double s = 1.0;
  for (const auto& a : rest) s *= a.squaredNorm();
  return s;
}

}  // namespace

Scalar gram_determinant(std::span<const Vector> vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (n == 0) return 1.0;
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) g(j, k) = scalar_inner(vectors[j], vectors[k]);
  return determinant(g);
}

Scalar n_inner(const Vector& x, const Vector& y, std::span<const Vector> rest) {
  require_same_length(x, y, rest);
  const auto n = static_cast<Eigen::Index>(rest.size()) + 1;
  Matrix g(n, n);
  g(0, 0) = scalar_inner(x, y);
  for (Eigen::Index k = 1; k < n; ++k) {
    g(0, k) = scalar_inner(x, rest[k - 1]);
    g(k, 0) = scalar_inner(rest[k - 1], y);
    for (Eigen::Index j = 1; j < n; ++j) g(k, j) = scalar_inner(rest[k - 1], rest[j - 1]);
  }
  return determinant(g);
}

Scalar n_inner(const Vector& x, const Vector& y, const FixedTuple& fixed) {
  return n_inner(x, y, std::span<const Vector>(fixed.vectors()));
}

double n_norm(const Vector& x, std::span<const Vector> rest, double tol) {
  const double radicand = n_inner(x, x, rest).real();
  if (radicand >= 0.0) return std::sqrt(radicand);
  const double scale = x.squaredNorm() * hadamard_scale(rest);
  if (radicand < -tol * scale)
    throw DegeneracyError("n-norm radicand " + std::to_string(radicand) +
                          " is negative beyond tolerance");
  return 0.0;
}

double n_norm(const Vector& x, const FixedTuple& fixed, double tol) {
  return n_norm(x, std::span<const Vector>(fixed.vectors()), tol);
}

// ---------------------------------------------------------------------------

Report check_axioms(const AmbientSpace& space, int n, int trials, std::uint64_t seed,
                    double tol) {
  if (trials < 1) throw StructuralError("trials must be at least 1");
  if (n < 2) throw StructuralError("n-inner products need n >= 2");
  if (space.dimension < n)
    throw StructuralError("dimension " + std::to_string(space.dimension) +
                          " is smaller than n = " + std::to_string(n));

  const Field field = space.field;
  const int d = space.dimension;
  const int slots = n - 1;

  WorstCase nonneg, dependent, independent, permutation, conj_sym, homogeneity, additivity;
  WorstCase norm_perm, norm_homog, triangle, schwarz, parallelogram;

  std::vector<int> order(static_cast<std::size_t>(slots));
  std::vector<int> all_order(static_cast<std::size_t>(n));

  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    std::vector<Vector> rest;
    for (int k = 0; k < slots; ++k) rest.push_back(rng.gaussian_vector(d, field));
    const Vector x = rng.gaussian_vector(d, field);
    const Vector y = rng.gaussian_vector(d, field);
    const Vector z = rng.gaussian_vector(d, field);
    const Scalar alpha = rng.scalar(field) * 3.0;

    const double hs = hadamard_scale(rest);
    const double rs = std::sqrt(hs);
    const double sxy = x.norm() * y.norm() * hs;
    const Scalar xy = n_inner(x, y, rest);
    const Scalar xx = n_inner(x, x, rest);

    // (I) positivity and the linear-dependence characterization
    nonneg.observe(std::max(0.0, -xx.real()) / (x.squaredNorm() * hs) +
                       std::abs(xx.imag()) / (x.squaredNorm() * hs),
                   t);
    Vector dep = Vector::Zero(d);
    for (const auto& a : rest) dep += rng.scalar(field) * a;
    const double dep_scale = std::max(dep.squaredNorm(), 1e-300) * hs;
    dependent.observe(std::abs(n_inner(dep, dep, rest)) / dep_scale, t);
    independent.observe(xx.real() > tol * x.squaredNorm() * hs ? 0.0 : 1.0, t);

    // (II) permutation invariance of the fixed slots
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<Vector> permuted;
      for (int k : order) permuted.push_back(rest[static_cast<std::size_t>(k)]);
      permutation.observe(std::abs(n_inner(x, y, permuted) - xy) / sxy, t);
    } while (std::next_permutation(order.begin(), order.end()));

    // (III) conjugate symmetry
    conj_sym.observe(std::abs(xy - std::conj(n_inner(y, x, rest))) / sxy, t);

    // (IV) homogeneity in the first slot
    homogeneity.observe(std::abs(n_inner(alpha * x, y, rest) - alpha * xy) /
                            (std::abs(alpha) * sxy),
                        t);

    // (V) additivity in the first slot
    const double add_scale = (x.norm() + y.norm()) * z.norm() * hs;
    additivity.observe(
        std::abs(n_inner(x + y, z, rest) - n_inner(x, z, rest) - n_inner(y, z, rest)) / add_scale,
        t);

    // n-norm axioms
    const double nx = n_norm(x, rest, tol);
    const double ny = n_norm(y, rest, tol);
    std::vector<Vector> tuple{x};
    tuple.insert(tuple.end(), rest.begin(), rest.end());
    std::iota(all_order.begin(), all_order.end(), 0);
    do {
      std::vector<Vector> permuted;
      for (int k : all_order) permuted.push_back(tuple[static_cast<std::size_t>(k)]);
      const std::span<const Vector> tail(permuted.data() + 1, permuted.size() - 1);
      norm_perm.observe(std::abs(n_norm(permuted.front(), tail, tol) - nx) / (x.norm() * rs), t);
    } while (std::next_permutation(all_order.begin(), all_order.end()));
    norm_homog.observe(std::abs(n_norm(alpha * x, rest, tol) - std::abs(alpha) * nx) /
                           (std::abs(alpha) * x.norm() * rs),
                       t);
    triangle.observe(std::max(0.0, n_norm(x + y, rest, tol) - nx - ny) /
                         ((x.norm() + y.norm()) * rs),
                     t);

    schwarz.observe(std::max(0.0, std::abs(xy) - nx * ny) / sxy, t);

    const double np = n_norm(x + y, rest, tol);
    const double nm = n_norm(x - y, rest, tol);
    const double para_scale = (x.norm() + y.norm()) * (x.norm() + y.norm()) * hs;
    parallelogram.observe(std::abs(np * np + nm * nm - 2.0 * (nx * nx + ny * ny)) / para_scale, t);
  }

  Report report("axioms");
  report.add("inner.I.nonnegative", nonneg.value(), tol, nonneg.witness());
  report.add("inner.I.dependent_is_zero", dependent.value(), tol, dependent.witness());
  report.add("inner.I.independent_is_positive", independent.value(), 0.0, independent.witness());
  report.add("inner.II.permutation", permutation.value(), tol, permutation.witness());
  report.add("inner.III.conjugate_symmetry", conj_sym.value(), tol, conj_sym.witness());
  report.add("inner.IV.homogeneity", homogeneity.value(), tol, homogeneity.witness());
  report.add("inner.V.additivity", additivity.value(), tol, additivity.witness());
  report.add("norm.II.permutation", norm_perm.value(), tol, norm_perm.witness());
  report.add("norm.III.homogeneity", norm_homog.value(), tol, norm_homog.witness());
  report.add("norm.IV.triangle", triangle.value(), tol, triangle.witness());
  report.add("schwarz", schwarz.value(), tol, schwarz.witness());
  report.add("parallelogram", parallelogram.value(), tol, parallelogram.witness());
  return report;
}

}  // namespace nhf
