#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhf/linalg.hpp"
#include "nhf/random.hpp"
#include "nhf/report.hpp"
#include "nhf/types.hpp"

namespace nhf {

const char* to_string(Field field) {
  return field == Field::real ? "real" : "complex";
}

Field field_from_string(const std::string& name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw StructuralError("unknown field '" + name + "' (expected real or complex)");
}

// ---------------------------------------------------------------------------
// Report

Check& Report::add(std::string name, double worst_violation, double tolerance,
                   std::string witness) {
  Check c;
  c.name = std::move(name);
  c.worst_violation = worst_violation;
  c.tolerance = tolerance;
  c.pass = !std::isnan(worst_violation) && worst_violation <= tolerance;
  c.witness = std::move(witness);
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::add_flag(std::string name, bool ok, std::string witness) {
  Check c;
  c.name = std::move(name);
  c.pass = ok;
  c.worst_violation = ok ? 0.0 : 1.0;
  c.witness = std::move(witness);
  checks_.push_back(std::move(c));
  return checks_.back();
}

void Report::append(const Report& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::pass() const {
  return std::all_of(checks_.begin(), checks_.end(),
                     [](const Check& c) { return c.pass; });
}

bool WorstCase::replaces(double violation) const {
  if (std::isnan(value_)) return false;
  return first_ || std::isnan(violation) || violation > value_;
}

void WorstCase::observe(double violation, std::string witness) {
  if (!replaces(violation)) return;
  value_ = violation;
  witness_ = std::move(witness);
  first_ = false;
}

void WorstCase::observe(double violation, int trial) {
  if (replaces(violation)) observe(violation, "trial " + std::to_string(trial));
}

// ---------------------------------------------------------------------------
// Rng

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return Rng(z ^ (z >> 31));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

Scalar Rng::scalar(Field field) {
  if (field == Field::real) return {normal(), 0.0};
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Vector Rng::gaussian_vector(Eigen::Index size, Field field) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = scalar(field);
  return v;
}

Matrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Field field) {
  Matrix m(rows, cols);
  // column-major fill order is part of the corpus contract
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = scalar(field);
  return m;
}

Vector Rng::unit_vector(Eigen::Index size, Field field) {
  Vector v = gaussian_vector(size, field);
  double n = v.norm();
  while (n == 0.0) {
    v = gaussian_vector(size, field);
    n = v.norm();
  }
  return v / n;
}

// ---------------------------------------------------------------------------
// linalg

namespace linalg {

RangeFactor range_factor(const Matrix& a, double cutoff) {
  RangeFactor out;
  if (a.size() == 0) {
    out.left = Matrix(a.rows(), 0);
    out.right = Matrix(a.cols(), 0);
    out.singular = RealVector(0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  out.largest = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff * out.largest && s(r) > 0.0) ++r;
  out.left = svd.matrixU().leftCols(r);
  out.right = svd.matrixV().leftCols(r);
  out.singular = s.head(r);
  return out;
}

Matrix pseudo_inverse(const Matrix& a, double cutoff) {
  const RangeFactor f = range_factor(a, cutoff);
  const RealVector inv = f.singular.cwiseInverse();
  return f.right * inv.cast<Scalar>().asDiagonal() * f.left.adjoint();
}

Eigen::Index numerical_rank(const Matrix& a, double cutoff) {
  return range_factor(a, cutoff).rank();
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double outside_residual(const Matrix& basis, const Matrix& x) {
  if (x.size() == 0) return 0.0;
  const Matrix rest = x - basis * (basis.adjoint() * x);
  return spectral_norm(rest);
}

HermitianEigen hermitian_eigen(const Matrix& a) {
  const Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

}  // namespace linalg
}  // namespace nhf
