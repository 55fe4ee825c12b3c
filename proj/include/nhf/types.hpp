#ifndef NHF_TYPES_HPP
#define NHF_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nhf {

// Every space is stored over the complex field; real instances simply carry
// zero imaginary parts. The Field tag decides sampling and serialization.
using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

enum class Field { real, complex };

const char* to_string(Field field);
Field field_from_string(const std::string& name);

namespace tol {
/// Default acceptance tolerance for relative violations.
inline constexpr double check = 1e-9;
/// Relative singular-value cutoff used by every rank decision.
inline constexpr double rank_cutoff = 1e-10;
/// Fixed tuples whose singular-value ratio falls below this are rejected as
/// ill-conditioned when building an induced space.
inline constexpr double conditioning = 1e-12;
/// Second/first singular value ratio below which a product vector (or a
/// coefficient array) counts as a simple tensor.
inline constexpr double separability = 1e-8;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatches, malformed inputs, dependent or ill-conditioned tuples.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be nonnegative came out clearly negative.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A requested vector or operator range is not reachable by the sequence.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace nhf

#endif  // NHF_TYPES_HPP
