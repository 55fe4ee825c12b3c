#ifndef NHF_LINALG_HPP
#define NHF_LINALG_HPP

#include "nhf/types.hpp"

// Small dense helpers shared by the frame, atomic and tensor modules. All
// rank decisions go through `tol::rank_cutoff` relative to the largest
// singular value.
namespace nhf::linalg {

/// Thin SVD split into the numerically nonzero part.
struct RangeFactor {
  Matrix left;            // orthonormal basis of the range (rows x rank)
  RealVector singular;    // retained singular values, descending
  Matrix right;           // matching right singular vectors (cols x rank)
  double largest = 0.0;   // largest singular value (0 for the zero matrix)
  Eigen::Index rank() const { return singular.size(); }
};

RangeFactor range_factor(const Matrix& a, double cutoff = tol::rank_cutoff);

Matrix pseudo_inverse(const Matrix& a, double cutoff = tol::rank_cutoff);
Eigen::Index numerical_rank(const Matrix& a, double cutoff = tol::rank_cutoff);
double spectral_norm(const Matrix& a);

/// ||(I - P) x||_2 where P projects onto span(basis); basis has orthonormal
/// columns.
double outside_residual(const Matrix& basis, const Matrix& x);

/// Eigen-decomposition of the Hermitian part of `a`, ascending eigenvalues.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& a);

Matrix adjoint(const Matrix& a);

}  // namespace nhf::linalg

#endif  // NHF_LINALG_HPP
