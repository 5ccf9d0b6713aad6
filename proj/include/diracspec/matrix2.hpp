#ifndef DIRACSPEC_MATRIX2_HPP
#define DIRACSPEC_MATRIX2_HPP

#include <Eigen/Dense>

namespace diracspec {

using Matrix2 = Eigen::Matrix2cd;

// Spectral norm (largest singular value) from the closed-form 2x2 singular
// values; no iterative solver involved.
double op_norm(const Matrix2& a);

double hs_norm(const Matrix2& a);

// Pointwise polar factors of a single matrix v = b * a with
// a = |v|^{1/2}, b = u |v|^{1/2}; rank-deficient v handled through the SVD.
struct PolarPair {
  Matrix2 a;
  Matrix2 b;
};

PolarPair polar_factorize_matrix(const Matrix2& v);

}  // namespace diracspec

#endif
