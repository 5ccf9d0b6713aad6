#include "diracspec/matrix2.hpp"

#include <cmath>
#include <complex>

namespace diracspec {

namespace {
using Complex = std::complex<double>;
}

double op_norm(const Matrix2& a) {
  // (s1 + s2)^2 = f + 2g and (s1 - s2)^2 = f - 2g with f = ||a||_F^2,
  // g = |det a|. The difference form cancels catastrophically for nearly
  // scalar matrices (s1 ~ s2), which shows up as quadrature noise, so the
  // clustered case goes through the Jacobi SVD instead.
  const double f = a.squaredNorm();
  if (f == 0.0) return 0.0;
  if (a(0, 1) == Complex(0.0, 0.0) && a(1, 0) == Complex(0.0, 0.0))
    return std::max(std::abs(a(0, 0)), std::abs(a(1, 1)));
  const double g = std::abs(a.determinant());
  const double diff2 = f - 2.0 * g;
  if (diff2 > 1e-6 * f) {
    const double sum = std::sqrt(f + 2.0 * g);
    return 0.5 * (sum + std::sqrt(diff2));
  }
  Eigen::JacobiSVD<Matrix2> svd(a);
  return svd.singularValues()(0);
}

double hs_norm(const Matrix2& a) { return a.norm(); }

PolarPair polar_factorize_matrix(const Matrix2& v) {
  Eigen::JacobiSVD<Matrix2> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d s = svd.singularValues();
  const Eigen::Vector2d rs = s.cwiseSqrt();
  // v = W S X^H, |v|^{1/2} = X S^{1/2} X^H, u |v|^{1/2} = W S^{1/2} X^H
  PolarPair p;
  p.a = svd.matrixV() * rs.asDiagonal() * svd.matrixV().adjoint();
  p.b = svd.matrixU() * rs.asDiagonal() * svd.matrixV().adjoint();
  return p;
}

}  // namespace diracspec
