#ifndef DIRACSPEC_TEST_HELPERS_HPP
#define DIRACSPEC_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "diracspec/potential.hpp"

namespace diracspec::testing {

// a e^{-r|x|} I, the workhorse with a closed-form F_V and clip integral
inline Potential exp_scalar(double a, double r) {
  Potential::Custom c;
  c.id = "exp_scalar";
  c.eval_real = [a, r](double x) -> Matrix2 {
    return a * std::exp(-r * std::abs(x)) * Matrix2::Identity();
  };
  c.tail = [a, r](double L, double) { return 2.0 * std::abs(a) / r * std::exp(-r * L); };
  c.tail_sup = [a, r](double L, double) { return std::abs(a) * std::exp(-r * L); };
  c.hermitian_on_axis = a == std::abs(a);
  c.scalar_sign_definite = true;
  c.kinks = {0.0};
  return Potential::from_function(std::move(c));
}

// Gaussian profile times a fixed complex matrix
inline Potential matrix_gaussian(const Matrix2& m, double b) {
  Potential::Custom c;
  c.id = "matrix_gaussian";
  c.eval_real = [m, b](double x) -> Matrix2 { return std::exp(-b * x * x) * m; };
  c.eval_complex = [m, b](Complex zx) -> Matrix2 {
    return std::exp(-b * zx * zx) * m;
  };
  const double norm = op_norm(m);
  c.tail = [norm, b](double L, double phi) {
    const double cb = b * std::cos(2.0 * phi);
    return norm * std::sqrt(3.14159265358979323846 / cb) *
           std::erfc(std::sqrt(cb) * L);
  };
  c.tail_sup = [norm, b](double L, double phi) {
    return norm * std::exp(-b * std::cos(2.0 * phi) * L * L);
  };
  c.alpha = 3.14159265358979323846 / 4.0;
  c.hermitian_on_axis = (m - m.adjoint().eval()).norm() < 1e-14;
  return Potential::from_function(std::move(c));
}

// narrow Gaussian bump of unit mass times i kappa W_tau, the mollified
// delta potential
inline Potential delta_bump(double kappa, double tau, double width) {
  Potential::Custom c;
  c.id = "delta_bump";
  const Complex d0 = Complex(0.0, kappa) * std::exp(Complex(0.0, tau));
  const Complex d1 = Complex(0.0, kappa) * std::exp(Complex(0.0, -tau));
  const double norm = 1.0 / (width * std::sqrt(3.14159265358979323846));
  c.eval_real = [=](double x) -> Matrix2 {
    Matrix2 v = Matrix2::Zero();
    const double g = norm * std::exp(-x * x / (width * width));
    v(0, 0) = d0 * g;
    v(1, 1) = d1 * g;
    return v;
  };
  c.tail = [=](double L, double) {
    return kappa * std::erfc(L / width);
  };
  c.tail_sup = [=](double L, double) {
    return kappa * norm * std::exp(-L * L / (width * width));
  };
  return Potential::from_function(std::move(c));
}

inline Matrix2 random_matrix(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace diracspec::testing

#endif
