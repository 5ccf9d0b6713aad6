#ifndef DIRACSPEC_POTENTIAL_HPP
#define DIRACSPEC_POTENTIAL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diracspec/complex_maps.hpp"
#include "diracspec/matrix2.hpp"
#include "diracspec/quadrature.hpp"

#include <json.hpp>

namespace diracspec {

enum class DecayClass { L1, L1PlusLinf0, Lp };

// 2x2 matrix-valued potential together with the metadata the norm and
// assembly machinery needs: decay certificates, analyticity sector for
// dilation, Hermitian/sign-definiteness flags.
//
// Catalog entries evaluate on complex rays through their closed-form
// analytic continuation; tabulated potentials live on the axis only.
class Potential {
 public:
  Matrix2 operator()(double x) const;

  // V(e^{i phi} x); throws AnalyticityViolationError when phi is outside
  // the sector (or no sector is declared).
  Matrix2 eval_ray(double phi, double x) const;

  // V(s x) for complex s = e^theta; requires |arg s| within the sector.
  Matrix2 eval_scaled(Complex s, double x) const;

  double norm_at(double x) const;  // ||V(x)||

  // Upper bound for the L1 mass of ||V(e^{i phi} .)|| beyond |x| > L.
  double tail_bound(double L, double phi = 0.0) const;

  // Sup bound of ||V(e^{i phi} x)|| over |x| >= L.
  double tail_sup(double L, double phi = 0.0) const;

  // Smallest L (up to ~10%) with tail_bound(L, phi) <= tol; throws
  // NonIntegrableError if no L below l_max certifies the tail.
  double truncation_radius(double tol = 1e-10, double phi = 0.0,
                           double l_max = 1e6) const;

  const std::string& id() const;
  const nlohmann::json& description() const;
  DecayClass decay_class() const;
  std::optional<double> alpha() const;
  bool hermitian_on_axis() const;
  bool scalar_sign_definite() const;
  bool tabulated() const;
  double peak_hint() const;
  const std::vector<double>& kinks() const;  // x where ||V|| is non-smooth
  bool is_zero() const;

  Potential scaled(double c) const;

  // catalog
  static Potential zero();
  static Potential gaussian_scalar(double a, double b);
  static Potential imaginary_gaussian(double a, double b);
  static Potential sinh_example(Complex mu);
  static Potential matrix_table(std::vector<double> x,
                                std::vector<Matrix2> values);
  static Potential matrix_table_csv(const std::string& path);

  struct Custom {
    std::string id = "custom";
    std::function<Matrix2(double)> eval_real;
    std::function<Matrix2(Complex)> eval_complex;  // optional
    std::function<double(double, double)> tail;    // (L, phi)
    std::function<double(double, double)> tail_sup;
    DecayClass decay = DecayClass::L1;
    std::optional<double> alpha;
    bool hermitian_on_axis = false;
    bool scalar_sign_definite = false;
    double peak_hint = 0.0;
    std::vector<double> kinks;
  };
  static Potential from_function(Custom c);

  // External description format: gaussian_scalar / sinh /
  // imaginary_gaussian / matrix_table objects.
  static Potential from_json(const nlohmann::json& j);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit Potential(std::shared_ptr<const Impl> impl);
};

// Pointwise polar factorization V = B A, A = |V|^{1/2}, B = U |V|^{1/2}.
struct Factorization {
  std::function<Matrix2(double)> A;
  std::function<Matrix2(double)> B;
};

struct ClippedDecomposition {
  double epsilon = 0.0;
  std::function<Matrix2(double)> W;  // L1 part
  std::function<Matrix2(double)> X;  // bounded part, ||X(x)|| <= epsilon
  double l1_of_W = 0.0;              // upper bound used in place of C_eps
};

double l1_norm(const Potential& v, const QuadOptions& opts = {});
double lp_norm(const Potential& v, double p, const QuadOptions& opts = {});
Factorization polar_factorize(const Potential& v);
ClippedDecomposition clip_decompose(const Potential& v, double epsilon,
                                    const QuadOptions& opts = {});
double f_v(const Potential& v, double s, const QuadOptions& opts = {});
double dilated_l1_norm(const Potential& v, double phi,
                       const QuadOptions& opts = {});
double v_theta(const Potential& v, double phi0, const QuadOptions& opts = {});

// L1 norms of |V_11| and |V_22| separately (Theorem 3.2 inputs).
std::pair<double, double> diagonal_l1_norms(const Potential& v,
                                            const QuadOptions& opts = {});

}  // namespace diracspec

#endif
