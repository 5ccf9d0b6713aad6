#ifndef DIRACSPEC_QUADRATURE_HPP
#define DIRACSPEC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace diracspec {

struct QuadOptions {
  double abs_tol = 1e-10;
  unsigned max_depth = 15;
};

// Adaptive Gauss-Kronrod integration of a real-valued integrand on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

// Same, with the interval split at interior kink locations first.
double integrate_with_kinks(const std::function<double(double)>& f, double a,
                            double b, const std::vector<double>& kinks,
                            const QuadOptions& opts = {});

// p-point Gauss-Legendre rule on the reference interval [-1, 1],
// nodes ascending.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const PanelRule& gauss_rule(int p);

}  // namespace diracspec

#endif
