#ifndef DIRACSPEC_BIRMAN_SCHWINGER_HPP
#define DIRACSPEC_BIRMAN_SCHWINGER_HPP

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "diracspec/complex_maps.hpp"
#include "diracspec/potential.hpp"

namespace diracspec {

struct AssemblyOptions {
  int nodes = 200;          // target node count (rounded to whole panels)
  double truncation = 0.0;  // 0 = choose L from the potential's tail bound
  double tail_tol = 1e-10;
  int panel_order = 10;
};

// Nystrom discretization I + Q_N(z) of the Birman-Schwinger operator,
// with its log-determinant accumulated from the pivoted LU factors.
struct NystromSystem {
  std::vector<double> nodes;
  std::vector<double> weights;
  Eigen::MatrixXcd matrix;  // I + Q_N(z), size 2N x 2N
  Complex logdet{0.0, 0.0};

  // ||Q_N|| in the weight-symmetrized (L2-consistent) scaling.
  double op_norm_q() const;
};

// z-independent assembly data for one (V, theta, grid) combination: node
// layout, polar factors of V(e^theta x) at the nodes, and the
// split-at-diagonal subrule for the self-panel entries. Building the plan
// once and evaluating many z is what makes contour scans affordable.
class AssemblyPlan {
 public:
  AssemblyPlan(const Potential& v, Complex theta, int nodes, double truncation,
               int panel_order = 10);

  NystromSystem evaluate(Complex z, double m) const;
  Complex logdet(Complex z, double m) const;

  int node_count() const;
  double truncation() const;
  Complex theta() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// One-shot assembly per the spec operations; see AssemblyPlan for reuse.
NystromSystem assemble(const Potential& v, Complex z, double m,
                       const AssemblyOptions& opts = {});
NystromSystem dilated_assemble(const Potential& v, Complex z, double m,
                               Complex theta, const AssemblyOptions& opts = {});

// Auto truncation radius used by assemble for the given dilation.
double assembly_truncation(const Potential& v, Complex theta,
                           const AssemblyOptions& opts = {});

struct Rect {
  double re_min, re_max, im_min, im_max;

  Complex center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  double diam() const;
  bool contains(Complex z, double slack = 0.0) const;
};

struct SearchOptions {
  AssemblyOptions assembly;
  Complex theta{0.0, 0.0};
  double det_tol = 1e-8;
  double branch_margin = 1e-3;
  double newton_rel_step = 1e-6;
  int max_depth = 8;
  // when set, each root is re-refined with the dilation angle bumped to
  // this value and the agreement recorded (Prop-5.2-style persistence)
  std::optional<double> persistence_phi;
};

struct RootReport {
  Complex z;
  double residual = 0.0;  // |det(I + Q_N(z))|
  int winding = 0;        // winding of the resolving cell
  std::optional<Complex> persisted_z;
  bool persisted = false;
};

struct CellWinding {
  Rect cell;
  int winding = 0;
};

struct SpectrumSearchReport {
  Rect region{0, 0, 0, 0};
  std::vector<RootReport> roots;  // sorted by (Re, Im)
  int nodes = 0;
  double truncation = 0.0;
  Complex theta{0.0, 0.0};
  int total_winding = 0;
  std::vector<CellWinding> cells;  // nonzero-winding cells examined
  long evaluations = 0;            // logdet evaluations spent
};

// Locates zeros of det(I + Q_N(z)) inside the region by adaptive contour
// winding plus Newton refinement on the log-determinant. The region must
// keep branch_margin distance from the (possibly rotated) free spectrum.
SpectrumSearchReport det_root_search(const Potential& v, double m, Rect region,
                                     const SearchOptions& opts = {});

// Dilated search with the Hypothesis-5.1 checks: Hermitian on the axis,
// 0 < phi < alpha, region inside D_theta. Roots are resonance candidates.
SpectrumSearchReport resonance_search(const Potential& v, double m, double phi,
                                      Rect region, SearchOptions opts = {});

// Distance from the rectangle to sigma_e(H0(theta)); closed form for
// theta = 0, sampled parametrization otherwise.
double rect_spectrum_distance(const Rect& rect, double m, Complex theta);

}  // namespace diracspec

#endif
