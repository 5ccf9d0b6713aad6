#ifndef DIRACSPEC_RESONANCE_REGIONS_HPP
#define DIRACSPEC_RESONANCE_REGIONS_HPP

#include <utility>
#include <vector>

#include "diracspec/enclosures.hpp"
#include "diracspec/potential.hpp"

namespace diracspec {

// Dilation setting for the resonance enclosures: Hermitian-on-axis
// potential, dilation angle phi = Im theta below the sector half-angle.
struct ResonanceContext {
  Potential v;
  double m = 0.0;
  double phi = 0.0;
};

// Membership in D_theta = { +-sqrt(e^{-2 omega} p^2 + m^2) : p real,
// Im omega in [0, phi] }, equivalently arg(z^2 - m^2) in [-2 phi, 0].
bool in_d_theta(Complex z, double phi, double m);

// Disks K_{m r_theta}(+-m x_theta) enclosing the resonances uncovered in
// D_theta; Theorem-2.1 formulas with v_theta in place of ||V||_1.
EnclosureResult resonance_disks(const ResonanceContext& ctx);

// Intervals (+-(m(x0 -+ r0), m(x0 +- r0))) containing every eigenvalue,
// embedded ones included.
std::pair<std::pair<double, double>, std::pair<double, double>>
embedded_eigenvalue_intervals(double v1, double m);

// Largest dilation angle with v_theta < 1 for a massless potential: below
// it the uncovered region carries no resonances at all.
double phi0_massless(const Potential& v, const QuadOptions& opts = {});

struct CurvePoint {
  double phi = 0.0;
  Complex z;
};

// Intersections of the resonance disk boundaries with the boundary of
// D_theta, swept over phi; right family in the lower half plane, left
// family its mirror.
struct ExclusionCurves {
  std::vector<CurvePoint> right;
  std::vector<CurvePoint> left;
};

ExclusionCurves exclusion_curves(const Potential& v, double m, double phi_max,
                                 int samples);

}  // namespace diracspec

#endif
