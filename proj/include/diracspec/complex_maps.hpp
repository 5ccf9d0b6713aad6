#ifndef DIRACSPEC_COMPLEX_MAPS_HPP
#define DIRACSPEC_COMPLEX_MAPS_HPP

#include <complex>
#include <vector>

#include "diracspec/errors.hpp"

namespace diracspec {

using Complex = std::complex<double>;

// Values of the branch-correct maps at a spectral point z:
//   k    = sqrt(z^2 - m^2),  Im k > 0
//   zeta = (z + m) / k
//   phi  = zeta^2 = (z + m)/(z - m)
//   eta  = eta(|phi|) = sqrt(1/2 + (|phi| + 1/|phi|)/4)
struct BranchValues {
  Complex z;
  double m = 0.0;
  Complex k;
  Complex zeta;
  Complex phi;
  double eta = 1.0;
};

// Annulus rho^{-2} < |w| < rho^2 in the w = phi(z) plane on which the
// Birman-Schwinger norm bound stays below one.
struct AnnulusSpec {
  double rho;
  double inner;  // rho^{-2}
  double outer;  // rho^2
};

struct Disk {
  Complex center;
  double radius = 0.0;  // radius 0 encodes the empty disk
};

// Finite union of closed disks; membership is closed-disk membership and
// radius-0 disks contribute nothing.
struct DiskRegion {
  std::vector<Disk> disks;

  bool contains(Complex z) const;
  bool empty() const;  // true iff every disk has radius 0
};

// eta(s) for s > 0; >= 1 with equality iff s = 1. Evaluated through
// max(s, 1/s) when s leaves [1e-300, 1e300] to avoid overflow.
double eta(double s);

// Distance from z to the free spectrum (-inf,-m] u [m,inf) in closed form.
double dist_to_free_spectrum(Complex z, double m);

// Branch k with Im k > 0.  Throws BranchCutError when z is within
// branch_tol of the essential spectrum.
Complex branch_sqrt(Complex z, double m, double branch_tol = 1e-14);

// Branch k_eff with Im(e^theta k_eff) > 0, the continuation appropriate for
// the dilated operator H0(theta); reduces to branch_sqrt at theta = 0.
// Throws BranchCutError when z is on the rotated spectral curves.
Complex dilated_branch_sqrt(Complex z, double m, Complex theta,
                            double branch_tol = 1e-14);

BranchValues branch_values(Complex z, double m, double branch_tol = 1e-14);

// rho = (1 + sqrt(1 - v1^2)) / v1 for v1 in (0,1); eta(rho^2) * v1 = 1.
AnnulusSpec rho_of_v1(double v1);

// z = m (w + 1) / (w - 1), inverse of phi for m > 0.
Complex mobius_inverse(Complex w, double m);

// Image of the annulus complement under mobius_inverse: two disks with
// centers +-m*x0 and radius m*r0, x0 = (rho^4+1)/(rho^4-1), r0 = sqrt(x0^2-1).
DiskRegion annulus_complement_disks(const AnnulusSpec& spec, double m);

}  // namespace diracspec

#endif
