#include "diracspec/complex_maps.hpp"

#include <algorithm>
#include <cmath>

namespace diracspec {

bool DiskRegion::contains(Complex z) const {
  for (const auto& d : disks) {
    if (d.radius > 0.0 && std::abs(z - d.center) <= d.radius) return true;
  }
  return false;
}

bool DiskRegion::empty() const {
  return std::none_of(disks.begin(), disks.end(),
                      [](const Disk& d) { return d.radius > 0.0; });
}

double eta(double s) {
  if (!(s > 0.0)) throw DomainError("eta: s must be positive");
  const double big = std::max(s, 1.0 / s);
  if (big > 1e300) return 0.5 * std::sqrt(big);  // eta ~ sqrt(s)/2
  return std::sqrt(0.5 + 0.25 * (s + 1.0 / s));
}

double dist_to_free_spectrum(Complex z, double m) {
  if (std::abs(z.real()) >= m) return std::abs(z.imag());
  return std::min(std::abs(z - Complex(m, 0.0)), std::abs(z + Complex(m, 0.0)));
}

Complex branch_sqrt(Complex z, double m, double branch_tol) {
  if (m < 0.0) throw DomainError("branch_sqrt: mass must be nonnegative");
  if (dist_to_free_spectrum(z, m) < branch_tol)
    throw BranchCutError("branch_sqrt: z on the essential spectrum");
  if (m == 0.0) {
    // k = +-z exactly; keeps phi = 1 exact in the massless case
    return z.imag() > 0.0 ? z : -z;
  }
  Complex k = std::sqrt(z * z - m * m);
  if (k.imag() <= 0.0) k = -k;
  return k;
}

Complex dilated_branch_sqrt(Complex z, double m, Complex theta,
                            double branch_tol) {
  if (theta == Complex(0.0, 0.0)) return branch_sqrt(z, m, branch_tol);
  if (m < 0.0) throw DomainError("dilated_branch_sqrt: mass must be nonnegative");
  const Complex rot = std::exp(theta);
  Complex k = (m == 0.0) ? z : std::sqrt(z * z - m * m);
  if (std::imag(rot * k) <= 0.0) k = -k;
  // Im(e^theta k) = 0 for both signs exactly on the rotated spectral curves.
  if (std::abs(std::imag(rot * k)) < branch_tol * std::max(1.0, std::abs(k)))
    throw BranchCutError("dilated_branch_sqrt: z on the rotated spectrum");
  return k;
}

BranchValues branch_values(Complex z, double m, double branch_tol) {
  BranchValues bv;
  bv.z = z;
  bv.m = m;
  bv.k = branch_sqrt(z, m, branch_tol);
  if (m == 0.0) {
    bv.zeta = z / bv.k;  // +-1 exactly
    bv.phi = Complex(1.0, 0.0);
    bv.eta = 1.0;
    return bv;
  }
  bv.zeta = (z + m) / bv.k;
  bv.phi = bv.zeta * bv.zeta;
  bv.eta = eta(std::abs(bv.phi));
  return bv;
}

AnnulusSpec rho_of_v1(double v1) {
  if (!(v1 > 0.0 && v1 < 1.0))
    throw DomainError("rho_of_v1: v1 must lie in (0,1)");
  const double rho = (1.0 + std::sqrt(1.0 - v1 * v1)) / v1;
  return AnnulusSpec{rho, 1.0 / (rho * rho), rho * rho};
}

Complex mobius_inverse(Complex w, double m) {
  if (!(m > 0.0)) throw DomainError("mobius_inverse: mass must be positive");
  if (w == Complex(1.0, 0.0)) throw PoleAtOneError("mobius_inverse: w = 1");
  return m * (w + 1.0) / (w - 1.0);
}

DiskRegion annulus_complement_disks(const AnnulusSpec& spec, double m) {
  const double r4 = spec.outer * spec.outer;  // rho^4
  double x0, r0;
  if (std::isinf(r4)) {
    x0 = 1.0;
    r0 = 0.0;
  } else {
    x0 = (r4 + 1.0) / (r4 - 1.0);
    r0 = std::sqrt(x0 * x0 - 1.0);
  }
  DiskRegion region;
  region.disks = {Disk{Complex(m * x0, 0.0), m * r0},
                  Disk{Complex(-m * x0, 0.0), m * r0}};
  return region;
}

}  // namespace diracspec
