#include "diracspec/delta_models.hpp"

#include <algorithm>
#include <cmath>

#include "diracspec/enclosures.hpp"

namespace diracspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DeltaSpectrum delta_spectrum(const DeltaPotential& p) {
  if (!(p.kappa > 0.0)) throw DomainError("delta_spectrum: kappa > 0 required");
  if (p.mass < 0.0) throw DomainError("delta_spectrum: mass must be nonnegative");
  DeltaSpectrum spec;
  if (p.kappa < 1.0)
    spec.regime = DeltaRegime::Subcritical;
  else
    spec.regime = p.mass == 0.0 ? DeltaRegime::CriticalDense
                                : DeltaRegime::Supercritical;

  const Complex phase = std::exp(Complex(0.0, -p.tau));
  const Complex root = std::sqrt(Complex(1.0 - p.kappa * p.kappa, 0.0));
  const Complex zp = phase * (1.0 + root) / p.kappa;
  const Complex zm = phase * (1.0 - root) / p.kappa;
  spec.double_root = (p.kappa == 1.0);

  std::vector<Complex> roots{zp};
  if (!spec.double_root) roots.push_back(zm);
  for (const Complex& zeta : roots) {
    if (zeta.imag() >= 0.0) continue;  // eigenvalues need Im zeta < 0
    spec.zetas.push_back(zeta);
    if (p.mass > 0.0) {
      const Complex w = zeta * zeta;
      spec.eigenvalues.push_back(p.mass * (w + 1.0) / (w - 1.0));
    }
    // m = 0: zeta(z) is +-1, never matched by these roots with Im < 0
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            [](Complex a, Complex b) {
              return a.real() != b.real() ? a.real() < b.real()
                                          : a.imag() < b.imag();
            });
  return spec;
}

double delta_on_disk_boundary(const DeltaPotential& p) {
  if (!(p.kappa > 0.0 && p.kappa < 1.0) || !(p.tau > 0.0 && p.tau < kPi) ||
      !(p.mass > 0.0))
    throw ConditionViolatedError(
        "delta_on_disk_boundary: requires kappa < 1, tau in (0,pi), m > 0");
  const DeltaSpectrum spec = delta_spectrum(p);
  const EnclosureResult enc = theorem1_disks(p.kappa, p.mass);
  double residual = 0.0;
  for (const Complex& z : spec.eigenvalues) {
    const Complex center = z.real() >= 0.0
                               ? Complex(p.mass * enc.x0, 0.0)
                               : Complex(-p.mass * enc.x0, 0.0);
    residual = std::max(residual,
                        std::abs(std::abs(z - center) - p.mass * enc.r0));
  }
  return residual;
}

std::optional<HalfPlane> delta_dense_halfplane(const DeltaPotential& p) {
  if (!(p.kappa >= 1.0) || p.mass != 0.0)
    throw ConditionViolatedError(
        "delta_dense_halfplane: requires kappa >= 1 and m = 0");
  const double tau_c = std::acos(1.0 / p.kappa);
  if (std::abs(p.tau - tau_c) < 1e-12) return HalfPlane::Upper;
  if (std::abs(p.tau - (kPi - tau_c)) < 1e-12) return HalfPlane::Lower;
  return std::nullopt;
}

}  // namespace diracspec
