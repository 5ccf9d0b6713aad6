#ifndef DIRACSPEC_DELTA_MODELS_HPP
#define DIRACSPEC_DELTA_MODELS_HPP

#include <optional>
#include <vector>

#include "diracspec/complex_maps.hpp"

namespace diracspec {

// V_tau = i kappa delta_0 diag(e^{i tau}, e^{-i tau}); the solved
// determinant condition, no operator realization.
struct DeltaPotential {
  double kappa = 0.0;  // > 0
  double tau = 0.0;    // in [-pi, pi)
  double mass = 0.0;
};

enum class DeltaRegime {
  Subcritical,    // kappa < 1
  CriticalDense,  // kappa >= 1, m = 0
  Supercritical,  // kappa >= 1, m > 0
};

enum class HalfPlane { Upper, Lower };

struct DeltaSpectrum {
  std::vector<Complex> eigenvalues;  // 0, 1 or 2 entries, sorted by (Re, Im)
  std::vector<Complex> zetas;        // kept roots, Im zeta < 0
  DeltaRegime regime = DeltaRegime::Subcritical;
  bool double_root = false;  // kappa = 1: zeta+ = zeta-
};

// zeta_pm = e^{-i tau} (1 +- sqrt(1 - kappa^2)) / kappa; roots with
// Im zeta < 0 map to eigenvalues z = m (zeta^2 + 1)/(zeta^2 - 1) for m > 0.
DeltaSpectrum delta_spectrum(const DeltaPotential& p);

// Sharpness residual: max over the eigenvalues of the distance to its
// Theorem-2.1 disk boundary; subcritical regime with tau in (0, pi) only.
double delta_on_disk_boundary(const DeltaPotential& p);

// Dense nonreal point spectrum of the massless critical family.
std::optional<HalfPlane> delta_dense_halfplane(const DeltaPotential& p);

}  // namespace diracspec

#endif
