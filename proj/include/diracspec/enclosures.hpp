#ifndef DIRACSPEC_ENCLOSURES_HPP
#define DIRACSPEC_ENCLOSURES_HPP

#include <optional>
#include <utility>

#include "diracspec/complex_maps.hpp"
#include "diracspec/potential.hpp"

namespace diracspec {

// Two-disk eigenvalue enclosure K_{m r0}(+-m x0).
struct EnclosureResult {
  DiskRegion disks;
  double x0 = 1.0;
  double r0 = 0.0;
  double v1 = 0.0;
  double mass = 0.0;
};

enum class Criterion { L1Disks, Imaginary, Ceps, Fv, Lp, None };

// Signed-margin point verdict: excluded iff margin > 0.  Strict paper
// inequalities carry over with no tolerance slack, so boundary points
// report not-excluded; the margin level set traces the boundary curves.
struct ExclusionVerdict {
  Complex z;
  bool excluded = false;
  Criterion criterion = Criterion::None;
  double margin = 0.0;
};

// x0 = sqrt((v^4 - 2v^2 + 2)/(4(1 - v^2)) + 1/2), r0 = sqrt(x0^2 - 1).
EnclosureResult theorem1_disks(double v1, double m);

// Disks of the c-restored operator H(c) - mc^2: theorem1_disks at
// v1/c and mass mc^2, centers shifted by -mc^2.
EnclosureResult nonrelativistic_disks(double v1_physical, double m, double c);

// Bound for ||(H - z)^{-1}|| outside the enclosure disks.
double resolvent_bound(Complex z, double v1, double m);

ExclusionVerdict theorem1_excluded(Complex z, double v1, double m);
ExclusionVerdict imaginary_potential_excluded(Complex z, double l1_v11,
                                              double l1_v22, double m);
ExclusionVerdict ceps_excluded(Complex z, const ClippedDecomposition& dec,
                               double m);
ExclusionVerdict fv_excluded(Complex z, const Potential& v, double m);
ExclusionVerdict lp_excluded(Complex z, double vp, double p, double m);

// Spectrum-free interval (-sqrt(m^2 - mu0^2), sqrt(m^2 - mu0^2)) from the
// root mu0 of F_V(mu) = mu/m in (0, m), if it exists.
std::optional<std::pair<double, double>> gap_interval(const Potential& v,
                                                      double m);

// Threshold (m p / (2(p-1)))^{(p-1)/p} below which ||V||_p implies
// block-diagonalizability; the transform itself is not constructed.
double blockdiag_threshold(double p, double m);

}  // namespace diracspec

#endif
