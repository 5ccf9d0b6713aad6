#include "diracspec/resonance_regions.hpp"

#include <cmath>

namespace diracspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool in_d_theta(Complex z, double phi, double m) {
  if (!(phi >= 0.0 && phi < kPi / 2.0))
    throw DomainError("in_d_theta: phi must lie in [0, pi/2)");
  const Complex w = z * z - m * m;
  if (w == Complex(0.0, 0.0)) return true;  // z = +-m, the p = 0 point
  const double a = std::arg(w);
  return a <= 0.0 && a >= -2.0 * phi;
}

EnclosureResult resonance_disks(const ResonanceContext& ctx) {
  if (!ctx.v.hermitian_on_axis())
    throw ConditionViolatedError(
        "resonance_disks: potential must be Hermitian on the real axis");
  const double vth = v_theta(ctx.v, ctx.phi);
  if (!(vth < 1.0))
    throw ConditionViolatedError("resonance_disks: v_theta >= 1");
  EnclosureResult res = theorem1_disks(vth, ctx.m);
  return res;
}

std::pair<std::pair<double, double>, std::pair<double, double>>
embedded_eigenvalue_intervals(double v1, double m) {
  if (!(m > 0.0)) throw DomainError("embedded_eigenvalue_intervals: m > 0");
  const EnclosureResult enc = theorem1_disks(v1, m);  // rejects v1 >= 1
  const double lo = m * (enc.x0 - enc.r0), hi = m * (enc.x0 + enc.r0);
  return {{-hi, -lo}, {lo, hi}};
}

double phi0_massless(const Potential& v, const QuadOptions& opts) {
  if (!v.alpha())
    throw AnalyticityViolationError("phi0_massless: no analyticity sector");
  const double v1 = l1_norm(v, opts);
  if (!(v1 < 1.0))
    throw ConditionViolatedError("phi0_massless: ||V||_1 >= 1");
  const double a = *v.alpha();
  const double delta = std::min(1e-9, a * 1e-9);
  const double hi = a - delta;
  auto vt = [&](double phi) { return v_theta(v, phi, opts); };
  if (vt(hi) < 1.0) return hi;  // v_theta stays below one on the whole sector
  // v_theta is nondecreasing in phi (infimum over a shrinking interval,
  // log-convex norm with minimum at 0)
  double lo = 0.0, up = hi;
  for (int i = 0; i < 100 && up - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + up);
    (vt(mid) < 1.0 ? lo : up) = mid;
  }
  return 0.5 * (lo + up);
}

namespace {

// one boundary intersection on the lower semicircle of the right disk
Complex intersect_disk_dtheta(double xc, double rc, double m, double phi) {
  auto gap = [&](double t) {
    const Complex z(xc + rc * std::cos(t), rc * std::sin(t));
    const Complex w = z * z - m * m;
    return std::arg(w) + 2.0 * phi;
  };
  // arg runs continuously from 0 (t=0, real edge outside the gap) to -pi
  // (t=-pi, approached from below inside the gap)
  const int n = 512;
  double prev_t = 0.0 - 1e-12, prev_g = gap(prev_t);
  double root_lo = 0.0, root_hi = 0.0;
  int crossings = 0;
  for (int i = 1; i <= n; ++i) {
    const double t = -kPi * i / n + (i == n ? 1e-12 : 0.0);
    const double g = gap(t);
    if ((prev_g > 0.0) != (g > 0.0)) {
      ++crossings;
      root_lo = t;
      root_hi = prev_t;
    }
    prev_t = t;
    prev_g = g;
  }
  if (crossings != 1)
    throw NoIntersectionError(
        "disk boundary / D_theta boundary intersection not unique");
  double lo = root_lo, hi = root_hi;  // gap(lo) and gap(hi) have opposite sign
  const double glo = gap(lo);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((gap(mid) > 0.0) == (glo > 0.0) ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  return {xc + rc * std::cos(t), rc * std::sin(t)};
}

}  // namespace

ExclusionCurves exclusion_curves(const Potential& v, double m, double phi_max,
                                 int samples) {
  if (samples < 2) throw DomainError("exclusion_curves: samples >= 2");
  if (!v.alpha() || phi_max >= *v.alpha())
    throw AnalyticityViolationError("exclusion_curves: phi_max >= alpha");
  ExclusionCurves curves;
  if (m == 0.0) return curves;  // no disks, nothing to intersect
  for (int i = 0; i < samples; ++i) {
    const double phi = phi_max * i / (samples - 1);
    ResonanceContext ctx{v, m, phi};
    const EnclosureResult enc = resonance_disks(ctx);  // v_theta < 1 enforced
    Complex z;
    if (phi == 0.0) {
      z = Complex(m * (enc.x0 + enc.r0), 0.0);  // disk meets [m, inf)
    } else {
      z = intersect_disk_dtheta(m * enc.x0, m * enc.r0, m, phi);
    }
    curves.right.push_back({phi, z});
    curves.left.push_back({phi, -z});
  }
  return curves;
}

}  // namespace diracspec
