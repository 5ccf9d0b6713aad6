#include "diracspec/enclosures.hpp"

#include <cmath>
#include <limits>

namespace diracspec {

EnclosureResult theorem1_disks(double v1, double m) {
  if (!(v1 >= 0.0 && v1 < 1.0))
    throw ConditionViolatedError("theorem1_disks: requires 0 <= ||V||_1 < 1");
  if (m < 0.0) throw DomainError("theorem1_disks: mass must be nonnegative");
  EnclosureResult res;
  res.v1 = v1;
  res.mass = m;
  if (v1 == 0.0) {
    res.x0 = 1.0;
    res.r0 = 0.0;
  } else {
    const double s = v1 * v1;
    res.x0 = std::sqrt((s * s - 2.0 * s + 2.0) / (4.0 * (1.0 - s)) + 0.5);
    res.r0 = std::sqrt((s * s - 2.0 * s + 2.0) / (4.0 * (1.0 - s)) - 0.5);
  }
  res.disks.disks = {Disk{Complex(m * res.x0, 0.0), m * res.r0},
                     Disk{Complex(-m * res.x0, 0.0), m * res.r0}};
  return res;
}

EnclosureResult nonrelativistic_disks(double v1_physical, double m, double c) {
  if (!(m > 0.0 && c > 0.0))
    throw DomainError("nonrelativistic_disks: m > 0 and c > 0 required");
  if (!(v1_physical < c))
    throw ConditionViolatedError("nonrelativistic_disks: ||V||_1 >= c");
  EnclosureResult res = theorem1_disks(v1_physical / c, m * c * c);
  const double shift = m * c * c;
  for (auto& d : res.disks.disks) d.center -= shift;
  return res;
}

double resolvent_bound(Complex z, double v1, double m) {
  if (!(v1 >= 0.0 && v1 < 1.0))
    throw ConditionViolatedError("resolvent_bound: requires ||V||_1 < 1");
  const BranchValues bv = branch_values(z, m);
  const EnclosureResult enc = theorem1_disks(v1, m);
  if (enc.disks.contains(z))
    throw ConditionViolatedError("resolvent_bound: z inside an enclosure disk");
  if (bv.eta * v1 >= 1.0)
    throw ConditionViolatedError("resolvent_bound: eta(|Phi(z)|) ||V||_1 >= 1");
  const double dist = dist_to_free_spectrum(z, m);
  return 1.0 / dist +
         bv.eta * bv.eta / bv.k.imag() * v1 / (1.0 - bv.eta * v1);
}

ExclusionVerdict theorem1_excluded(Complex z, double v1, double m) {
  const EnclosureResult enc = theorem1_disks(v1, m);
  branch_values(z, m);  // rejects z on the essential spectrum
  ExclusionVerdict verdict;
  verdict.z = z;
  verdict.criterion = Criterion::L1Disks;
  if (enc.disks.empty()) {
    // massless or V = 0: every point of rho(H0) is excluded
    verdict.margin = dist_to_free_spectrum(z, m);
  } else {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& d : enc.disks.disks)
      margin = std::min(margin, std::abs(z - d.center) - d.radius);
    verdict.margin = margin;
  }
  verdict.excluded = verdict.margin > 0.0;
  return verdict;
}

ExclusionVerdict imaginary_potential_excluded(Complex z, double l1_v11,
                                              double l1_v22, double m) {
  if (l1_v11 < 0.0 || l1_v22 < 0.0)
    throw DomainError("imaginary_potential_excluded: norms must be >= 0");
  const BranchValues bv = branch_values(z, m);
  const double lhs =
      bv.zeta.real() * l1_v11 + (1.0 / bv.zeta).real() * l1_v22;
  ExclusionVerdict verdict;
  verdict.z = z;
  verdict.criterion = Criterion::Imaginary;
  // union of the closed lower half plane (sigma_d lies strictly above the
  // real axis) and the strict-inequality region
  verdict.margin = std::max(-z.imag(), 2.0 - lhs);
  verdict.excluded = verdict.margin > 0.0;
  return verdict;
}

ExclusionVerdict ceps_excluded(Complex z, const ClippedDecomposition& dec,
                               double m) {
  const BranchValues bv = branch_values(z, m);
  const double ceps = dec.l1_of_W;  // upper bound for C_eps
  ExclusionVerdict verdict;
  verdict.z = z;
  verdict.criterion = Criterion::Ceps;
  const double slack1 = 1.0 - bv.eta * ceps;
  if (slack1 <= 0.0) {
    verdict.margin = slack1;
    return verdict;
  }
  const double dist = dist_to_free_spectrum(z, m);
  const double lhs2 = 1.0 / dist +
                      bv.eta * bv.eta / bv.k.imag() * ceps / slack1;
  const double slack2 = 1.0 - dec.epsilon * lhs2;
  verdict.margin = std::min(slack1, slack2);
  verdict.excluded = verdict.margin > 0.0;
  return verdict;
}

ExclusionVerdict fv_excluded(Complex z, const Potential& v, double m) {
  const BranchValues bv = branch_values(z, m);
  const double fv = v.is_zero() ? 0.0 : f_v(v, bv.k.imag());
  ExclusionVerdict verdict;
  verdict.z = z;
  verdict.criterion = Criterion::Fv;
  verdict.margin = 1.0 - bv.eta * fv;
  verdict.excluded = verdict.margin > 0.0;
  return verdict;
}

ExclusionVerdict lp_excluded(Complex z, double vp, double p, double m) {
  if (!(p > 1.0)) throw DomainError("lp_excluded: p must lie in (1, inf)");
  if (vp < 0.0) throw DomainError("lp_excluded: ||V||_p must be >= 0");
  const BranchValues bv = branch_values(z, m);
  const double q = (p - 1.0) / p;
  const double lhs = bv.eta * std::pow(2.0 * (p - 1.0) / p, q) *
                     std::pow(bv.k.imag(), -q) * vp;
  ExclusionVerdict verdict;
  verdict.z = z;
  verdict.criterion = Criterion::Lp;
  verdict.margin = 1.0 - lhs;
  verdict.excluded = verdict.margin > 0.0;
  return verdict;
}

std::optional<std::pair<double, double>> gap_interval(const Potential& v,
                                                      double m) {
  if (!(m > 0.0)) throw DomainError("gap_interval: m > 0 required");
  if (v.is_zero()) return std::make_pair(-m, m);  // F_V = 0, mu0 = 0
  auto h = [&](double mu) { return f_v(v, mu) - mu / m; };
  // h is strictly decreasing (F_V decreasing, mu/m increasing); a root in
  // (0, m) exists iff h(m) < 0
  const double hm = h(m);
  if (hm >= 0.0) return std::nullopt;
  double lo = m * 1e-8, hi = m;
  if (h(lo) <= 0.0) return std::make_pair(-m, m);  // root at essentially 0
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * m; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  const double mu0 = 0.5 * (lo + hi);
  const double edge = std::sqrt(m * m - mu0 * mu0);
  return std::make_pair(-edge, edge);
}

double blockdiag_threshold(double p, double m) {
  if (!(p >= 2.0)) throw DomainError("blockdiag_threshold: p >= 2 required");
  if (!(m > 0.0)) throw DomainError("blockdiag_threshold: m > 0 required");
  return std::pow(m * p / (2.0 * (p - 1.0)), (p - 1.0) / p);
}

}  // namespace diracspec
