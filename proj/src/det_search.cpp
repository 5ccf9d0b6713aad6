#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "diracspec/birman_schwinger.hpp"
#include "diracspec/resonance_regions.hpp"

namespace diracspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double Rect::diam() const {
  return std::hypot(re_max - re_min, im_max - im_min);
}

bool Rect::contains(Complex z, double slack) const {
  return z.real() >= re_min - slack && z.real() <= re_max + slack &&
         z.imag() >= im_min - slack && z.imag() <= im_max + slack;
}

double rect_spectrum_distance(const Rect& rect, double m, Complex theta) {
  if (theta == Complex(0.0, 0.0)) {
    // rays (-inf,-m] and [m,inf): nearest rect point has extreme Re and
    // minimal |Im|
    const double dy = rect.im_min > 0.0   ? rect.im_min
                      : rect.im_max < 0.0 ? -rect.im_max
                                          : 0.0;
    const double dx_right = std::max(m - rect.re_max, 0.0);
    const double dx_left = std::max(m + rect.re_min, 0.0);  // to -m going left
    return std::min(std::hypot(dx_right, dy), std::hypot(dx_left, dy));
  }
  // sampled parametrization of +-sqrt(e^{-2 theta} p^2 + m^2)
  const double far = std::max({std::abs(rect.re_min), std::abs(rect.re_max),
                               std::abs(rect.im_min), std::abs(rect.im_max)});
  const double pmax = std::abs(std::exp(theta)) * (2.0 * far + 2.0 * m + 1.0);
  const Complex e2 = std::exp(-2.0 * theta);
  auto dist_pt = [&rect](Complex z) {
    const double dx = z.real() < rect.re_min   ? rect.re_min - z.real()
                      : z.real() > rect.re_max ? z.real() - rect.re_max
                                               : 0.0;
    const double dy = z.imag() < rect.im_min   ? rect.im_min - z.imag()
                      : z.imag() > rect.im_max ? z.imag() - rect.im_max
                                               : 0.0;
    return std::hypot(dx, dy);
  };
  double best = std::numeric_limits<double>::infinity();
  const int n = 8192;
  for (int i = 0; i <= n; ++i) {
    const double p = pmax * i / n;
    const Complex c = std::sqrt(e2 * p * p + m * m);
    best = std::min({best, dist_pt(c), dist_pt(-c)});
  }
  return best;
}

namespace {

struct LogdetCache {
  const AssemblyPlan& plan;
  double m;
  long evaluations = 0;
  std::map<std::pair<double, double>, Complex> values;

  Complex operator()(Complex z) {
    const auto key = std::make_pair(z.real(), z.imag());
    auto it = values.find(key);
    if (it != values.end()) return it->second;
    ++evaluations;
    const Complex ld = plan.logdet(z, m);
    values.emplace(key, ld);
    return ld;
  }
};

// winding number of det(I+Q_N) along the rectangle boundary; argument
// increments are refined below pi/2 per step
int winding_number(LogdetCache& cache, const Rect& r,
                   std::vector<std::pair<Complex, Complex>>* samples) {
  const Complex corners[4] = {{r.re_min, r.im_min},
                              {r.re_max, r.im_min},
                              {r.re_max, r.im_max},
                              {r.re_min, r.im_max}};
  double total = 0.0;
  const double min_seg = r.diam() * 1e-9;
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e], b = corners[(e + 1) % 4];
    // recursive midpoint refinement over this edge
    struct Frame {
      Complex za, zb;
      Complex la, lb;
    };
    std::vector<Frame> stack;
    const int init = 8;
    Complex prev = a, lprev = cache(a);
    for (int i = 1; i <= init; ++i) {
      const Complex zi = a + (b - a) * (static_cast<double>(i) / init);
      stack.push_back({prev, zi, lprev, cache(zi)});
      prev = zi;
      lprev = stack.back().lb;
    }
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      const double d = std::remainder(f.lb.imag() - f.la.imag(), kTwoPi);
      if (std::abs(d) < kPi / 2.0) {
        total += d;
        if (samples) samples->push_back({f.za, f.la});
        continue;
      }
      if (std::abs(f.zb - f.za) < min_seg)
        throw WindingUnresolvedError(
            "contour argument increment not controllable; root on contour?");
      const Complex mid = 0.5 * (f.za + f.zb);
      const Complex lm = cache(mid);
      stack.push_back({mid, f.zb, lm, f.lb});
      stack.push_back({f.za, mid, f.la, lm});
    }
  }
  const double w = total / kTwoPi;
  const long rounded = std::lround(w);
  if (std::abs(w - static_cast<double>(rounded)) > 0.25)
    throw WindingUnresolvedError("non-integral contour winding");
  return static_cast<int>(rounded);
}

struct SearchContext {
  LogdetCache& cache;
  const SearchOptions& opts;
  Rect region;
  std::vector<RootReport> roots;
  std::vector<CellWinding> cells;
};

// Newton iteration on d/dz logdet built from centered differences; the
// branch offsets of logdet cancel inside exp(l+ - l0) - exp(l- - l0).
std::optional<Complex> newton_refine(LogdetCache& cache, Complex z0,
                                     const Rect& bounds, double h,
                                     double det_tol) {
  Complex z = z0;
  for (int it = 0; it < 60; ++it) {
    const Complex l0 = cache.plan.logdet(z, cache.m);
    ++cache.evaluations;
    if (!std::isfinite(l0.real())) return z;  // |det| = 0, exact root
    if (std::exp(l0.real()) <= det_tol * 1e-4) return z;
    const Complex lp = cache.plan.logdet(z + h, cache.m);
    const Complex lm = cache.plan.logdet(z - h, cache.m);
    cache.evaluations += 2;
    const Complex denom = std::exp(lp - l0) - std::exp(lm - l0);
    if (denom == Complex(0.0, 0.0)) return std::nullopt;
    const Complex step = -2.0 * h / denom;
    const double cap = bounds.diam();
    Complex applied = step;
    if (std::abs(step) > cap) applied = step / std::abs(step) * cap;
    z += applied;
    if (!bounds.contains(z, 2.0 * bounds.diam())) return std::nullopt;
    if (std::abs(applied) < 1e-13 * std::max(1.0, std::abs(z))) {
      const double res = std::exp(cache.plan.logdet(z, cache.m).real());
      ++cache.evaluations;
      return res <= det_tol ? std::optional<Complex>(z) : std::nullopt;
    }
  }
  const double res = std::exp(cache.plan.logdet(z, cache.m).real());
  ++cache.evaluations;
  return res <= det_tol ? std::optional<Complex>(z) : std::nullopt;
}

void resolve_cell(SearchContext& ctx, const Rect& cell, int w,
                  const std::vector<std::pair<Complex, Complex>>& samples) {
  const double h = ctx.opts.newton_rel_step * std::max(cell.diam(), 1e-12);
  // seeds: contour |det| minimum, center, quarter points
  std::vector<Complex> seeds;
  if (!samples.empty()) {
    auto best = std::min_element(samples.begin(), samples.end(),
                                 [](const auto& a, const auto& b) {
                                   return a.second.real() < b.second.real();
                                 });
    seeds.push_back(best->first);
  }
  seeds.push_back(cell.center());
  const double qx = 0.25 * (cell.re_max - cell.re_min);
  const double qy = 0.25 * (cell.im_max - cell.im_min);
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      seeds.push_back(cell.center() + Complex(sx * qx, sy * qy));

  int found = 0;
  for (const Complex seed : seeds) {
    auto root = newton_refine(ctx.cache, seed, cell, h, ctx.opts.det_tol);
    if (!root) continue;
    if (!ctx.region.contains(*root, 1e-9 * ctx.region.diam())) continue;
    bool duplicate = false;
    for (const auto& r : ctx.roots)
      if (std::abs(r.z - *root) < 1e-7 * std::max(1.0, ctx.region.diam()))
        duplicate = true;
    if (duplicate) {
      ++found;
      continue;
    }
    RootReport rep;
    rep.z = *root;
    rep.residual = std::exp(ctx.cache.plan.logdet(*root, ctx.cache.m).real());
    ++ctx.cache.evaluations;
    rep.winding = w;
    ctx.roots.push_back(rep);
    if (++found >= w) return;
  }
  if (found == 0)
    throw WindingUnresolvedError(
        "winding-positive cell but Newton found no root below tolerance");
}

void search_cell(SearchContext& ctx, const Rect& cell, int depth) {
  std::vector<std::pair<Complex, Complex>> samples;
  const int w = winding_number(ctx.cache, cell, &samples);
  if (w == 0) return;
  ctx.cells.push_back({cell, w});
  if ((w == 1 && depth >= 1) || depth >= ctx.opts.max_depth) {
    resolve_cell(ctx, cell, w, samples);
    return;
  }
  // a root sitting on a proposed cut makes a child contour unresolvable;
  // retry with the split line jittered before giving up
  const double jitter[3] = {0.5, 0.46, 0.55};
  for (double frac : jitter) {
    const double xm = cell.re_min + frac * (cell.re_max - cell.re_min);
    const double ym = cell.im_min + frac * (cell.im_max - cell.im_min);
    const Rect quads[4] = {
        {cell.re_min, xm, cell.im_min, ym},
        {xm, cell.re_max, cell.im_min, ym},
        {cell.re_min, xm, ym, cell.im_max},
        {xm, cell.re_max, ym, cell.im_max},
    };
    const auto roots_before = ctx.roots.size();
    const auto cells_before = ctx.cells.size();
    try {
      for (const Rect& q : quads) search_cell(ctx, q, depth + 1);
      return;
    } catch (const WindingUnresolvedError&) {
      if (frac == jitter[2]) throw;
      ctx.roots.resize(roots_before);
      ctx.cells.resize(cells_before);
    }
  }
}

}  // namespace

SpectrumSearchReport det_root_search(const Potential& v, double m, Rect region,
                                     const SearchOptions& opts) {
  if (!(region.re_min < region.re_max && region.im_min < region.im_max))
    throw DomainError("det_root_search: degenerate region");
  if (rect_spectrum_distance(region, m, opts.theta) < opts.branch_margin)
    throw DomainError("det_root_search: region too close to the free spectrum");

  SpectrumSearchReport report;
  report.region = region;
  report.theta = opts.theta;
  report.truncation = assembly_truncation(v, opts.theta, opts.assembly);

  if (v.is_zero()) {
    report.nodes = opts.assembly.nodes;
    return report;  // det = 1 everywhere
  }

  AssemblyPlan plan(v, opts.theta, opts.assembly.nodes, report.truncation,
                    opts.assembly.panel_order);
  report.nodes = plan.node_count();
  LogdetCache cache{plan, m};
  SearchContext ctx{cache, opts, region, {}, {}};
  search_cell(ctx, region, 0);

  std::sort(ctx.roots.begin(), ctx.roots.end(),
            [](const RootReport& a, const RootReport& b) {
              return a.z.real() != b.z.real() ? a.z.real() < b.z.real()
                                              : a.z.imag() < b.z.imag();
            });
  report.roots = std::move(ctx.roots);
  report.cells = std::move(ctx.cells);
  for (const auto& c : report.cells)
    if (c.cell.re_min == region.re_min && c.cell.re_max == region.re_max &&
        c.cell.im_min == region.im_min && c.cell.im_max == region.im_max)
      report.total_winding = c.winding;
  report.evaluations = cache.evaluations;

  if (opts.persistence_phi) {
    const Complex theta2(0.0, *opts.persistence_phi);
    AssemblyPlan plan2(v, theta2, opts.assembly.nodes,
                       assembly_truncation(v, theta2, opts.assembly),
                       opts.assembly.panel_order);
    LogdetCache cache2{plan2, m};
    for (auto& r : report.roots) {
      auto moved = newton_refine(cache2, r.z, region,
                                 opts.newton_rel_step * region.diam(),
                                 opts.det_tol);
      if (moved) {
        r.persisted_z = *moved;
        r.persisted = std::abs(*moved - r.z) <= 1e-6;
      }
    }
    report.evaluations += cache2.evaluations;
  }
  return report;
}

SpectrumSearchReport resonance_search(const Potential& v, double m, double phi,
                                      Rect region, SearchOptions opts) {
  if (!v.hermitian_on_axis())
    throw ConditionViolatedError(
        "resonance_search: potential must be Hermitian on the real axis");
  if (!v.alpha() || !(phi > 0.0) || phi >= *v.alpha())
    throw AnalyticityViolationError(
        "resonance_search: need 0 < phi < alpha");
  // the uncovered region is where the dilated search sees resonances
  const Complex pts[8] = {
      {region.re_min, region.im_min}, {region.re_max, region.im_min},
      {region.re_max, region.im_max}, {region.re_min, region.im_max},
      region.center(),                {region.center().real(), region.im_min},
      {region.center().real(), region.im_max}, {region.re_min, 0.5 * (region.im_min + region.im_max)}};
  for (const Complex p : pts)
    if (!in_d_theta(p, phi, m))
      throw ConditionViolatedError("resonance_search: region leaves D_theta");
  opts.theta = Complex(0.0, phi);
  if (!opts.persistence_phi && phi * 1.25 < *v.alpha())
    opts.persistence_phi = phi * 1.25;
  return det_root_search(v, m, region, opts);
}

}  // namespace diracspec
