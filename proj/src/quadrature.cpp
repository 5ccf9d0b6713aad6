#include "diracspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace diracspec {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate_segment(const std::function<double(double)>& f, double a,
                         double b, const QuadOptions& opts, int level) {
  double err = 0.0;
  const double val =
      GK::integrate(f, a, b, opts.max_depth, 1e-12, &err, nullptr);
  if (err <= opts.abs_tol || level >= 10) return val;
  const double mid = 0.5 * (a + b);
  return integrate_segment(f, a, mid, opts, level + 1) +
         integrate_segment(f, mid, b, opts, level + 1);
}

template <int P>
PanelRule make_rule() {
  using G = boost::math::quadrature::gauss<double, P>;
  PanelRule r;
  const auto& absc = G::abscissa();
  const auto& wts = G::weights();
  // boost stores the nonnegative half of the symmetric rule
  for (std::size_t i = 0; i < absc.size(); ++i) {
    if (absc[i] > 0.0) {
      r.nodes.push_back(-absc[i]);
      r.weights.push_back(wts[i]);
    }
  }
  for (std::size_t i = absc.size(); i-- > 0;) {
    r.nodes.push_back(absc[i]);
    r.weights.push_back(wts[i]);
  }
  std::vector<std::size_t> idx(r.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return r.nodes[i] < r.nodes[j]; });
  PanelRule sorted;
  for (auto i : idx) {
    sorted.nodes.push_back(r.nodes[i]);
    sorted.weights.push_back(r.weights[i]);
  }
  return sorted;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts) {
  if (a == b) return 0.0;
  return integrate_segment(f, a, b, opts, 0);
}

double integrate_with_kinks(const std::function<double(double)>& f, double a,
                            double b, const std::vector<double>& kinks,
                            const QuadOptions& opts) {
  std::vector<double> pts{a, b};
  for (double k : kinks)
    if (k > a && k < b) pts.push_back(k);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate(f, pts[i], pts[i + 1], opts);
  return total;
}

const PanelRule& gauss_rule(int p) {
  static const std::map<int, PanelRule> rules = {
      {6, make_rule<6>()},   {8, make_rule<8>()},   {10, make_rule<10>()},
      {12, make_rule<12>()}, {16, make_rule<16>()},
  };
  auto it = rules.find(p);
  if (it == rules.end())
    throw std::invalid_argument("gauss_rule: unsupported panel order");
  return it->second;
}

}  // namespace diracspec
