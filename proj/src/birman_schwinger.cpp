#include "diracspec/birman_schwinger.hpp"

#include <cmath>

#include "diracspec/quadrature.hpp"

namespace diracspec {

namespace {

struct NodeFactors {
  // columns of A(x_i) and rows of B(x_i)
  Complex u0, u1, p0, p1;  // A col 0 = (u0,u1), col 1 = (p0,p1)
  Complex v0, v1, w0, w1;  // B row 0 = (v0,v1), row 1 = (w0,w1)
};

NodeFactors factors_at(const Potential& v, Complex scale, double x) {
  const Matrix2 val =
      scale == Complex(1.0, 0.0) ? v(x) : v.eval_scaled(scale, x);
  const PolarPair pp = polar_factorize_matrix(val);
  NodeFactors f;
  f.u0 = pp.a(0, 0);
  f.u1 = pp.a(1, 0);
  f.p0 = pp.a(0, 1);
  f.p1 = pp.a(1, 1);
  f.v0 = pp.b(0, 0);
  f.v1 = pp.b(0, 1);
  f.w0 = pp.b(1, 0);
  f.w1 = pp.b(1, 1);
  return f;
}

struct SubPoint {
  double dist;  // |x_i - t|
  double sgn;   // sgn(x_i - t)
  Complex b00, b01, b10, b11;     // B(t)
  std::vector<double> coeff;      // w_t * l_j(t) for j in the panel
};

}  // namespace

struct AssemblyPlan::Data {
  Complex theta;
  Complex rot;  // e^theta
  double truncation = 0.0;
  int panel_order = 10;
  int npanels = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<NodeFactors> f;
  // diagonal subrule: per panel, per row node in panel, the subpoints
  std::vector<std::vector<std::vector<SubPoint>>> diag;
};

AssemblyPlan::AssemblyPlan(const Potential& v, Complex theta, int nodes,
                           double truncation, int panel_order) {
  if (nodes < 8) throw DomainError("AssemblyPlan: need at least 8 nodes");
  if (!(truncation > 0.0)) throw DomainError("AssemblyPlan: truncation must be positive");
  auto data = std::make_shared<Data>();
  data->theta = theta;
  data->rot = std::exp(theta);
  data->truncation = truncation;
  data->panel_order = panel_order;
  const int p = panel_order;
  data->npanels = std::max(2, (nodes + p / 2) / p);
  const PanelRule& rule = gauss_rule(p);
  const Complex scale = data->rot;
  const double L = truncation;
  const double h = 2.0 * L / data->npanels;

  for (int ip = 0; ip < data->npanels; ++ip) {
    const double a = -L + ip * h, b = a + h;
    for (int j = 0; j < p; ++j) {
      const double x = 0.5 * (b - a) * rule.nodes[j] + 0.5 * (a + b);
      data->nodes.push_back(x);
      data->weights.push_back(0.5 * (b - a) * rule.weights[j]);
      data->f.push_back(factors_at(v, scale, x));
    }
  }

  // Split-at-diagonal subrule for self-panel pairs: for each row node the
  // panel integral is redone on [a, x_i] and [x_i, b] against the Lagrange
  // basis of the panel nodes, restoring smooth-piece Gauss accuracy.
  const int q = 12;
  const PanelRule& sub = gauss_rule(q);
  data->diag.resize(data->npanels);
  for (int ip = 0; ip < data->npanels; ++ip) {
    const double a = -L + ip * h, b = a + h;
    const double* xs = data->nodes.data() + ip * p;
    // barycentric weights of the panel nodes
    std::vector<double> bw(p, 1.0);
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p; ++k)
        if (k != j) bw[j] /= (xs[j] - xs[k]);
    data->diag[ip].resize(p);
    for (int il = 0; il < p; ++il) {
      const double xi = xs[il];
      auto& pts = data->diag[ip][il];
      for (const auto [lo, hi] : {std::pair{a, xi}, std::pair{xi, b}}) {
        if (hi - lo <= 0.0) continue;
        for (int g = 0; g < q; ++g) {
          const double t = 0.5 * (hi - lo) * sub.nodes[g] + 0.5 * (lo + hi);
          const double wt = 0.5 * (hi - lo) * sub.weights[g];
          SubPoint spt;
          spt.dist = std::abs(xi - t);
          spt.sgn = (xi - t) >= 0.0 ? 1.0 : -1.0;  // sgn(0) = 1
          const Matrix2 bt =
              polar_factorize_matrix(scale == Complex(1.0, 0.0)
                                         ? v(t)
                                         : v.eval_scaled(scale, t))
                  .b;
          spt.b00 = bt(0, 0);
          spt.b01 = bt(0, 1);
          spt.b10 = bt(1, 0);
          spt.b11 = bt(1, 1);
          spt.coeff.resize(p);
          for (int j = 0; j < p; ++j) {
            double lj = bw[j];
            for (int k = 0; k < p; ++k)
              if (k != j) lj *= (t - xs[k]);
            spt.coeff[j] = wt * lj;
          }
          pts.push_back(std::move(spt));
        }
      }
    }
  }
  data_ = std::move(data);
}

int AssemblyPlan::node_count() const { return static_cast<int>(data_->nodes.size()); }
double AssemblyPlan::truncation() const { return data_->truncation; }
Complex AssemblyPlan::theta() const { return data_->theta; }

NystromSystem AssemblyPlan::evaluate(Complex z, double m) const {
  const Data& d = *data_;
  const Complex k = dilated_branch_sqrt(z, m, d.theta);
  Complex zeta, zeta_inv;
  if (m == 0.0) {
    zeta = z / k;  // exactly +-1
    zeta_inv = zeta;
  } else {
    zeta = (z + m) / k;
    zeta_inv = 1.0 / zeta;
  }
  const Complex pref = Complex(0.0, 0.5) * d.rot;  // e^theta * i/2
  const Complex ikr = Complex(0.0, 1.0) * d.rot * k;

  const int n = static_cast<int>(d.nodes.size());
  const int p = d.panel_order;
  NystromSystem sys;
  sys.nodes = d.nodes;
  sys.weights = d.weights;
  sys.matrix = Eigen::MatrixXcd::Identity(2 * n, 2 * n);

  for (int i = 0; i < n; ++i) {
    const NodeFactors& fi = d.f[i];
    const int pi = i / p;
    for (int j = 0; j < n; ++j) {
      if (j / p == pi) continue;  // self-panel handled by the subrule
      const NodeFactors& fj = d.f[j];
      const double s = d.nodes[i] > d.nodes[j] ? 1.0 : -1.0;
      const Complex c = pref * d.weights[j] *
                        std::exp(ikr * std::abs(d.nodes[i] - d.nodes[j]));
      const Complex zu0 = zeta * fi.u0, zu1 = zeta * fi.u1;
      const Complex zp0 = zeta_inv * fi.p0, zp1 = zeta_inv * fi.p1;
      const Complex su0 = s * fi.u0, su1 = s * fi.u1;
      const Complex sp0 = s * fi.p0, sp1 = s * fi.p1;
      sys.matrix(2 * i, 2 * j) += c * (zu0 * fj.v0 + su0 * fj.w0 + sp0 * fj.v0 + zp0 * fj.w0);
      sys.matrix(2 * i, 2 * j + 1) += c * (zu0 * fj.v1 + su0 * fj.w1 + sp0 * fj.v1 + zp0 * fj.w1);
      sys.matrix(2 * i + 1, 2 * j) += c * (zu1 * fj.v0 + su1 * fj.w0 + sp1 * fj.v0 + zp1 * fj.w0);
      sys.matrix(2 * i + 1, 2 * j + 1) += c * (zu1 * fj.v1 + su1 * fj.w1 + sp1 * fj.v1 + zp1 * fj.w1);
    }
    // corrected self-panel entries
    const auto& pts = d.diag[pi][i % p];
    const int j0 = pi * p;
    for (const SubPoint& spt : pts) {
      const Complex e = pref * std::exp(ikr * spt.dist);
      const Complex g00 = e * (zeta * fi.u0 * spt.b00 +
                               spt.sgn * (fi.u0 * spt.b10 + fi.p0 * spt.b00) +
                               zeta_inv * fi.p0 * spt.b10);
      const Complex g01 = e * (zeta * fi.u0 * spt.b01 +
                               spt.sgn * (fi.u0 * spt.b11 + fi.p0 * spt.b01) +
                               zeta_inv * fi.p0 * spt.b11);
      const Complex g10 = e * (zeta * fi.u1 * spt.b00 +
                               spt.sgn * (fi.u1 * spt.b10 + fi.p1 * spt.b00) +
                               zeta_inv * fi.p1 * spt.b10);
      const Complex g11 = e * (zeta * fi.u1 * spt.b01 +
                               spt.sgn * (fi.u1 * spt.b11 + fi.p1 * spt.b01) +
                               zeta_inv * fi.p1 * spt.b11);
      for (int jl = 0; jl < p; ++jl) {
        const double c = spt.coeff[jl];
        if (c == 0.0) continue;
        const int j = j0 + jl;
        sys.matrix(2 * i, 2 * j) += c * g00;
        sys.matrix(2 * i, 2 * j + 1) += c * g01;
        sys.matrix(2 * i + 1, 2 * j) += c * g10;
        sys.matrix(2 * i + 1, 2 * j + 1) += c * g11;
      }
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
  Complex ld{0.0, 0.0};
  const auto& diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) ld += std::log(diag(i));
  if (lu.permutationP().determinant() < 0) ld += Complex(0.0, 3.14159265358979323846);
  sys.logdet = ld;
  return sys;
}

Complex AssemblyPlan::logdet(Complex z, double m) const {
  return evaluate(z, m).logdet;
}

double NystromSystem::op_norm_q() const {
  // similarity scale D^{1/2} Q D^{-1/2}, then power iteration on S^H S
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXcd s = matrix - Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(weights[i]);
    s.row(2 * i) *= r;
    s.row(2 * i + 1) *= r;
    s.col(2 * i) /= r;
    s.col(2 * i + 1) /= r;
  }
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(2 * n);
  x.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXcd y = s.adjoint() * (s * x);
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    y /= norm;
    if (it > 20 && std::abs(norm - sigma2) < 1e-13 * norm) {
      sigma2 = norm;
      break;
    }
    sigma2 = norm;
    x.swap(y);
  }
  return std::sqrt(sigma2);
}

double assembly_truncation(const Potential& v, Complex theta,
                           const AssemblyOptions& opts) {
  if (opts.truncation > 0.0) return opts.truncation;
  if (theta == Complex(0.0, 0.0)) return v.truncation_radius(opts.tail_tol);
  // V(e^theta x): substitute u = e^{Re theta} x in the tail integral
  const double er = std::exp(theta.real());
  const double phi = theta.imag();
  double L = 1.0;
  while (v.tail_bound(er * L, phi) / er > opts.tail_tol) {
    L *= 2.0;
    if (L > 1e6) throw NonIntegrableError("assembly_truncation: tail not certified");
  }
  return L;
}

NystromSystem assemble(const Potential& v, Complex z, double m,
                       const AssemblyOptions& opts) {
  return dilated_assemble(v, z, m, Complex(0.0, 0.0), opts);
}

NystromSystem dilated_assemble(const Potential& v, Complex z, double m,
                               Complex theta, const AssemblyOptions& opts) {
  const double L = assembly_truncation(v, theta, opts);
  AssemblyPlan plan(v, theta, opts.nodes, L, opts.panel_order);
  return plan.evaluate(z, m);
}

}  // namespace diracspec
