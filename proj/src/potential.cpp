#include "diracspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace diracspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

struct Potential::Impl {
  std::string id;
  nlohmann::json description;
  DecayClass decay = DecayClass::L1;
  std::optional<double> alpha;
  bool hermitian_on_axis = false;
  bool scalar_sign_definite = false;
  double peak_hint = 0.0;
  std::vector<double> kinks;
  bool zero = false;

  std::function<Matrix2(double)> eval_real;
  std::function<Matrix2(Complex)> eval_complex;
  std::function<double(double, double)> tail;      // (L, phi)
  std::function<double(double, double)> tail_sup;  // (L, phi)

  // tabulated data, when present
  std::vector<double> tab_x;
  std::vector<Matrix2> tab_v;
};

Potential::Potential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Matrix2 Potential::operator()(double x) const { return impl_->eval_real(x); }

Matrix2 Potential::eval_ray(double phi, double x) const {
  if (phi == 0.0) return impl_->eval_real(x);
  return eval_scaled(std::exp(Complex(0.0, phi)), x);
}

Matrix2 Potential::eval_scaled(Complex s, double x) const {
  const double phi = std::arg(s);
  if (phi == 0.0 && s.real() > 0.0 && s.imag() == 0.0 && s.real() == 1.0)
    return impl_->eval_real(x);
  if (!impl_->alpha)
    throw AnalyticityViolationError("potential '" + impl_->id +
                                    "' declares no analyticity sector");
  if (std::abs(phi) >= *impl_->alpha)
    throw AnalyticityViolationError("dilation angle outside sector of '" +
                                    impl_->id + "'");
  return impl_->eval_complex(s * x);
}

double Potential::norm_at(double x) const { return op_norm(impl_->eval_real(x)); }

double Potential::tail_bound(double L, double phi) const {
  if (phi != 0.0 && (!impl_->alpha || std::abs(phi) >= *impl_->alpha))
    throw AnalyticityViolationError("tail_bound: angle outside sector");
  return impl_->tail(L, phi);
}

double Potential::tail_sup(double L, double phi) const {
  if (phi != 0.0 && (!impl_->alpha || std::abs(phi) >= *impl_->alpha))
    throw AnalyticityViolationError("tail_sup: angle outside sector");
  return impl_->tail_sup(L, phi);
}

double Potential::truncation_radius(double tol, double phi, double l_max) const {
  if (impl_->zero) return 1.0;
  if (tabulated()) {
    double L = 1.0;
    for (double x : impl_->tab_x) L = std::max(L, std::abs(x));
    return L;
  }
  double L = 1.0;
  while (tail_bound(L, phi) > tol) {
    L *= 2.0;
    if (L > l_max)
      throw NonIntegrableError("tail of '" + impl_->id +
                               "' not certified below tolerance");
  }
  if (L > 1.0) {
    double lo = L / 2.0, hi = L;
    for (int i = 0; i < 20; ++i) {
      const double mid = 0.5 * (lo + hi);
      (tail_bound(mid, phi) > tol ? lo : hi) = mid;
    }
    L = hi;
  }
  return L;
}

const std::string& Potential::id() const { return impl_->id; }
const nlohmann::json& Potential::description() const { return impl_->description; }
DecayClass Potential::decay_class() const { return impl_->decay; }
std::optional<double> Potential::alpha() const { return impl_->alpha; }
bool Potential::hermitian_on_axis() const { return impl_->hermitian_on_axis; }
bool Potential::scalar_sign_definite() const { return impl_->scalar_sign_definite; }
bool Potential::tabulated() const { return !impl_->tab_x.empty(); }
double Potential::peak_hint() const { return impl_->peak_hint; }
const std::vector<double>& Potential::kinks() const { return impl_->kinks; }
bool Potential::is_zero() const { return impl_->zero; }

Potential Potential::scaled(double c) const {
  auto impl = std::make_shared<Impl>(*impl_);
  auto base = impl_;
  impl->id = impl_->id + "*scaled";
  impl->description = nlohmann::json{{"type", "scaled"},
                                     {"factor", c},
                                     {"base", impl_->description}};
  impl->zero = impl_->zero || c == 0.0;
  impl->eval_real = [base, c](double x) -> Matrix2 {
    return c * base->eval_real(x);
  };
  if (impl_->eval_complex)
    impl->eval_complex = [base, c](Complex zx) -> Matrix2 {
      return c * base->eval_complex(zx);
    };
  impl->tail = [base, c](double L, double phi) {
    return std::abs(c) * base->tail(L, phi);
  };
  impl->tail_sup = [base, c](double L, double phi) {
    return std::abs(c) * base->tail_sup(L, phi);
  };
  return Potential(impl);
}

Potential Potential::zero() {
  auto impl = std::make_shared<Impl>();
  impl->id = "zero";
  impl->description = {{"type", "zero"}};
  impl->zero = true;
  impl->hermitian_on_axis = true;
  impl->scalar_sign_definite = true;
  impl->alpha = kPi / 2.0 * 0.999;
  impl->eval_real = [](double) { return Matrix2::Zero().eval(); };
  impl->eval_complex = [](Complex) { return Matrix2::Zero().eval(); };
  impl->tail = [](double, double) { return 0.0; };
  impl->tail_sup = [](double, double) { return 0.0; };
  return Potential(impl);
}

Potential Potential::gaussian_scalar(double a, double b) {
  if (!(b > 0.0)) throw DomainError("gaussian_scalar: b must be positive");
  auto impl = std::make_shared<Impl>();
  impl->id = "gaussian_scalar";
  impl->description = {{"type", "gaussian_scalar"}, {"a", a}, {"b", b}};
  impl->zero = (a == 0.0);
  impl->hermitian_on_axis = true;
  impl->scalar_sign_definite = true;
  impl->alpha = kPi / 4.0;
  impl->eval_real = [a, b](double x) -> Matrix2 {
    return a * std::exp(-b * x * x) * Matrix2::Identity();
  };
  impl->eval_complex = [a, b](Complex zx) -> Matrix2 {
    return a * std::exp(-b * zx * zx) * Matrix2::Identity();
  };
  // ||V(e^{i phi} x)|| = |a| exp(-b cos(2 phi) x^2)
  impl->tail = [a, b](double L, double phi) {
    const double c = b * std::cos(2.0 * phi);
    return std::abs(a) * std::sqrt(kPi / c) * std::erfc(std::sqrt(c) * L);
  };
  impl->tail_sup = [a, b](double L, double phi) {
    const double c = b * std::cos(2.0 * phi);
    return std::abs(a) * std::exp(-c * L * L);
  };
  return Potential(impl);
}

Potential Potential::imaginary_gaussian(double a, double b) {
  Potential base = gaussian_scalar(a, b);
  auto impl = std::make_shared<Impl>(*base.impl_);
  impl->id = "imaginary_gaussian";
  impl->description = {{"type", "imaginary_gaussian"}, {"a", a}, {"b", b}};
  impl->hermitian_on_axis = false;
  impl->scalar_sign_definite = false;
  const Complex unit(0.0, 1.0);
  impl->eval_real = [a, b, unit](double x) -> Matrix2 {
    return unit * a * std::exp(-b * x * x) * Matrix2::Identity();
  };
  impl->eval_complex = [a, b, unit](Complex zx) -> Matrix2 {
    return unit * a * std::exp(-b * zx * zx) * Matrix2::Identity();
  };
  return Potential(impl);
}

Potential Potential::sinh_example(Complex mu) {
  if (mu.real() == 0.0)
    throw DomainError("sinh_example: Re(mu) must be nonzero for decay");
  auto impl = std::make_shared<Impl>();
  impl->id = "sinh";
  impl->description = {{"type", "sinh"}, {"mu_re", mu.real()}, {"mu_im", mu.imag()}};
  const double argmu = std::arg(mu.real() > 0.0 ? mu : -mu);
  // zeros of sinh(2 mu z + i) sit on the ray arg z = +-pi/2 - arg(mu)
  impl->alpha = kPi / 2.0 - std::abs(argmu);
  impl->hermitian_on_axis = false;
  impl->scalar_sign_definite = false;
  auto eval = [mu](Complex zx) -> Matrix2 {
    Matrix2 v = Matrix2::Zero();
    const Complex w = 2.0 * mu / std::sinh(2.0 * mu * zx + Complex(0.0, 1.0));
    v(0, 0) = w;
    v(1, 1) = -w;
    return v;
  };
  impl->eval_complex = eval;
  impl->eval_real = [eval](double x) -> Matrix2 { return eval(Complex(x, 0.0)); };
  const double absmu = std::abs(mu);
  auto decay_rate = [absmu, argmu](double phi) {
    return 2.0 * absmu * std::cos(argmu + phi);
  };
  // ||V|| <= 2|mu| csch(c|x|), c the ray decay rate
  impl->tail = [absmu, decay_rate](double L, double phi) {
    const double c = decay_rate(phi);
    const double cl = c * L;
    if (cl < 1e-8) return std::numeric_limits<double>::infinity();
    return (4.0 * absmu / c) * std::log(1.0 / std::tanh(0.5 * cl));
  };
  impl->tail_sup = [absmu, decay_rate](double L, double phi) {
    const double c = decay_rate(phi);
    return 2.0 * absmu / std::sinh(std::max(c * L, 1e-300));
  };
  return Potential(impl);
}

Potential Potential::matrix_table(std::vector<double> x,
                                  std::vector<Matrix2> values) {
  if (x.size() != values.size() || x.size() < 2)
    throw DomainError("matrix_table: need >= 2 rows of matching length");
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  auto impl = std::make_shared<Impl>();
  impl->id = "matrix_table";
  impl->description = {{"type", "matrix_table"}, {"rows", x.size()}};
  for (auto i : order) {
    impl->tab_x.push_back(x[i]);
    impl->tab_v.push_back(values[i]);
  }
  bool herm = true;
  for (const auto& v : impl->tab_v)
    if ((v - v.adjoint().eval()).norm() > 1e-12 * (1.0 + v.norm())) herm = false;
  impl->hermitian_on_axis = herm;
  double peak = impl->tab_x.front(), best = -1.0;
  for (std::size_t i = 0; i < impl->tab_x.size(); ++i) {
    const double n = op_norm(impl->tab_v[i]);
    if (n > best) {
      best = n;
      peak = impl->tab_x[i];
    }
  }
  impl->peak_hint = peak;
  impl->kinks = impl->tab_x;  // piecewise-linear interpolation
  auto raw = impl.get();
  impl->eval_real = [raw](double x) -> Matrix2 {
    const auto& xs = raw->tab_x;
    if (x <= xs.front() || x >= xs.back()) return Matrix2::Zero();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ((1.0 - t) * raw->tab_v[j - 1] + t * raw->tab_v[j]).eval();
  };
  impl->tail = [raw](double L, double phi) {
    if (phi != 0.0) return std::numeric_limits<double>::infinity();
    // trapezoid mass beyond |x| > L; zero outside the table by convention
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < raw->tab_x.size(); ++i) {
      const double a = raw->tab_x[i], b = raw->tab_x[i + 1];
      if (b <= -L || a >= L) {
        mass += 0.5 * (op_norm(raw->tab_v[i]) + op_norm(raw->tab_v[i + 1])) * (b - a);
      }
    }
    return mass;
  };
  impl->tail_sup = [raw](double L, double phi) {
    if (phi != 0.0) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < raw->tab_x.size(); ++i)
      if (std::abs(raw->tab_x[i]) >= L) s = std::max(s, op_norm(raw->tab_v[i]));
    return s;
  };
  return Potential(impl);
}

Potential Potential::matrix_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("matrix_table_csv: cannot open " + path);
  std::vector<double> xs;
  std::vector<Matrix2> vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double c[9];
    bool ok = true;
    for (double& v : c)
      if (!(ss >> v)) {
        ok = false;
        break;
      }
    if (!ok) continue;  // header or malformed line
    xs.push_back(c[0]);
    Matrix2 m;
    m(0, 0) = Complex(c[1], c[2]);
    m(0, 1) = Complex(c[3], c[4]);
    m(1, 0) = Complex(c[5], c[6]);
    m(1, 1) = Complex(c[7], c[8]);
    vs.push_back(m);
  }
  auto p = matrix_table(std::move(xs), std::move(vs));
  return p;
}

Potential Potential::from_function(Custom c) {
  auto impl = std::make_shared<Impl>();
  impl->id = c.id;
  impl->description = {{"type", "custom"}, {"id", c.id}};
  impl->decay = c.decay;
  impl->alpha = c.alpha;
  impl->hermitian_on_axis = c.hermitian_on_axis;
  impl->scalar_sign_definite = c.scalar_sign_definite;
  impl->peak_hint = c.peak_hint;
  impl->kinks = std::move(c.kinks);
  impl->eval_real = std::move(c.eval_real);
  impl->eval_complex = std::move(c.eval_complex);
  impl->tail = std::move(c.tail);
  if (!impl->tail)
    impl->tail = [](double, double) {
      return std::numeric_limits<double>::infinity();
    };
  impl->tail_sup = std::move(c.tail_sup);
  if (!impl->tail_sup)
    impl->tail_sup = [](double, double) {
      return std::numeric_limits<double>::infinity();
    };
  return Potential(impl);
}

Potential Potential::from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "gaussian_scalar")
    return gaussian_scalar(j.at("a").get<double>(), j.at("b").get<double>());
  if (type == "imaginary_gaussian")
    return imaginary_gaussian(j.at("a").get<double>(), j.at("b").get<double>());
  if (type == "sinh")
    return sinh_example(
        Complex(j.at("mu_re").get<double>(), j.at("mu_im").get<double>()));
  if (type == "matrix_table")
    return matrix_table_csv(j.at("file").get<std::string>());
  throw DomainError("unknown potential type '" + type + "'");
}

// ---------------------------------------------------------------------------
// norm operations

namespace {

double trapezoid_scalar(const Potential& v,
                        const std::function<double(double)>& f) {
  // f sampled on the table grid
  double total = 0.0;
  const auto& ks = v.kinks();  // table abscissae
  for (std::size_t i = 0; i + 1 < ks.size(); ++i)
    total += 0.5 * (f(ks[i]) + f(ks[i + 1])) * (ks[i + 1] - ks[i]);
  return total;
}

}  // namespace

double l1_norm(const Potential& v, const QuadOptions& opts) {
  if (v.is_zero()) return 0.0;
  auto f = [&v](double x) { return v.norm_at(x); };
  if (v.tabulated()) return trapezoid_scalar(v, f);
  const double L = v.truncation_radius(opts.abs_tol);
  return integrate_with_kinks(f, -L, L, v.kinks(), opts);
}

double lp_norm(const Potential& v, double p, const QuadOptions& opts) {
  if (!(p > 1.0) || std::isinf(p))
    throw DomainError("lp_norm: p must lie in (1, inf)");
  if (v.is_zero()) return 0.0;
  auto f = [&v, p](double x) { return std::pow(v.norm_at(x), p); };
  if (v.tabulated()) return std::pow(trapezoid_scalar(v, f), 1.0 / p);
  // tail of ||V||^p <= tail_sup^{p-1} * tail of ||V||
  double L = 1.0;
  while (std::pow(v.tail_sup(L), p - 1.0) * v.tail_bound(L) > opts.abs_tol) {
    L *= 2.0;
    if (L > 1e6) throw NonIntegrableError("lp_norm: tail not certified");
  }
  const double integral = integrate_with_kinks(f, -L, L, v.kinks(), opts);
  return std::pow(integral, 1.0 / p);
}

Factorization polar_factorize(const Potential& v) {
  Factorization f;
  f.A = [v](double x) { return polar_factorize_matrix(v(x)).a; };
  f.B = [v](double x) { return polar_factorize_matrix(v(x)).b; };
  return f;
}

namespace {

// crossings of ||V(x)|| = eps located by grid scan plus bisection
std::vector<double> norm_level_crossings(const Potential& v, double eps,
                                         double L) {
  const int n = 256;
  std::vector<double> xs(n + 1), g(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = -L + 2.0 * L * i / n;
    g[i] = v.norm_at(xs[i]) - eps;
  }
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    if ((g[i] > 0.0) == (g[i + 1] > 0.0)) continue;
    double lo = xs[i], hi = xs[i + 1];
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = v.norm_at(mid) - eps;
      ((gm > 0.0) == (g[i] > 0.0) ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace

ClippedDecomposition clip_decompose(const Potential& v, double epsilon,
                                    const QuadOptions& opts) {
  if (!(epsilon > 0.0)) throw DomainError("clip_decompose: epsilon > 0 required");
  if (v.decay_class() == DecayClass::Lp)
    throw DomainError("clip_decompose: potential must be L1 or L1+Linf0");
  ClippedDecomposition dec;
  dec.epsilon = epsilon;
  dec.X = [v, epsilon](double x) -> Matrix2 {
    const Matrix2 m = v(x);
    const double n = op_norm(m);
    return n <= epsilon ? m : (epsilon / n * m).eval();
  };
  dec.W = [v, epsilon](double x) -> Matrix2 {
    const Matrix2 m = v(x);
    const double n = op_norm(m);
    return n <= epsilon ? Matrix2::Zero().eval()
                        : ((1.0 - epsilon / n) * m).eval();
  };
  if (v.is_zero()) return dec;
  // tail certificate for (||V|| - eps)_+ : below the tail of ||V|| once the
  // tail sup has dropped under eps
  double L = 1.0;
  while (!(v.tail_sup(L) < epsilon && v.tail_bound(L) <= opts.abs_tol)) {
    L *= 2.0;
    if (L > 1e6)
      throw NonIntegrableError("clip_decompose: clipped tail not certified");
  }
  auto wnorm = [&v, epsilon](double x) {
    return std::max(v.norm_at(x) - epsilon, 0.0);
  };
  std::vector<double> kinks = v.kinks();
  for (double c : norm_level_crossings(v, epsilon, L)) kinks.push_back(c);
  dec.l1_of_W = integrate_with_kinks(wnorm, -L, L, kinks, opts);
  return dec;
}

double f_v(const Potential& v, double s, const QuadOptions& opts) {
  if (!(s > 0.0)) throw DomainError("f_v: s > 0 required");
  if (v.is_zero()) return 0.0;
  const double L =
      v.tabulated() ? v.truncation_radius() : v.truncation_radius(opts.abs_tol);
  auto inner = [&](double y) {
    auto f = [&v, s, y](double x) {
      return v.norm_at(x) * std::exp(-s * std::abs(x - y));
    };
    std::vector<double> kinks = v.kinks();
    kinks.push_back(y);
    return integrate_with_kinks(f, -L, L, kinks, opts);
  };
  // initial y grid: uniform nodes plus the norm peak
  const int n = 64;
  double best_y = v.peak_hint(), best = inner(best_y);
  for (int i = 0; i <= n; ++i) {
    const double y = -L + 2.0 * L * i / n;
    const double g = inner(y);
    if (g > best) {
      best = g;
      best_y = y;
    }
  }
  const double h = 2.0 * L / n;
  auto neg = [&](double y) { return -inner(y); };
  const auto [ymin, fneg] = boost::math::tools::brent_find_minima(
      neg, best_y - h, best_y + h, 40);
  (void)ymin;
  return std::max(best, -fneg);
}

double dilated_l1_norm(const Potential& v, double phi, const QuadOptions& opts) {
  if (v.is_zero()) return 0.0;
  if (!v.alpha())
    throw AnalyticityViolationError("dilated_l1_norm: no analyticity sector");
  if (std::abs(phi) >= *v.alpha())
    throw AnalyticityViolationError("dilated_l1_norm: |phi| >= alpha");
  if (phi == 0.0) return l1_norm(v, opts);
  const double L = v.truncation_radius(opts.abs_tol, phi);
  auto f = [&v, phi](double x) { return op_norm(v.eval_ray(phi, x)); };
  return integrate_with_kinks(f, -L, L, v.kinks(), opts);
}

double v_theta(const Potential& v, double phi0, const QuadOptions& opts) {
  if (v.is_zero()) return 0.0;
  if (!v.alpha()) throw AnalyticityViolationError("v_theta: no sector");
  const double a = *v.alpha();
  if (!(phi0 >= 0.0 && phi0 < a))
    throw AnalyticityViolationError("v_theta: phi0 outside [0, alpha)");
  if (v.scalar_sign_definite() && v.hermitian_on_axis())
    return dilated_l1_norm(v, phi0, opts);  // minimum sits at the left edge
  const double hi = phi0 + (a - phi0) * 0.995;
  auto f = [&](double phi) { return dilated_l1_norm(v, phi, opts); };
  const auto [pmin, fmin] = boost::math::tools::brent_find_minima(f, phi0, hi, 30);
  (void)pmin;
  return std::min(fmin, f(phi0));
}

std::pair<double, double> diagonal_l1_norms(const Potential& v,
                                            const QuadOptions& opts) {
  if (v.is_zero()) return {0.0, 0.0};
  auto f11 = [&v](double x) { return std::abs(v(x)(0, 0)); };
  auto f22 = [&v](double x) { return std::abs(v(x)(1, 1)); };
  if (v.tabulated())
    return {trapezoid_scalar(v, f11), trapezoid_scalar(v, f22)};
  const double L = v.truncation_radius(opts.abs_tol);
  return {integrate_with_kinks(f11, -L, L, v.kinks(), opts),
          integrate_with_kinks(f22, -L, L, v.kinks(), opts)};
}

}  // namespace diracspec
