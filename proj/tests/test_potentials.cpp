#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "diracspec/potential.hpp"
#include "test_helpers.hpp"

using namespace diracspec;
using diracspec::testing::exp_scalar;
using diracspec::testing::matrix_gaussian;
using diracspec::testing::random_matrix;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("l1_norm") {
  SUBCASE("scalar Gaussian has the closed-form integral") {
    const Potential v = Potential::gaussian_scalar(0.3, 1.0);
    CHECK(l1_norm(v) == doctest::Approx(0.3 * std::sqrt(kPi)).epsilon(1e-9));
  }
  SUBCASE("zero potential") { CHECK(l1_norm(Potential::zero()) == 0.0); }
  SUBCASE("sinh potential at arg mu = 0") {
    const Potential v = Potential::sinh_example({1.0, 0.0});
    CHECK(l1_norm(v) == doctest::Approx(3.4183951885).epsilon(3e-10));
    // independent of |mu|
    const Potential v3 = Potential::sinh_example({3.0, 0.0});
    CHECK(l1_norm(v3) == doctest::Approx(l1_norm(v)).epsilon(1e-8));
  }
  SUBCASE("uncertifiable tail raises NonIntegrable") {
    Potential::Custom c;
    c.id = "slow";
    c.eval_real = [](double x) -> Matrix2 {
      return 1.0 / (1.0 + std::abs(x)) * Matrix2::Identity();
    };
    CHECK_THROWS_AS(l1_norm(Potential::from_function(std::move(c))),
                    NonIntegrableError);
  }
}

TEST_CASE("lp_norm") {
  SUBCASE("Gaussian moment, p = 2") {
    const Potential v = Potential::gaussian_scalar(1.0, 1.0);
    CHECK(lp_norm(v, 2.0) ==
          doctest::Approx(std::pow(kPi / 2.0, 0.25)).epsilon(1e-9));
  }
  SUBCASE("zero potential") { CHECK(lp_norm(Potential::zero(), 2.5) == 0.0); }
  SUBCASE("scaling rule: ||lam V(lam .)||_p = lam^{1-1/p} ||V||_p") {
    const double lam = 2.0, a = 0.7, b = 1.3;
    const Potential v = Potential::gaussian_scalar(a, b);
    const Potential vs = Potential::gaussian_scalar(lam * a, lam * lam * b);
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(lp_norm(vs, p) ==
            doctest::Approx(std::pow(lam, 1.0 - 1.0 / p) * lp_norm(v, p))
                .epsilon(1e-8));
    }
  }
  SUBCASE("p out of range") {
    CHECK_THROWS_AS(lp_norm(Potential::gaussian_scalar(1, 1), 1.0), DomainError);
  }
}

TEST_CASE("polar_factorize") {
  SUBCASE("Hermitian positive: U = I, A = B") {
    const Matrix2 h = (Matrix2() << 2.0, 0.5, 0.5, 1.0).finished();
    const Potential v = matrix_gaussian(h, 1.0);
    const Factorization f = polar_factorize(v);
    for (double x : {-0.7, 0.0, 1.1}) {
      CHECK((f.A(x) - f.B(x)).norm() < 1e-13);
      CHECK((f.A(x) * f.A(x) - v(x)).norm() < 1e-13);
    }
  }
  SUBCASE("scalar phase: V = i g(x) I gives B = i A") {
    const Potential v = Potential::imaginary_gaussian(1.0, 1.0);
    const Factorization f = polar_factorize(v);
    for (double x : {-1.0, 0.3}) {
      CHECK((f.B(x) - Complex(0.0, 1.0) * f.A(x)).norm() < 1e-13);
      const double g = std::exp(-x * x);
      CHECK((f.A(x) - std::sqrt(g) * Matrix2::Identity()).norm() < 1e-13);
    }
  }
  SUBCASE("random matrices reconstruct") {
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
      const Matrix2 m = random_matrix(rng);
      const PolarPair p = polar_factorize_matrix(m);
      CHECK((p.b * p.a - m).norm() <= 1e-12 * (1.0 + m.norm()));
      CHECK(op_norm(p.a) == doctest::Approx(std::sqrt(op_norm(m))).epsilon(1e-12));
      CHECK(op_norm(p.b) == doctest::Approx(std::sqrt(op_norm(m))).epsilon(1e-12));
    }
    // rank deficient
    Matrix2 r;
    r << 1.0, 2.0, 0.5, 1.0;
    const PolarPair p = polar_factorize_matrix(r);
    CHECK((p.b * p.a - r).norm() < 1e-13);
  }
}

TEST_CASE("matrix norms") {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Matrix2 m = random_matrix(rng);
    const double on = op_norm(m), hs = hs_norm(m);
    CHECK(on <= hs * (1.0 + 1e-13));
    CHECK(hs <= std::sqrt(2.0) * on * (1.0 + 1e-13));
  }
}

TEST_CASE("clip_decompose") {
  const Potential v = exp_scalar(1.0, 1.0);
  SUBCASE("closed-form clipped mass at eps = 0.5") {
    const ClippedDecomposition dec = clip_decompose(v, 0.5);
    CHECK(dec.l1_of_W == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-8));
  }
  SUBCASE("eps above the sup norm clips everything") {
    const ClippedDecomposition dec = clip_decompose(v, 1.5);
    CHECK(dec.l1_of_W == doctest::Approx(0.0));
    CHECK(op_norm(dec.W(0.0)) < 1e-14);
  }
  SUBCASE("eps -> 0 recovers the L1 norm") {
    const ClippedDecomposition dec = clip_decompose(v, 1e-6);
    CHECK(std::abs(dec.l1_of_W - l1_norm(v)) < 1e-4);
  }
  SUBCASE("W + X = V pointwise and ||X|| <= eps") {
    const ClippedDecomposition dec = clip_decompose(v, 0.37);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = uni(rng);
      CHECK((dec.W(x) + dec.X(x) - v(x)).norm() <= 1e-13);
      CHECK(op_norm(dec.X(x)) <= 0.37 * (1.0 + 1e-13));
    }
  }
}

TEST_CASE("f_v") {
  const Potential v = exp_scalar(1.0, 1.0);
  SUBCASE("closed form 2/(1+s) for the exponential profile") {
    for (double s : {0.3, 1.0, 2.5}) {
      CHECK(f_v(v, s) == doctest::Approx(2.0 / (1.0 + s)).epsilon(1e-7));
    }
  }
  SUBCASE("decay in s") { CHECK(f_v(v, 1000.0) < f_v(v, 1.0)); }
  SUBCASE("dominated by the L1 norm") {
    for (const Potential& p :
         {v, Potential::gaussian_scalar(0.4, 2.0), Potential::sinh_example({1.0, 0.0})}) {
      const double n1 = l1_norm(p);
      for (double s : {0.1, 1.0, 10.0}) CHECK(f_v(p, s) <= n1 * (1.0 + 1e-6));
    }
  }
  SUBCASE("monotone nonincreasing and convex") {
    for (const Potential& p : {v, Potential::gaussian_scalar(0.5, 1.0)}) {
      const double s1 = 0.5, s2 = 1.0, s3 = 1.5;
      const double f1 = f_v(p, s1), f2 = f_v(p, s2), f3 = f_v(p, s3);
      CHECK(f1 >= f2 - 1e-6);
      CHECK(f2 >= f3 - 1e-6);
      CHECK(f2 <= 0.5 * (f1 + f3) + 1e-6);
    }
  }
}

TEST_CASE("dilated_l1_norm") {
  const Potential v = Potential::gaussian_scalar(0.3, 1.0);
  SUBCASE("Gaussian closed form") {
    const double phi = kPi / 6.0;
    CHECK(dilated_l1_norm(v, phi) ==
          doctest::Approx(0.3 * std::sqrt(kPi) / std::sqrt(std::cos(2.0 * phi)))
              .epsilon(1e-8));
    CHECK(dilated_l1_norm(v, phi) ==
          doctest::Approx(0.3 * std::sqrt(2.0 * kPi)).epsilon(1e-8));
  }
  SUBCASE("phi = 0 reduces to the L1 norm") {
    CHECK(dilated_l1_norm(v, 0.0) == doctest::Approx(l1_norm(v)).epsilon(1e-12));
  }
  SUBCASE("outside the sector") {
    CHECK_THROWS_AS(dilated_l1_norm(v, kPi / 4.0), AnalyticityViolationError);
    CHECK_THROWS_AS(dilated_l1_norm(exp_scalar(1.0, 1.0), 0.1),
                    AnalyticityViolationError);
  }
  SUBCASE("log-convexity in phi") {
    for (double base : {-0.5, -0.1, 0.2}) {
      const double h = 0.15;
      const double f1 = dilated_l1_norm(v, base - h);
      const double f2 = dilated_l1_norm(v, base);
      const double f3 = dilated_l1_norm(v, base + h);
      CHECK(f2 * f2 <= f1 * f3 * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("v_theta") {
  const Potential v = Potential::gaussian_scalar(0.3, 1.0);
  SUBCASE("sign-definite: equals the dilated norm at phi0") {
    const double phi0 = kPi / 6.0;
    CHECK(v_theta(v, phi0) ==
          doctest::Approx(dilated_l1_norm(v, phi0)).epsilon(1e-10));
    CHECK(v_theta(v, 0.0) == doctest::Approx(l1_norm(v)).epsilon(1e-10));
  }
  SUBCASE("non-sign-definite: search result bounded by the phi0 value") {
    Matrix2 sig3;
    sig3 << 1.0, 0.0, 0.0, -1.0;
    const Potential w = matrix_gaussian(0.3 * sig3, 1.0);
    REQUIRE_FALSE(w.scalar_sign_definite());
    const double phi0 = 0.2;
    CHECK(v_theta(w, phi0) <= dilated_l1_norm(w, phi0) * (1.0 + 1e-9));
  }
}

TEST_CASE("operator norm dominated by Hilbert-Schmidt mass") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix2 m = random_matrix(rng);
    const Potential v = matrix_gaussian(m, 1.0);
    const double n1 = l1_norm(v);
    const double hs_mass =
        integrate([&](double x) { return hs_norm(v(x)); }, -6.0, 6.0);
    CHECK(n1 <= hs_mass * (1.0 + 1e-10));
  }
}

TEST_CASE("matrix_table") {
  // tabulate a Gaussian and compare the trapezoid norm against the catalog
  const int n = 4001;
  std::vector<double> xs(n);
  std::vector<Matrix2> vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = -8.0 + 16.0 * i / (n - 1);
    vs[i] = (0.3 * std::exp(-xs[i] * xs[i]) * Matrix2::Identity()).eval();
  }
  const Potential tab = Potential::matrix_table(xs, vs);
  CHECK(tab.tabulated());
  CHECK(tab.hermitian_on_axis());
  CHECK(l1_norm(tab) == doctest::Approx(0.3 * std::sqrt(kPi)).epsilon(1e-6));
  CHECK_THROWS_AS(dilated_l1_norm(tab, 0.1), AnalyticityViolationError);

  SUBCASE("csv round trip") {
    const std::string path = "table_test_tmp.csv";
    {
      std::ofstream out(path);
      out.precision(17);
      out << "x,re11,im11,re12,im12,re21,im21,re22,im22\n";
      for (int i = 0; i < n; ++i) {
        out << xs[i];
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            out << "," << vs[i](r, c).real() << "," << vs[i](r, c).imag();
        out << "\n";
      }
    }
    const Potential loaded = Potential::matrix_table_csv(path);
    CHECK(l1_norm(loaded) == doctest::Approx(l1_norm(tab)).epsilon(1e-12));
    std::remove(path.c_str());
  }
}

TEST_CASE("diagonal L1 norms of the imaginary Gaussian") {
  const Potential v = Potential::imaginary_gaussian(0.5, 2.0);
  const auto [n11, n22] = diagonal_l1_norms(v);
  const double expect = 0.5 * std::sqrt(kPi / 2.0);
  CHECK(n11 == doctest::Approx(expect).epsilon(1e-8));
  CHECK(n22 == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("potential json descriptions") {
  const auto j = nlohmann::json::parse(
      R"({"type":"gaussian_scalar","a":0.3,"b":1.0})");
  const Potential v = Potential::from_json(j);
  CHECK(l1_norm(v) == doctest::Approx(0.3 * std::sqrt(kPi)).epsilon(1e-9));
  CHECK_THROWS_AS(Potential::from_json(nlohmann::json{{"type", "nope"}}),
                  DomainError);
  const auto js = nlohmann::json::parse(
      R"({"type":"sinh","mu_re":1.0,"mu_im":0.0})");
  CHECK(l1_norm(Potential::from_json(js)) == doctest::Approx(3.4184).epsilon(1e-4));
}

TEST_CASE("scaled potentials") {
  const Potential v = Potential::sinh_example({1.0, 0.0});
  const double target = 0.9;
  const Potential vs = v.scaled(target / l1_norm(v));
  CHECK(l1_norm(vs) == doctest::Approx(target).epsilon(1e-8));
}
