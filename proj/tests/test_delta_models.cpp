#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diracspec/delta_models.hpp"
#include "diracspec/enclosures.hpp"

using namespace diracspec;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("delta_spectrum closed forms") {
  SUBCASE("kappa = 0.8, tau = pi/2, m = 1: eigenvalues +-0.6") {
    const DeltaSpectrum spec = delta_spectrum({0.8, kPi / 2.0, 1.0});
    CHECK(spec.regime == DeltaRegime::Subcritical);
    REQUIRE(spec.eigenvalues.size() == 2);
    CHECK(std::abs(spec.eigenvalues[0] - Complex(-0.6, 0.0)) < 1e-12);
    CHECK(std::abs(spec.eigenvalues[1] - Complex(0.6, 0.0)) < 1e-12);
    REQUIRE(spec.zetas.size() == 2);
    // zeta+ = -2i, zeta- = -0.5i
    CHECK(std::abs(spec.zetas[0] - Complex(0.0, -2.0)) < 1e-12);
    CHECK(std::abs(spec.zetas[1] - Complex(0.0, -0.5)) < 1e-12);
  }
  SUBCASE("tau in (-pi, 0]: no eigenvalues") {
    for (double tau : {-kPi / 2.0, -0.3, 0.0}) {
      const DeltaSpectrum spec = delta_spectrum({0.8, tau, 1.0});
      CHECK(spec.eigenvalues.empty());
      CHECK(spec.zetas.empty());
    }
  }
  SUBCASE("kappa = 2, tau = 0, m = 1: single eigenvalue i/sqrt(3)") {
    const DeltaSpectrum spec = delta_spectrum({2.0, 0.0, 1.0});
    CHECK(spec.regime == DeltaRegime::Supercritical);
    REQUIRE(spec.eigenvalues.size() == 1);
    CHECK(std::abs(spec.eigenvalues[0] - Complex(0.0, 1.0 / std::sqrt(3.0))) < 1e-12);
  }
  SUBCASE("massless: no point eigenvalues are produced") {
    const DeltaSpectrum spec = delta_spectrum({0.8, kPi / 2.0, 0.0});
    CHECK(spec.eigenvalues.empty());
    CHECK(delta_spectrum({2.0, 1.0, 0.0}).regime == DeltaRegime::CriticalDense);
  }
  SUBCASE("kappa = 1 collapses to a double root") {
    const DeltaSpectrum spec = delta_spectrum({1.0, kPi / 2.0, 1.0});
    CHECK(spec.double_root);
    CHECK(spec.zetas.size() == 1);
  }
}

TEST_CASE("root identities (Vieta)") {
  for (double kappa : {0.3, 0.8, 1.5, 2.0, 5.0}) {
    for (int i = 0; i < 64; ++i) {
      const double tau = -kPi + 2.0 * kPi * i / 64;
      const Complex phase = std::exp(Complex(0.0, -tau));
      const Complex root = std::sqrt(Complex(1.0 - kappa * kappa, 0.0));
      const Complex zp = phase * (1.0 + root) / kappa;
      const Complex zm = phase * (1.0 - root) / kappa;
      CHECK(std::abs(zp * zm - std::exp(Complex(0.0, -2.0 * tau))) < 1e-12);
      CHECK(std::abs(zp + zm - 2.0 * phase / kappa) < 1e-12);
      if (kappa >= 1.0) {
        CHECK(std::abs(std::abs(zp) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(zm) - 1.0) < 1e-12);
        // Im zeta_pm = (-sin tau +- cos tau sqrt(kappa^2-1))/kappa
        const double s = std::sqrt(kappa * kappa - 1.0);
        CHECK(zp.imag() ==
              doctest::Approx((-std::sin(tau) + std::cos(tau) * s) / kappa)
                  .epsilon(1e-12).scale(1.0));
        CHECK(zm.imag() ==
              doctest::Approx((-std::sin(tau) - std::cos(tau) * s) / kappa)
                  .epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("sharpness: eigenvalues on the enclosure disk boundaries") {
  SUBCASE("rational instance") {
    CHECK(delta_on_disk_boundary({0.8, kPi / 2.0, 1.0}) <= 1e-12);
  }
  SUBCASE("numeric instances") {
    CHECK(delta_on_disk_boundary({0.5, kPi / 4.0, 1.0}) <= 1e-10);
    CHECK(delta_on_disk_boundary({0.3, 3.0 * kPi / 4.0, 2.0}) <= 1e-10);
  }
  SUBCASE("outside the subcritical window") {
    CHECK_THROWS_AS(delta_on_disk_boundary({1.2, kPi / 2.0, 1.0}),
                    ConditionViolatedError);
    CHECK_THROWS_AS(delta_on_disk_boundary({0.8, -0.4, 1.0}),
                    ConditionViolatedError);
  }
  SUBCASE("tau sweep traces the full boundary circles") {
    const double kappa = 0.9, m = 1.0;
    const EnclosureResult enc = theorem1_disks(kappa, m);
    std::vector<double> angles;
    for (int i = 1; i < 256; ++i) {
      const double tau = kPi * i / 256;
      CHECK(delta_on_disk_boundary({kappa, tau, m}) <= 1e-10);
      const DeltaSpectrum spec = delta_spectrum({kappa, tau, m});
      for (const Complex& z : spec.eigenvalues) {
        if (z.real() > 0.0)
          angles.push_back(std::arg((z - m * enc.x0) / (m * enc.r0)));
      }
    }
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 2.0 * kPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i)
      max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
    CHECK(max_gap < 0.2);
  }
}

TEST_CASE("dense half-plane classification") {
  CHECK(delta_dense_halfplane({2.0, std::acos(0.5), 0.0}) == HalfPlane::Upper);
  CHECK(delta_dense_halfplane({2.0, kPi - std::acos(0.5), 0.0}) == HalfPlane::Lower);
  CHECK_FALSE(delta_dense_halfplane({2.0, 0.0, 0.0}).has_value());
  CHECK_THROWS_AS(delta_dense_halfplane({0.8, 1.0, 0.0}), ConditionViolatedError);
  CHECK_THROWS_AS(delta_dense_halfplane({2.0, 1.0, 1.0}), ConditionViolatedError);
}

TEST_CASE("supercritical eigenvalues cover the imaginary axis") {
  // as tau varies the mapped roots are purely imaginary
  for (int i = 0; i < 64; ++i) {
    const double tau = -kPi + 2.0 * kPi * i / 64;
    const DeltaSpectrum spec = delta_spectrum({1.7, tau, 1.0});
    for (const Complex& z : spec.eigenvalues) CHECK(std::abs(z.real()) < 1e-12);
  }
}
