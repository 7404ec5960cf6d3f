#include <doctest.h>

#include <cmath>

#include "dipolar/kernels.hpp"
#include "dipolar/numeric.hpp"

using namespace dipolar;
using kernels::KernelParams;
using kernels::LayerSep;

TEST_CASE("indicator cutoff") {
  CHECK(kernels::g_cutoff(0.2, 0.1) == 1.0);
  CHECK(kernels::g_cutoff(0.05, 0.1) == 0.0);
  CHECK(kernels::g_cutoff(0.1, 0.1) == 0.0);  // open interval above delta
}

TEST_CASE("phi_delta values and branch continuity") {
  CHECK(kernels::phi_delta(0.2, 0.1) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(kernels::phi_delta(0.05, 0.1) ==
        doctest::Approx(10.0 * (1.0 - std::log(0.5))).epsilon(1e-14));
  for (double d : {0.05, 0.2, 0.45}) {
    const double eps = 1e-12 * d;
    CHECK(kernels::phi_delta(d, d) == doctest::Approx(1.0 / d).epsilon(1e-12));
    CHECK(kernels::phi_delta(d - eps, d) == doctest::Approx(1.0 / d).epsilon(1e-9));
  }
  CHECK_THROWS(kernels::phi_delta(0.0, 0.1));
}

TEST_CASE("phi_delta is strictly decreasing and matches its derivative") {
  int idx = 0;
  for (int di = 1; di <= 10; ++di) {
    const double d = 0.045 * di;
    double prev = kernels::phi_delta(1e-4, d);
    for (int i = 1; i <= 100; ++i) {
      const double r = 1e-4 + 0.03 * i;
      const double val = kernels::phi_delta(r, d);
      CHECK(val < prev);
      prev = val;
      ++idx;
    }
  }
  CHECK(idx == 1000);

  for (double d : {0.1, 0.3}) {
    for (double r : {0.2 * d, 0.7 * d, 1.3 * d, 5.0 * d}) {
      const double h = 1e-6 * r;
      const double fd = (kernels::phi_delta(r + h, d) - kernels::phi_delta(r - h, d)) / (2 * h);
      CHECK(fd == doctest::Approx(kernels::phi_delta_prime(r, d)).epsilon(1e-6));
    }
  }
}

TEST_CASE("phi_delta_prime values") {
  CHECK(kernels::phi_delta_prime(2.0, 0.1) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(kernels::phi_delta_prime(0.05, 0.1) == doctest::Approx(-200.0).epsilon(1e-14));
  for (double d : {0.1, 0.4})
    CHECK(kernels::phi_delta_prime(d, d) == doctest::Approx(-1.0 / (d * d)).epsilon(1e-12));
  CHECK_THROWS(kernels::phi_delta_prime(0.0, 0.1));
}

TEST_CASE("kernel_K values") {
  KernelParams p{1.0, 0.1, LayerSep::finite(1.0)};
  // numerator of the layer term vanishes at r = sqrt(2) l
  const double r0 = std::sqrt(2.0);
  CHECK(kernels::kernel_K(r0, p) == doctest::Approx(1.0 / (r0 * r0 * r0)).epsilon(1e-14));
  CHECK(kernels::kernel_K(1.0, p) ==
        doctest::Approx(1.0 + 1.0 / (2.0 * std::sqrt(2.0) * 2.0)).epsilon(1e-12));

  KernelParams pinf{1.0, 0.1, LayerSep::infinite()};
  CHECK(kernels::kernel_K(0.05, pinf) == 0.0);
}

TEST_CASE("kernel positivity below sqrt(2) l") {
  KernelParams p{1.0, 0.2, LayerSep::finite(0.5)};  // delta < sqrt(2) l
  for (int i = 1; i <= 500; ++i) {
    const double r = 0.01 * i;
    CHECK(kernels::kernel_K(r, p) > 0.0);
  }
}

TEST_CASE("phi_delta_l values") {
  KernelParams p{1.0, 0.1, LayerSep::finite(1.0)};
  CHECK(kernels::phi_delta_l(1.0, p) ==
        doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(kernels::phi_delta_l(0.1, p) ==
        doctest::Approx(10.0 - 1.0 / std::sqrt(0.01 + 1.0)).epsilon(1e-14));
  KernelParams pinf{1.0, 0.1, LayerSep::infinite()};
  for (double r : {0.03, 0.1, 0.7})
    CHECK(kernels::phi_delta_l(r, pinf) == kernels::phi_delta(r, pinf.delta));
}

TEST_CASE("kernel total mass") {
  CHECK(kernels::kernel_total_mass({1.0, 0.1, LayerSep::infinite()}) ==
        doctest::Approx(20.0 * M_PI).epsilon(1e-14));
  CHECK(kernels::kernel_total_mass({1.0, 0.5, LayerSep::finite(2.0)}) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-14));

  // The layer modification carries zero net mass: radial integral + tail.
  const double l = 0.7, R = 300.0;
  auto layer = [l](double r) {
    const double d2 = r * r + l * l;
    return (r * r - 2.0 * l * l) / (d2 * d2 * std::sqrt(d2)) * r;
  };
  const double inner = numeric::adaptive_simpson(layer, 0.0, R, 1e-13);
  const double rl = std::sqrt(R * R + l * l);
  const double tail = -(-1.0 / rl + l * l / (rl * rl * rl));
  CHECK(inner + tail == doctest::Approx(0.0).epsilon(1e-10));

  // Radial integral of the full kernel toward the closed-form mass.
  KernelParams p{1.0, 0.05, LayerSep::infinite()};
  auto full = [&](double r) { return kernels::kernel_K(r, p) * r; };
  const double num = 2.0 * M_PI * numeric::adaptive_simpson(full, p.delta * (1 + 1e-13), R, 1e-12);
  const double tail_g = 2.0 * M_PI / R;
  CHECK(num + tail_g == doctest::Approx(kernels::kernel_total_mass(p)).epsilon(1e-8));
}

TEST_CASE("elliptic integrals: exact points and conventions") {
  CHECK(kernels::elliptic_K(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(kernels::elliptic_E(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(kernels::elliptic_E(1.0) == 1.0);
  CHECK_THROWS(kernels::elliptic_K(1.0));
  CHECK_THROWS(kernels::elliptic_K(-0.1));

  // the parameter multiplies sin^2: compare against direct quadrature
  for (int i = 0; i <= 9; ++i) {
    const double k = 0.1 * i;
    const double kq = numeric::adaptive_simpson(
        [k](double t) { return 1.0 / std::sqrt(1.0 - k * numeric::sqr(std::sin(t))); }, 0.0,
        M_PI / 2, 1e-14);
    const double eq = numeric::adaptive_simpson(
        [k](double t) { return std::sqrt(1.0 - k * numeric::sqr(std::sin(t))); }, 0.0, M_PI / 2,
        1e-14);
    CHECK(kernels::elliptic_K(k) == doctest::Approx(kq).epsilon(1e-12));
    CHECK(kernels::elliptic_E(k) == doctest::Approx(eq).epsilon(1e-12));
  }
}

TEST_CASE("elliptic combination used by the convexity argument") {
  const double value =
      1.0 + 7.0 * kernels::elliptic_E(0.85) - 0.5 * (4.0 + 5.0 * 0.85) * kernels::elliptic_K(0.85);
  CHECK(value == doctest::Approx(-0.850922).epsilon(2e-4));
  CHECK(value < 0.0);
}

TEST_CASE("layer separation tag") {
  CHECK(!LayerSep::infinite().is_finite());
  CHECK(LayerSep::finite(2.0).value() == 2.0);
  CHECK_THROWS(LayerSep::finite(0.0));
  CHECK_THROWS(LayerSep::infinite().value());
  KernelParams bad{1.0, 0.6, LayerSep::infinite()};
  CHECK_THROWS(bad.validate());
}
