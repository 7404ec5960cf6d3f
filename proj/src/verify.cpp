#include "dipolar/verify.hpp"

#include <cmath>
#include <sstream>

#include "dipolar/ansatz.hpp"
#include "dipolar/energy.hpp"
#include "dipolar/geometry.hpp"
#include "dipolar/kernels.hpp"
#include "dipolar/numeric.hpp"

namespace dipolar::verify {

using energy::energy_boundary;
using geometry::ShapeConfig;
using kernels::KernelParams;
using kernels::LayerSep;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check_elliptic_quadrature() {
  CheckResult r{"elliptic AGM vs quadrature", true, ""};
  double worst = 0.0;
  for (int i = 0; i <= 9; ++i) {
    const double k = 0.1 * i;
    const double kq = numeric::adaptive_simpson(
        [k](double t) { return 1.0 / std::sqrt(1.0 - k * numeric::sqr(std::sin(t))); }, 0.0,
        0.5 * M_PI, 1e-13);
    const double eq = numeric::adaptive_simpson(
        [k](double t) { return std::sqrt(1.0 - k * numeric::sqr(std::sin(t))); }, 0.0, 0.5 * M_PI,
        1e-13);
    worst = std::max(worst, std::abs(kq - kernels::elliptic_K(k)));
    worst = std::max(worst, std::abs(eq - kernels::elliptic_E(k)));
  }
  r.passed = worst < 1e-10;
  r.detail = "max deviation " + fmt(worst);
  return r;
}

CheckResult check_kernel_identities() {
  CheckResult r{"kernel potential and mass identities", true, ""};
  double worst = 0.0;
  // phi' against central differences away from the kink.
  for (int i = 1; i <= 40; ++i) {
    const double d = 0.05 + 0.4 * (i % 7) / 7.0;
    for (double rr : {0.3 * d, 0.9 * d, 1.5 * d, 4.0 * d}) {
      const double h = 1e-6 * rr;
      const double fd =
          (kernels::phi_delta(rr + h, d) - kernels::phi_delta(rr - h, d)) / (2.0 * h);
      worst = std::max(worst,
                       std::abs(fd - kernels::phi_delta_prime(rr, d)) /
                           std::abs(kernels::phi_delta_prime(rr, d)));
    }
  }
  if (worst > 1e-6) {
    r.passed = false;
    r.detail = "phi' finite-difference deviation " + fmt(worst);
    return r;
  }
  // Radial integral of the kernel against the closed-form total mass.
  KernelParams params{1.0, 0.05, LayerSep::finite(0.7)};
  const double R = 400.0;
  auto integrand = [&](double rr) { return kernels::kernel_K(rr, params) * rr; };
  const double numeric_part =
      2.0 * M_PI * (numeric::adaptive_simpson(integrand, 1e-12, params.delta, 1e-12) +
                    numeric::adaptive_simpson(integrand, params.delta, R, 1e-11));
  const double l = params.ell.value();
  // closed-form tails: 2 pi [1/R] for the cutoff part and the l-part tail
  const double tail_g = 2.0 * M_PI / R;
  const double rl = std::sqrt(R * R + l * l);
  const double tail_l = -2.0 * M_PI * (1.0 / rl - l * l / (rl * rl * rl));
  const double total = numeric_part + tail_g + tail_l;
  const double err = std::abs(total - kernels::kernel_total_mass(params));
  if (err > 1e-6) {
    r.passed = false;
    r.detail = "radial mass deviation " + fmt(err);
    return r;
  }
  // positivity for delta < sqrt(2) l
  KernelParams pos{1.0, 0.3, LayerSep::finite(0.25)};
  for (int i = 1; i <= 2000; ++i) {
    const double rr = 1e-3 * i;
    if (kernels::kernel_K(rr, pos) <= 0.0) {
      r.passed = false;
      r.detail = "kernel not positive at r=" + fmt(rr);
      return r;
    }
  }
  r.detail = "ok";
  return r;
}

CheckResult check_convexity_certificate(bool quick) {
  CheckResult r{"convexity certificate (h2, h1, g'')", true, ""};
  const int grid = quick ? 1000 : 10000;
  for (int i = 1; i < grid; ++i) {
    const double t = static_cast<double>(i) / grid;
    const double h2v = ansatz::h2(t);
    if (!(h2v > 0.0)) {
      r.passed = false;
      r.detail = "h2 <= 0 at t=" + fmt(t);
      return r;
    }
    if (!(ansatz::h1(t) >= h2v - 1e-12)) {
      r.passed = false;
      r.detail = "h1 < h2 at t=" + fmt(t);
      return r;
    }
    if (t < 0.85 && !(h2v >= t - 3.0 * M_PI / 8.0 * t * t * t - 1e-12)) {
      r.passed = false;
      r.detail = "h2 minorant fails at t=" + fmt(t);
      return r;
    }
  }
  const int glog = quick ? 200 : 1000;
  for (int i = 0; i <= glog; ++i) {
    const double alpha = std::pow(10.0, -3.0 + 6.0 * i / glog);
    if (!(ansatz::g_second(alpha) > 0.0)) {
      r.passed = false;
      r.detail = "g'' <= 0 at alpha=" + fmt(alpha);
      return r;
    }
  }
  r.detail = "ok on " + std::to_string(grid) + "-point grid";
  return r;
}

CheckResult check_gamma_disk_oracle(bool quick) {
  CheckResult r{"gamma-limit disk vs closed form", true, ""};
  const int n = quick ? 512 : 2048;
  const double got =
      energy::gamma_limit_energy(ShapeConfig::single(geometry::make_disk(1.0)), n).total;
  const double want = ansatz::disk_energy_gamma(1.0, LayerSep::infinite());
  const double err = std::abs(got - want);
  r.passed = err < (quick ? 1e-5 : 1e-6);
  r.detail = "deviation " + fmt(err);
  return r;
}

CheckResult check_monotonicity(bool quick) {
  CheckResult r{"|log d| E_{1,d} monotone toward the limit", true, ""};
  const std::vector<double> deltas = quick ? std::vector<double>{1e-2, 1e-3}
                                           : std::vector<double>{1e-2, 1e-3, 1e-4};
  const auto shapes = {ShapeConfig::single(geometry::make_disk(1.0)),
                       ShapeConfig::single(geometry::make_ellipse(1.6, 0.8))};
  for (const auto& config : shapes) {
    const int n = quick ? 512 : 1024;
    const double limit = energy::gamma_limit_energy(config, n).total;
    double prev_gap = 1e300;
    for (double d : deltas) {
      KernelParams params{1.0, d, LayerSep::infinite()};
      const double scaled = params.log_delta() * energy_boundary(config, params, n).total;
      const double gap = scaled - limit;
      if (!(gap > 0.0 && gap < prev_gap)) {
        r.passed = false;
        r.detail = "gap " + fmt(gap) + " at delta=" + fmt(d);
        return r;
      }
      prev_gap = gap;
    }
  }
  r.detail = "ok";
  return r;
}

CheckResult check_lower_bound(bool quick, std::uint64_t seed) {
  CheckResult r{"a priori lower bound", true, ""};
  const int shapes = quick ? 8 : 50;
  for (int s = 0; s < shapes; ++s) {
    const auto curve = geometry::make_random_shape(seed + s);
    const auto config = ShapeConfig::single(curve);
    const double mass = geometry::enclosed_area(curve);
    for (double lambda : {0.3, 0.7, 1.0}) {
      KernelParams params{lambda, 1e-2, LayerSep::infinite()};
      const auto breakdown = energy_boundary(config, params, quick ? 256 : 512);
      const double bound = energy::lower_bound(breakdown.perimeter_term, mass, params);
      if (!(breakdown.total >= bound - 1e-6 * breakdown.perimeter_term)) {
        r.passed = false;
        r.detail = "violation at shape " + std::to_string(s) + ", lambda=" + fmt(lambda) +
                   ": E=" + fmt(breakdown.total) + " < bound=" + fmt(bound);
        return r;
      }
    }
  }
  r.detail = "ok on " + std::to_string(shapes) + " shapes";
  return r;
}

CheckResult check_rescaling(bool quick, std::uint64_t seed) {
  CheckResult r{"rescaling identity and inequality", true, ""};
  const int shapes = quick ? 5 : 20;
  for (int s = 0; s < shapes; ++s) {
    const auto curve = geometry::make_random_shape(seed + 1000 + s);
    const double mass = geometry::enclosed_area(curve);
    const int n = quick ? 256 : 512;
    KernelParams params{0.8, 1e-2, (s % 2) ? LayerSep::finite(2.0) : LayerSep::infinite()};
    const double base = energy_boundary(ShapeConfig::single(curve), params, n).total;
    for (double alpha : {0.5, 2.0}) {
      const auto scaled = energy::rescale_params(alpha, params, mass);
      const double lhs =
          alpha *
          energy_boundary(ShapeConfig::single(curve.scaled(1.0 / alpha)), scaled.params, n).total;
      if (std::abs(lhs - base) > 1e-6 * std::abs(base)) {
        r.passed = false;
        r.detail = "identity fails at alpha=" + fmt(alpha) + ": " + fmt(lhs) + " vs " + fmt(base);
        return r;
      }
    }
    KernelParams pure{0.8, 1e-2, LayerSep::infinite()};
    const auto bd = energy_boundary(ShapeConfig::single(curve), pure, n);
    for (double alpha : {1.5, 4.0}) {
      const double lhs =
          alpha * energy_boundary(ShapeConfig::single(curve.scaled(1.0 / alpha)), pure, n).total -
          bd.total;
      const double rhs = pure.lambda * std::log(alpha) / pure.log_delta() * bd.perimeter_term;
      if (!(rhs - lhs >= -1e-9 * std::abs(bd.total))) {
        r.passed = false;
        r.detail = "inequality fails at alpha=" + fmt(alpha);
        return r;
      }
    }
  }
  r.detail = "ok on " + std::to_string(shapes) + " shapes";
  return r;
}

CheckResult check_grid_vs_boundary(bool quick) {
  CheckResult r{"grid vs boundary evaluator", true, ""};
  const double delta = quick ? 0.2 : 0.1;
  KernelParams params{1.0, delta, LayerSep::infinite()};
  const auto curve = geometry::make_disk(1.0);
  const auto raster = geometry::rasterize_disk(1.0, delta / 8.0);
  const auto sc = geometry::sample_arclength(curve, 512);
  const auto grid = energy::energy_grid(raster, sc.perimeter, params);
  const auto boundary = energy_boundary(ShapeConfig::single(curve), params, 512);
  const double rel = std::abs(grid.total - boundary.total) / std::abs(boundary.total);
  r.passed = rel < 0.02;
  r.detail = "relative deviation " + fmt(rel);
  return r;
}

}  // namespace

std::vector<CheckResult> run_all(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_elliptic_quadrature());
  results.push_back(check_kernel_identities());
  results.push_back(check_convexity_certificate(options.quick));
  results.push_back(check_gamma_disk_oracle(options.quick));
  results.push_back(check_monotonicity(options.quick));
  results.push_back(check_lower_bound(options.quick, options.seed));
  results.push_back(check_rescaling(options.quick, options.seed));
  results.push_back(check_grid_vs_boundary(options.quick));
  return results;
}

}  // namespace dipolar::verify
