#include "dipolar/ansatz.hpp"

#include <cmath>
#include <stdexcept>

#include "dipolar/numeric.hpp"

namespace dipolar::ansatz {

using kernels::elliptic_E;
using kernels::elliptic_K;
using kernels::LayerSep;
using numeric::arcoth;
using numeric::arsinh;

namespace {

// (2+y) K(4/(4+y)) - (4+y) E(4/(4+y)), the elliptic bracket with y = (l/r)^2
// or y = (a l)^2. The argument 4/(4+y) lies in (0,1) for y > 0.
double elliptic_bracket(double y) {
  const double k = 4.0 / (4.0 + y);
  return (2.0 + y) * elliptic_K(k) - (4.0 + y) * elliptic_E(k);
}

// Double integral of ((s-t)^2 + c^2)^(-1/2) over [0,w]^2.
double opposite_edge_integral(double w, double c) {
  return 2.0 * (w * arsinh(w / c) - std::sqrt(w * w + c * c) + c);
}

}  // namespace

double disk_energy_gamma(double r, LayerSep ell) {
  if (!(r > 0.0)) throw std::invalid_argument("disk_energy_gamma: radius must be positive");
  double e = -2.0 * M_PI * r * std::log(4.0) - 2.0 * M_PI * r * std::log(r);
  if (ell.is_finite()) {
    const double y = numeric::sqr(ell.value() / r);
    e += 2.0 * M_PI * r / std::sqrt(4.0 + y) * elliptic_bracket(y);
  }
  return e;
}

double f_disk(double a, double ell) {
  if (!(a > 0.0 && ell > 0.0)) throw std::invalid_argument("f_disk: need a > 0 and finite l > 0");
  const double y = numeric::sqr(a * ell);
  return 2.0 * a * (-std::log(4.0) + std::log(a) + elliptic_bracket(y) / std::sqrt(4.0 + y));
}

double g_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("g_alpha: alpha must be positive");
  const double y = alpha * alpha;
  return 2.0 * alpha *
         (-std::log(4.0) + std::log(alpha) + elliptic_bracket(y) / std::sqrt(4.0 + y));
}

double g_second(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("g_second: alpha must be positive");
  const double a2 = alpha * alpha;
  const double k = 4.0 / (4.0 + a2);
  const double pow32 = (4.0 + a2) * std::sqrt(4.0 + a2);
  const double numerator = pow32 - 2.0 * (4.0 + 7.0 * a2 + a2 * a2) * elliptic_E(k) +
                           2.0 * a2 * (5.0 + a2) * elliptic_K(k);
  return 2.0 * numerator / (alpha * pow32);
}

double h1(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("h1: t must lie in [0, 1)");
  if (t == 0.0) return 0.0;
  return std::sqrt(t) + (-4.0 + t + 2.0 * t * t) * elliptic_E(t) -
         (-4.0 + 3.0 * t + t * t) * elliptic_K(t);
}

double h2(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("h2: t must lie in [0, 1)");
  if (t == 0.0) return 0.0;
  return t - (4.0 - t - 2.0 * t * t) * elliptic_E(t) + (4.0 - 3.0 * t - t * t) * elliptic_K(t);
}

double stripe_energy_gamma(double a, double m) {
  if (!(a > 0.0 && m > 0.0))
    throw std::invalid_argument("stripe_energy_gamma: a and m must be positive");
  const double w = a * m;      // horizontal side
  const double q = 1.0 / a;    // vertical side
  const double root = std::sqrt(1.0 + numeric::sqr(a * a * m));
  const double i2 = (2.0 - 2.0 * root) / a + 2.0 * a * m * arsinh(a * a * m);
  const double i4 = 2.0 * (a * a * m - root + arcoth(root)) / a;
  return -2.0 * w * std::log(w) - 2.0 * w - 2.0 * q * std::log(q) - 2.0 * q + i2 + i4;
}

double f_stripe(double a, double ell) {
  if (!(a > 0.0 && ell > 0.0))
    throw std::invalid_argument("f_stripe: need a > 0 and finite l > 0");
  return 2.0 * a * std::log(2.0 * a / ell) - 4.0 * a +
         a * std::log(1.0 / (a * a) + ell * ell);
}

double stripe_energy_modified(double a, double m, double ell) {
  if (!(ell > 0.0)) throw std::invalid_argument("stripe_energy_modified: need finite l > 0");
  const double w = a * m, q = 1.0 / a;
  const double j1 =
      opposite_edge_integral(w, ell) - opposite_edge_integral(w, std::hypot(q, ell));
  const double j2 =
      opposite_edge_integral(q, ell) - opposite_edge_integral(q, std::hypot(w, ell));
  return stripe_energy_gamma(a, m) + j1 + j2;
}

AnsatzResult disk_result(double r, LayerSep ell) {
  AnsatzResult out;
  out.shape = AnsatzResult::Shape::Disk;
  out.r = r;
  out.ell = ell;
  out.energy = disk_energy_gamma(r, ell);
  out.energy_per_mass = out.energy / (M_PI * r * r);
  return out;
}

AnsatzResult stripe_result(double a, double m, LayerSep ell) {
  AnsatzResult out;
  out.shape = AnsatzResult::Shape::Stripe;
  out.a = a;
  out.m = m;
  out.ell = ell;
  out.energy = ell.is_finite() ? stripe_energy_modified(a, m, ell.value())
                               : stripe_energy_gamma(a, m);
  out.energy_per_mass = out.energy / m;
  return out;
}

}  // namespace dipolar::ansatz
