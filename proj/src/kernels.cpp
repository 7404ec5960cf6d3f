#include "dipolar/kernels.hpp"

#include <cmath>

namespace dipolar::kernels {

double phi_delta(double r, double delta) {
  if (!(r > 0.0)) throw std::domain_error("phi_delta: r must be positive");
  if (r >= delta) return 1.0 / r;
  return (1.0 - std::log(r / delta)) / delta;
}

double phi_delta_prime(double r, double delta) {
  if (!(r > 0.0)) throw std::domain_error("phi_delta_prime: r must be positive");
  if (r >= delta) return -1.0 / (r * r);
  return -1.0 / (delta * r);
}

double kernel_K(double r, const KernelParams& params) {
  if (!(r > 0.0)) throw std::domain_error("kernel_K: r must be positive");
  double value = g_cutoff(r, params.delta) / (r * r * r);
  if (params.ell.is_finite()) {
    const double l2 = params.ell.value() * params.ell.value();
    const double d2 = r * r + l2;
    value -= (r * r - 2.0 * l2) / (d2 * d2 * std::sqrt(d2));
  }
  return value;
}

double phi_delta_l(double r, const KernelParams& params) {
  double value = phi_delta(r, params.delta);
  if (params.ell.is_finite()) {
    const double l = params.ell.value();
    value -= 1.0 / std::sqrt(r * r + l * l);
  }
  return value;
}

double phi_delta_l_prime(double r, const KernelParams& params) {
  double value = phi_delta_prime(r, params.delta);
  if (params.ell.is_finite()) {
    const double l = params.ell.value();
    const double d2 = r * r + l * l;
    value += r / (d2 * std::sqrt(d2));
  }
  return value;
}

double kernel_total_mass(const KernelParams& params) {
  if (!(params.delta > 0.0)) throw std::invalid_argument("kernel_total_mass: delta must be positive");
  return 2.0 * M_PI / params.delta;
}

namespace {

struct AgmResult {
  double agm;       // common limit of the iteration
  double c_sum;     // sum_{n>=0} 2^(n-1) c_n^2
};

AgmResult agm(double k) {
  double a = 1.0;
  double b = std::sqrt(1.0 - k);
  double c = std::sqrt(k);
  double sum = 0.5 * c * c;
  double pow2 = 1.0;
  for (int n = 0; n < 64 && c > 1e-17 * a; ++n) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += 0.5 * pow2 * c * c;
  }
  return {a, sum};
}

}  // namespace

double elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("elliptic_K: k must lie in [0, 1)");
  return M_PI / (2.0 * agm(k).agm);
}

double elliptic_E(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::domain_error("elliptic_E: k must lie in [0, 1]");
  if (k == 1.0) return 1.0;
  const AgmResult r = agm(k);
  return M_PI / (2.0 * r.agm) * (1.0 - r.c_sum);
}

}  // namespace dipolar::kernels
