#pragma once

#include <cmath>
#include <stdexcept>

namespace dipolar::kernels {

// Layer separation l. Infinity recovers the single dipolar layer, in which
// case the two-layer correction term is exactly zero (not merely small), so
// it is a tagged state rather than a large float.
class LayerSep {
 public:
  static LayerSep infinite() { return LayerSep(0.0, false); }
  static LayerSep finite(double l) {
    if (!(l > 0.0)) throw std::invalid_argument("LayerSep: l must be positive");
    return LayerSep(l, true);
  }
  bool is_finite() const { return finite_; }
  double value() const {
    if (!finite_) throw std::logic_error("LayerSep: value() on infinite separation");
    return l_;
  }

 private:
  LayerSep(double l, bool finite) : l_(l), finite_(finite) {}
  double l_;
  bool finite_;
};

// The parameter triple (lambda, delta, l) every energy depends on.
struct KernelParams {
  double lambda = 1.0;           // dipolar strength
  double delta = 1e-3;           // short-distance cutoff, in (0, 1/2)
  LayerSep ell = LayerSep::infinite();

  void validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("KernelParams: lambda must be >= 0");
    if (!(delta > 0.0 && delta < 0.5))
      throw std::invalid_argument("KernelParams: delta must lie in (0, 1/2)");
  }
  double log_delta() const { return std::abs(std::log(delta)); }
};

// Indicator cutoff: 1 for r > delta, 0 otherwise.
inline double g_cutoff(double r, double delta) { return r > delta ? 1.0 : 0.0; }

// Radial antiderivative potential of the cutoff kernel:
// 1/r for r >= delta, (1/delta)(1 - log(r/delta)) below.
double phi_delta(double r, double delta);

// d/dr of phi_delta away from the kink at r = delta.
double phi_delta_prime(double r, double delta);

// Two-layer kernel g_delta(r)/r^3 - (r^2 - 2 l^2)/(r^2 + l^2)^(5/2).
double kernel_K(double r, const KernelParams& params);

// Potential for the two-layer kernel: phi_delta(r) - 1/sqrt(r^2 + l^2).
double phi_delta_l(double r, const KernelParams& params);

// d/dr of phi_delta_l away from r = delta.
double phi_delta_l_prime(double r, const KernelParams& params);

// Integral of kernel_K over the plane: 2*pi/delta. The two-layer correction
// integrates to zero.
double kernel_total_mass(const KernelParams& params);

// Complete elliptic integrals in the parameter convention
//   K(k) = int_0^{pi/2} (1 - k sin^2 t)^(-1/2) dt,
//   E(k) = int_0^{pi/2} (1 - k sin^2 t)^(1/2) dt,
// i.e. k multiplies sin^2, it is not the modulus. Computed by the
// arithmetic-geometric mean, accurate to ~1e-14. K rejects k outside [0,1),
// E rejects k outside [0,1] and returns exactly 1 at k = 1.
double elliptic_K(double k);
double elliptic_E(double k);

}  // namespace dipolar::kernels
