#pragma once

#include "dipolar/kernels.hpp"

namespace dipolar::ansatz {

// Closed-form limit energies of disks and stripes.
struct AnsatzResult {
  enum class Shape { Disk, Stripe };
  Shape shape = Shape::Disk;
  double r = 0.0;       // disk radius
  double a = 0.0;       // stripe inverse width
  double m = 0.0;       // stripe mass
  kernels::LayerSep ell = kernels::LayerSep::infinite();
  double energy = 0.0;
  double energy_per_mass = 0.0;
};

// F_{1,0,l}(B_r); the elliptic bracket vanishes for infinite separation,
// leaving -2 pi r log 4 - 2 pi r log r.
double disk_energy_gamma(double r, kernels::LayerSep ell);

// Energy per mass of the disk of radius 1/a, finite separation.
double f_disk(double a, double ell);

// Scaled profile g with f_disk(a) = (g(a*l) - 2 a l log l)/l, its second
// derivative, and the auxiliary combinations whose positivity certifies
// strict convexity of f_disk.
double g_alpha(double alpha);
double g_second(double alpha);
double h1(double t);
double h2(double t);

// Exact finite-mass limit energy of the stripe S_{a,m} (an am x 1/a
// rectangle), with the opposite-edge integrals in closed form.
double stripe_energy_gamma(double a, double m);

// Large-mass energy per mass of the stripe, finite separation.
double f_stripe(double a, double ell);

// Finite-mass stripe energy for the two-layer kernel: stripe_energy_gamma
// plus both closed-form correction integrals.
double stripe_energy_modified(double a, double m, double ell);

AnsatzResult disk_result(double r, kernels::LayerSep ell);
AnsatzResult stripe_result(double a, double m, kernels::LayerSep ell);

}  // namespace dipolar::ansatz
