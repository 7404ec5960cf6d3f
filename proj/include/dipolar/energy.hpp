#pragma once

#include <string>
#include <vector>

#include "dipolar/geometry.hpp"
#include "dipolar/kernels.hpp"

namespace dipolar::energy {

enum class Evaluator { Grid, Boundary, GammaLimit, GammaLimitModified };

std::string evaluator_name(Evaluator e);

struct EnergyBreakdown {
  double perimeter_term = 0.0;
  double nonlocal_term = 0.0;
  double total = 0.0;
  Evaluator evaluator = Evaluator::Boundary;
};

// Volume-form energy on an occupancy grid. The complement integral goes
// through the total-mass identity, the remaining double sum is a direct
// pairwise midpoint rule with same-cell pairs contributing zero. Requires
// h <= delta/4 so the cutoff is resolved; the perimeter must come from the
// exact curve (grid perimeters are biased).
EnergyBreakdown energy_grid(const geometry::RasterSet& raster, double perimeter,
                            const kernels::KernelParams& params);

// Boundary potential v_{delta,l}(x) for x on (or within ds of) a node of one
// of the given curves; m is the enclosed mass of this component group.
// Trapezoid over arclength nodes; the node coincident with x is excluded and
// its panel contributes the small-s principal-value limit 0.
double potential_on_boundary(geometry::Vec2 x, const std::vector<geometry::SampledCurve>& curves,
                             const kernels::KernelParams& params, double mass);

// v at every node of `curve` (same convention), one pass.
std::vector<double> boundary_potentials(const geometry::SampledCurve& curve,
                                        const kernels::KernelParams& params, double mass);

// Boundary double-integral form
//   F = P - lambda/(2|log delta|) * @@ nu(x).nu(y) Phi_{delta,l}(|x-y|).
// The diagonal log singularity is handled by subtracting the arclength
// profile Phi_delta(|s|), integrating that profile in closed form, and
// putting Gauss subpanels across the |s| = delta kink; everything else is
// periodic trapezoid with an exact endpoint (Euler-Maclaurin) correction.
// n = 0 picks the node count from perimeter and curvature.
EnergyBreakdown energy_boundary(const geometry::ShapeConfig& config,
                                const kernels::KernelParams& params, int n = 0);

// Same evaluator on curves that are already sampled and placed (used by the
// flow's line search). All components are treated as finitely placed.
EnergyBreakdown energy_boundary_sampled(const std::vector<geometry::SampledCurve>& components,
                                        const kernels::KernelParams& params);

// Critical-strength limit energy in the curve representation:
//   E_10 = -sum_i P_i [log(P_i/2) + 2]
//          + 1/2 sum_i @@ (1/|s| - nu.nu/|chord|) ds dt
//          - sum_{i<j} @@ nu.nu/|chord| ds dt,
// with the self integrand extended by 0 at s = 0. Requires C^2-quality
// shapes (rounded stripes only); rejects curves with near self-contact.
EnergyBreakdown gamma_limit_energy(const geometry::ShapeConfig& config, int n = 0);

// Two-layer variant: adds 1/2 @@ nu.nu / sqrt(|x-y|^2 + l^2); cross terms are
// kept for finite placements and dropped for FAR_SEPARATED ones. An infinite
// separation reproduces gamma_limit_energy exactly.
EnergyBreakdown gamma_limit_energy_modified(const geometry::ShapeConfig& config,
                                            kernels::LayerSep ell, int n = 0);

// A priori lower bound on the energy in terms of perimeter and mass.
double lower_bound(double perimeter, double mass, const kernels::KernelParams& params);

struct RescaledProblem {
  kernels::KernelParams params;
  double mass = 0.0;
};

// Parameters for the shape alpha^{-1} * Omega such that
// alpha * F_rescaled(alpha^{-1} Omega) = F(Omega). Rejects delta/alpha >= 1.
RescaledProblem rescale_params(double alpha, const kernels::KernelParams& params, double mass);

// Disk-cutting bracket for Omega given as a raster containing B_r(0):
//   Delta = E_{lambda,delta}(B_{r/2})
//           + lambda/(2|log delta|) * @_{B_{r/2}} @_{Omega^c} g_delta/|x-y|^3.
// Delta < 0 certifies that cutting out B_{r/2} and moving it to infinity
// strictly lowers the energy. The ball self-energy uses the boundary
// evaluator; the Omega^c integral never truncates the complement: the part
// outside the raster window is integrated in closed form, only the bounded
// window is resolved by the grid (distances there exceed r/2 >> delta, so
// the cutoff needs no grid resolution). Single-layer kernel throughout.
double cut_disk_delta(const geometry::RasterSet& omega, double r,
                      const kernels::KernelParams& params);

}  // namespace dipolar::energy
