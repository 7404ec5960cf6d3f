#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace dipolar::phase {

// Below this separation the per-mass disk energy has no interior minimum;
// the infimum sits at a -> 0 (arbitrarily large disks).
inline double critical_ell() { return 2.0 / (M_E * M_E); }

struct PhasePoint {
  enum class Winner { Disk, Stripe, Degenerate };
  double ell = 0.0;
  double a_opt = 0.0;
  double f_disk_min = 0.0;
  double f_stripe_at_a_opt = 0.0;
  Winner winner = Winner::Degenerate;
  std::optional<double> mass_estimate;  // filled on request, empty otherwise
};

// Golden-section argmin of a -> f_disk(a, ell) over a bracket grown from
// [1e-8, a*]; empty for ell <= 2/e^2 (degenerate regime).
std::optional<double> find_optimal_disk_scale(double ell);

PhasePoint compare_phases(double ell);

// One PhasePoint per grid value, degenerate rows included. Requests the mass
// threshold for stripe rows when with_mass_threshold is set.
std::vector<PhasePoint> crossover_scan(const std::vector<double>& ell_grid,
                                       bool with_mass_threshold = false);

// Smallest mass (doubling then bisection, cap 1e9) at which the explicit
// stripe's energy per mass drops below the optimal disk value. Empty when
// the cap is exceeded; throws unless compare_phases(ell) picked the stripe.
std::optional<double> mass_threshold(double ell);

}  // namespace dipolar::phase
