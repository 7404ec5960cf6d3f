#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dipolar/energy.hpp"
#include "dipolar/geometry.hpp"
#include "dipolar/kernels.hpp"

namespace dipolar::optimize {

struct FlowOptions {
  int nodes = 256;
  int max_steps = 20000;
  double dt0 = 0.0;     // 0 -> 0.2 * ds^2
  double tol = 1e-3;    // stop when max |kappa + 2v - mu| <= tol
  double dt_growth = 1.25;
  double dt_max_factor = 4.0;  // dt may grow to dt_max_factor * dt0
};

struct FlowRecord {
  int step = 0;
  double energy = 0.0;
  double residual = 0.0;
  double area = 0.0;
};

struct FlowState {
  geometry::SampledCurve curve;
  int steps = 0;
  double dt = 0.0;
  double mu = 0.0;
  bool converged = false;
  bool aborted = false;
  std::string abort_reason;
  std::vector<FlowRecord> trace;  // one row per accepted step, first row is the start
};

// Normal velocity V = -(kappa + 2v - mu) per node, with mu chosen so the
// velocity has zero mean along the curve (first-order area preservation).
// Rejects self-intersecting curves.
std::pair<std::vector<double>, double> shape_gradient(const geometry::SampledCurve& curve,
                                                      const kernels::KernelParams& params,
                                                      double mass);

// Explicit Euler descent with backtracking line search on the boundary
// energy. Every accepted step refits the nodes to a band-limited curve,
// restores the area exactly by uniform dilation about the centroid and
// resamples to uniform arclength. Self-intersection aborts with the last
// valid state.
FlowState gradient_flow(const geometry::ShapeConfig& initial, const kernels::KernelParams& params,
                        const FlowOptions& options = {});

double osc_curvature(const geometry::SampledCurve& curve);

struct RigidityReport {
  double osc_kappa = 0.0;
  double max_point_deviation = 0.0;
  double point_bound = 0.0;    // P^2/4 * osc kappa
  double max_tangent_deviation = 0.0;
  double tangent_bound = 0.0;  // P/2 * osc kappa
  bool ok() const {
    return max_point_deviation <= point_bound + 1e-9 &&
           max_tangent_deviation <= tangent_bound + 1e-9;
  }
};

// Fits the circle of radius P/(2 pi) with the tangent-matched phase and
// checks the curve against the oscillation-of-curvature rigidity bounds.
RigidityReport circle_rigidity_check(const geometry::SampledCurve& curve);

}  // namespace dipolar::optimize
