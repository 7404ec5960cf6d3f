#include "dipolar/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dipolar/numeric.hpp"

namespace dipolar::optimize {

using geometry::JordanCurve;
using geometry::SampledCurve;
using geometry::Vec2;
using kernels::KernelParams;

std::pair<std::vector<double>, double> shape_gradient(const SampledCurve& curve,
                                                      const KernelParams& params, double mass) {
  if (!geometry::is_simple(curve.points))
    throw std::invalid_argument("shape_gradient: curve is self-intersecting");
  const std::vector<double> v = energy::boundary_potentials(curve, params, mass);
  const int n = curve.size();
  double mu = 0.0;
  for (int i = 0; i < n; ++i) mu += curve.curvature[i] + 2.0 * v[i];
  mu /= n;  // equal arclength weights: (1/P) @ (kappa + 2v) ds
  std::vector<double> velocity(n);
  for (int i = 0; i < n; ++i) velocity[i] = -(curve.curvature[i] + 2.0 * v[i] - mu);
  return {std::move(velocity), mu};
}

namespace {

// Refit the node polygon to a band-limited curve, restore the target area by
// dilation about the centroid and resample to uniform arclength.
SampledCurve renormalize(const std::vector<Vec2>& nodes, int n, int modes, double target_area) {
  JordanCurve fitted = geometry::fit_fourier(nodes, modes);
  Vec2 centroid{};
  for (const Vec2& p : nodes) centroid = centroid + p;
  centroid = centroid * (1.0 / static_cast<double>(nodes.size()));
  const double area = geometry::enclosed_area(fitted);
  const double scale = std::sqrt(target_area / area);
  fitted = fitted.translated(centroid * -1.0).scaled(scale).translated(centroid);
  return geometry::sample_arclength(fitted, n);
}

double max_abs_residual(const std::vector<double>& velocity) {
  double r = 0.0;
  for (double v : velocity) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

FlowState gradient_flow(const geometry::ShapeConfig& initial, const KernelParams& params,
                        const FlowOptions& options) {
  if (initial.components.size() != 1 || initial.components[0].placement.is_far())
    throw std::invalid_argument("gradient_flow: expected a single finitely placed component");
  params.validate();

  const int n = options.nodes;
  const int modes = std::min(64, n / 4);
  const double mass = geometry::enclosed_area(initial.components[0].curve);

  FlowState state;
  state.curve = geometry::sample_arclength(initial.components[0].curve, n);
  const double dt0 = options.dt0 > 0.0 ? options.dt0 : 0.2 * state.curve.ds * state.curve.ds;
  const double dt_max = options.dt_max_factor * dt0;
  state.dt = dt0;

  double energy_now = energy::energy_boundary_sampled({state.curve}, params).total;

  for (int step = 0;; ++step) {
    auto [velocity, mu] = shape_gradient(state.curve, params, mass);
    state.mu = mu;
    const double residual = max_abs_residual(velocity);
    state.trace.push_back({step, energy_now, residual, mass});

    if (residual <= options.tol) {
      state.converged = true;
      break;
    }
    if (step >= options.max_steps) break;

    bool accepted = false;
    while (!accepted) {
      std::vector<Vec2> trial(n);
      for (int i = 0; i < n; ++i)
        trial[i] = state.curve.points[i] + state.curve.normals[i] * (state.dt * velocity[i]);
      if (geometry::is_simple(trial)) {
        SampledCurve candidate;
        bool valid = true;
        double energy_new = 0.0;
        try {
          candidate = renormalize(trial, n, modes, mass);
          energy_new = energy::energy_boundary_sampled({candidate}, params).total;
        } catch (const std::exception&) {
          valid = false;  // refit produced a degenerate or flipped curve
        }
        if (valid && energy_new <= energy_now + 1e-12 * (1.0 + std::abs(energy_now))) {
          state.curve = std::move(candidate);
          energy_now = energy_new;
          state.dt = std::min(state.dt * options.dt_growth, dt_max);
          accepted = true;
          break;
        }
      }
      state.dt *= 0.5;
      if (state.dt < dt0 * 1e-12) {
        state.aborted = true;
        state.abort_reason = "step size underflow (self-intersection or no descent direction)";
        break;
      }
    }
    if (state.aborted) break;
    state.steps = step + 1;
  }
  return state;
}

double osc_curvature(const SampledCurve& curve) {
  double lo = curve.curvature[0], hi = curve.curvature[0];
  for (double k : curve.curvature) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  return hi - lo;
}

RigidityReport circle_rigidity_check(const SampledCurve& curve) {
  RigidityReport rep;
  rep.osc_kappa = osc_curvature(curve);
  const double P = curve.perimeter;
  const double R = P / (2.0 * M_PI);
  rep.point_bound = 0.25 * P * P * rep.osc_kappa;
  rep.tangent_bound = 0.5 * P * rep.osc_kappa;

  // Phase from the tangent at node 0, center from the offset there.
  const Vec2 t0 = curve.tangents[0];
  const double theta0 = std::atan2(t0.y, t0.x);
  const int n = curve.size();
  auto circle_angle = [&](int k) { return (k * curve.ds) / R + theta0 - 0.5 * M_PI; };
  const Vec2 x0 = curve.points[0] - Vec2{R * std::cos(circle_angle(0)), R * std::sin(circle_angle(0))};

  for (int k = 0; k < n; ++k) {
    const double ang = circle_angle(k);
    const Vec2 on_circle = x0 + Vec2{R * std::cos(ang), R * std::sin(ang)};
    const Vec2 tangent{-std::sin(ang), std::cos(ang)};
    rep.max_point_deviation =
        std::max(rep.max_point_deviation, (curve.points[k] - on_circle).norm());
    rep.max_tangent_deviation =
        std::max(rep.max_tangent_deviation, (curve.tangents[k] - tangent).norm());
  }
  return rep;
}

}  // namespace dipolar::optimize
