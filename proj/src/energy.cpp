#include "dipolar/energy.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "dipolar/numeric.hpp"

namespace dipolar::energy {

using geometry::RasterSet;
using geometry::SampledCurve;
using geometry::ShapeConfig;
using geometry::Vec2;
using kernels::KernelParams;
using kernels::LayerSep;

std::string evaluator_name(Evaluator e) {
  switch (e) {
    case Evaluator::Grid: return "GRID";
    case Evaluator::Boundary: return "BOUNDARY";
    case Evaluator::GammaLimit: return "GAMMA_LIMIT";
    default: return "GAMMA_LIMIT_MODIFIED";
  }
}

namespace {

// Pair potential between boundary points plus the arclength profile that is
// subtracted to regularize the diagonal. gamma = true is the delta -> 0
// limit, where the profile is 1/|s|.
struct ChordPotential {
  bool gamma = false;
  double delta = 0.0;
  bool has_l = false;
  double l = 0.0;

  double chord(double u) const {
    double v = gamma ? 1.0 / u : kernels::phi_delta(u, delta);
    if (has_l) v -= 1.0 / std::sqrt(u * u + l * l);
    return v;
  }
  double chord_prime(double u) const {
    double v = gamma ? -1.0 / (u * u) : kernels::phi_delta_prime(u, delta);
    if (has_l) {
      const double d2 = u * u + l * l;
      v += u / (d2 * std::sqrt(d2));
    }
    return v;
  }
  double profile(double s) const { return gamma ? 1.0 / s : kernels::phi_delta(s, delta); }
  double profile_prime(double s) const {
    return gamma ? -1.0 / (s * s) : kernels::phi_delta_prime(s, delta);
  }
};

// Closed-form integral of the subtracted profile over s in (-P/2, P/2).
double profile_integral(double perimeter, double delta) {
  if (!(delta < 0.5 * perimeter))
    throw std::invalid_argument("energy_boundary: delta exceeds half the component perimeter");
  return 4.0 + 2.0 * std::log(perimeter / (2.0 * delta));
}

double arc_between(const geometry::JordanCurve& curve, double t0, double t1) {
  return numeric::gauss16(t0, t1, [&](double t) { return curve.derivative(t, 1).norm(); });
}

// Curve parameter at signed arclength offset s from node i.
double param_at_offset(const SampledCurve& sc, int i, double s) {
  const double ti = sc.params[i];
  const double vi = sc.curve.derivative(ti, 1).norm();
  double t = ti + s / vi;
  for (int iter = 0; iter < 3; ++iter) {
    const double err = (s >= 0.0 ? arc_between(sc.curve, ti, t) : -arc_between(sc.curve, t, ti)) - s;
    const double v = sc.curve.derivative(t, 1).norm();
    t -= err / v;
  }
  return t;
}

// Integral over s in (-P/2, P/2) and t along the curve of
//   D(s) = nu(t).nu(t+s) * chord(|gamma(t+s)-gamma(t)|) - profile(|s|).
// Outer offsets use periodic trapezoid with an exact Euler-Maclaurin
// endpoint correction; the window (-s_c, s_c) is done by Gauss panels split
// at the |s| = delta kink.
double self_pair_integral(const SampledCurve& sc, const ChordPotential& cp,
                          bool reject_self_contact) {
  const int n = sc.size();
  const double ds = sc.ds;
  const int jc = cp.gamma
                     ? 1
                     : std::max(1, static_cast<int>(std::ceil(1.25 * cp.delta / ds)));
  if (jc > n / 8)
    throw std::invalid_argument(
        "energy_boundary: node count too small to resolve delta on this curve");
  const double sc_off = jc * ds;

  std::atomic<bool> contact{false};
  std::vector<double> per_node(n, 0.0);

  numeric::parallel_for(n, [&](std::size_t iu) {
    const int i = static_cast<int>(iu);
    const Vec2 pi = sc.points[i];
    const Vec2 ni = sc.normals[i];
    double inner = 0.0;

    for (int k = jc; k <= n - jc; ++k) {
      const int j = (i + k) % n;
      const Vec2 d = sc.points[j] - pi;
      const double u = d.norm();
      const double sdist = std::min(k, n - k) * ds;
      if (reject_self_contact && sdist > 0.25 * sc.perimeter && u < 10.0 * ds) contact = true;
      const double w = (k == jc || k == n - jc) ? 0.5 : 1.0;
      inner += w * (ni.dot(sc.normals[j]) * cp.chord(u) - cp.profile(sdist));
    }
    inner *= ds;

    // Endpoint correction at +-s_c from exact Fourier data.
    auto endpoint_derivative = [&](int j, double profile_sign) {
      const Vec2 d = sc.points[j] - pi;
      const double u = d.norm();
      const Vec2 e = d * (1.0 / u);
      const Vec2 tj = sc.tangents[j];
      return ni.dot(tj) * sc.curvature[j] * cp.chord(u) +
             ni.dot(sc.normals[j]) * cp.chord_prime(u) * e.dot(tj) +
             profile_sign * cp.profile_prime(sc_off);
    };
    const double fp_fwd = endpoint_derivative((i + jc) % n, -1.0);
    const double fp_bwd = endpoint_derivative((i - jc + n) % n, +1.0);
    inner += -(ds * ds / 12.0) * (fp_bwd - fp_fwd);

    // Gauss panels over the excised window.
    auto window_integrand = [&](double s, int dir) {
      const double t = param_at_offset(sc, i, dir * s);
      const Vec2 p = sc.curve.point(t);
      const Vec2 d1 = sc.curve.derivative(t, 1);
      const double v = d1.norm();
      const Vec2 nu = Vec2{d1.y, -d1.x} * (1.0 / v);
      const double u = (p - pi).norm();
      return ni.dot(nu) * cp.chord(u) - cp.profile(s);
    };
    double splits[3] = {0.0, sc_off, sc_off};
    int nseg = 1;
    if (!cp.gamma && cp.delta < sc_off) {
      splits[1] = cp.delta;
      nseg = 2;
    }
    for (int dir : {+1, -1})
      for (int seg = 0; seg < nseg; ++seg)
        inner += numeric::gauss16(splits[seg], splits[seg + 1],
                                  [&](double s) { return window_integrand(s, dir); });

    per_node[i] = inner;
  });

  if (contact)
    throw std::invalid_argument(
        "gamma_limit_energy: near self-contact at long arclength separation; "
        "increase the node count or round the shape");
  return numeric::pairwise_sum(per_node) * ds;
}

// Trapezoid-squared integral of nu.nu * chord(|x-y|) between two placed
// curves (smooth integrand, both directions periodic).
double cross_pair_integral(const SampledCurve& a, Vec2 offa, const SampledCurve& b, Vec2 offb,
                           const ChordPotential& cp) {
  const int na = a.size(), nb = b.size();
  std::vector<double> rows(na, 0.0);
  std::atomic<bool> coincident{false};
  numeric::parallel_for(na, [&](std::size_t i) {
    const Vec2 pa = a.points[i] + offa;
    const Vec2 nua = a.normals[i];
    double s = 0.0;
    for (int j = 0; j < nb; ++j) {
      const Vec2 d = b.points[j] + offb - pa;
      const double u = d.norm();
      if (u < 1e-12) {
        coincident = true;
        continue;
      }
      s += nua.dot(b.normals[j]) * cp.chord(u);
    }
    rows[i] = s;
  });
  if (coincident)
    throw std::invalid_argument("energy: coincident points between distinct components");
  return numeric::pairwise_sum(rows) * a.ds * b.ds;
}

struct PlacedComponent {
  SampledCurve sc;
  Vec2 offset{};
  bool far = false;
};

std::vector<PlacedComponent> sample_config(const ShapeConfig& config, int n) {
  std::vector<PlacedComponent> out;
  for (const auto& comp : config.components) {
    PlacedComponent pc;
    const int nodes = n > 0 ? n : geometry::auto_node_count(comp.curve);
    pc.sc = geometry::sample_arclength(comp.curve, nodes);
    pc.far = comp.placement.is_far();
    pc.offset = pc.far ? Vec2{} : comp.placement.offset;
    out.push_back(std::move(pc));
  }
  return out;
}

EnergyBreakdown assemble_boundary(const std::vector<PlacedComponent>& comps,
                                  const KernelParams& params) {
  params.validate();
  double perimeter = 0.0;
  for (const auto& c : comps) perimeter += c.sc.perimeter;

  EnergyBreakdown out;
  out.evaluator = Evaluator::Boundary;
  out.perimeter_term = perimeter;
  if (params.lambda == 0.0 || comps.empty()) {
    out.total = perimeter;
    return out;
  }

  ChordPotential cp;
  cp.gamma = false;
  cp.delta = params.delta;
  cp.has_l = params.ell.is_finite();
  cp.l = cp.has_l ? params.ell.value() : 0.0;

  double pair_integral = 0.0;
  for (const auto& c : comps)
    pair_integral += c.sc.perimeter * profile_integral(c.sc.perimeter, params.delta) +
                     self_pair_integral(c.sc, cp, false);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].far || comps[j].far) continue;
      pair_integral +=
          2.0 * cross_pair_integral(comps[i].sc, comps[i].offset, comps[j].sc, comps[j].offset, cp);
    }

  out.nonlocal_term = -params.lambda / (2.0 * params.log_delta()) * pair_integral;
  out.total = out.perimeter_term + out.nonlocal_term;
  return out;
}

EnergyBreakdown assemble_gamma(const std::vector<PlacedComponent>& comps, LayerSep ell) {
  ChordPotential cp;
  cp.gamma = true;
  cp.has_l = ell.is_finite();
  cp.l = cp.has_l ? ell.value() : 0.0;

  EnergyBreakdown out;
  out.evaluator = cp.has_l ? Evaluator::GammaLimitModified : Evaluator::GammaLimit;
  double renormalized_perimeter = 0.0;
  double nonlocal = 0.0;
  for (const auto& c : comps) {
    renormalized_perimeter -= c.sc.perimeter * (std::log(0.5 * c.sc.perimeter) + 2.0);
    nonlocal += -0.5 * self_pair_integral(c.sc, cp, true);
  }
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].far || comps[j].far) continue;
      nonlocal -=
          cross_pair_integral(comps[i].sc, comps[i].offset, comps[j].sc, comps[j].offset, cp);
    }
  out.perimeter_term = renormalized_perimeter;
  out.nonlocal_term = nonlocal;
  out.total = out.perimeter_term + out.nonlocal_term;
  return out;
}

}  // namespace

EnergyBreakdown energy_grid(const RasterSet& raster, double perimeter,
                            const KernelParams& params) {
  params.validate();
  std::vector<Vec2> cells;
  cells.reserve(raster.occupied_count());
  for (int j = 0; j < raster.ny; ++j)
    for (int i = 0; i < raster.nx; ++i)
      if (raster.occupied(i, j)) cells.push_back(raster.cell_center(i, j));

  EnergyBreakdown out;
  out.evaluator = Evaluator::Grid;
  if (cells.empty()) return out;  // empty set: all terms zero

  if (raster.h > 0.25 * params.delta * (1.0 + 1e-9))
    throw std::invalid_argument("energy_grid: need h <= delta/4 to resolve the cutoff");
  if (cells.size() > 150000)
    throw std::invalid_argument("energy_grid: raster too large for the direct pairwise sum");

  out.perimeter_term = perimeter;
  if (params.lambda == 0.0) {
    out.total = perimeter;
    return out;
  }

  const std::size_t n = cells.size();
  const double delta2 = params.delta * params.delta;
  const bool has_l = params.ell.is_finite();
  const double l2 = has_l ? params.ell.value() * params.ell.value() : 0.0;
  std::vector<double> rows(n, 0.0);
  numeric::parallel_for(n, [&](std::size_t i) {
    const Vec2 pi = cells[i];
    double s = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = cells[j].x - pi.x, dy = cells[j].y - pi.y;
      const double r2 = dx * dx + dy * dy;
      double k = 0.0;
      if (r2 > delta2) k = 1.0 / (r2 * std::sqrt(r2));
      if (has_l) {
        const double d2 = r2 + l2;
        k -= (r2 - 2.0 * l2) / (d2 * d2 * std::sqrt(d2));
      }
      s += k;
    }
    rows[i] = s;
  });
  const double h2 = raster.h * raster.h;
  const double inner_sum = 2.0 * numeric::pairwise_sum(rows) * h2 * h2;
  const double mass = h2 * static_cast<double>(n);
  const double complement = kernels::kernel_total_mass(params) * mass - inner_sum;
  out.nonlocal_term = -params.lambda / (2.0 * params.log_delta()) * complement;
  out.total = out.perimeter_term + out.nonlocal_term;
  return out;
}

double potential_on_boundary(Vec2 x, const std::vector<SampledCurve>& curves,
                             const KernelParams& params, double mass) {
  params.validate();
  if (params.lambda == 0.0) return 0.0;
  const double L = params.log_delta();
  double sum = 0.0;
  for (const auto& c : curves) {
    double s = 0.0;
    for (int j = 0; j < c.size(); ++j) {
      const Vec2 d = c.points[j] - x;
      const double r = d.norm();
      if (r < 0.5 * c.ds) continue;  // principal value: coincident panel -> 0
      s += kernels::phi_delta_l_prime(r, params) * (d.dot(c.normals[j]) / r);
    }
    sum += s * c.ds;
  }
  return params.lambda / (2.0 * L) * sum + M_PI * params.lambda * mass / (params.delta * L);
}

std::vector<double> boundary_potentials(const SampledCurve& curve, const KernelParams& params,
                                        double mass) {
  params.validate();
  const int n = curve.size();
  std::vector<double> v(n, 0.0);
  if (params.lambda == 0.0) return v;
  const double L = params.log_delta();
  const double constant = M_PI * params.lambda * mass / (params.delta * L);
  numeric::parallel_for(n, [&](std::size_t i) {
    const Vec2 x = curve.points[i];
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == static_cast<int>(i)) continue;
      const Vec2 d = curve.points[j] - x;
      const double r = d.norm();
      s += kernels::phi_delta_l_prime(r, params) * (d.dot(curve.normals[j]) / r);
    }
    v[i] = params.lambda / (2.0 * L) * s * curve.ds + constant;
  });
  return v;
}

EnergyBreakdown energy_boundary(const ShapeConfig& config, const KernelParams& params, int n) {
  return assemble_boundary(sample_config(config, n), params);
}

EnergyBreakdown energy_boundary_sampled(const std::vector<SampledCurve>& components,
                                        const KernelParams& params) {
  std::vector<PlacedComponent> comps;
  for (const auto& sc : components) comps.push_back(PlacedComponent{sc, Vec2{}, false});
  return assemble_boundary(comps, params);
}

EnergyBreakdown gamma_limit_energy(const ShapeConfig& config, int n) {
  return assemble_gamma(sample_config(config, n), LayerSep::infinite());
}

EnergyBreakdown gamma_limit_energy_modified(const ShapeConfig& config, LayerSep ell, int n) {
  return assemble_gamma(sample_config(config, n), ell);
}

double lower_bound(double perimeter, double mass, const KernelParams& params) {
  params.validate();
  const double L = params.log_delta();
  if (perimeter <= M_PI * mass / params.delta)
    return (1.0 - params.lambda +
            params.lambda / L * std::log(perimeter / (M_E * M_PI * mass))) *
           perimeter;
  return (1.0 - params.lambda / L) * perimeter;
}

RescaledProblem rescale_params(double alpha, const KernelParams& params, double mass) {
  params.validate();
  if (!(alpha > 0.0)) throw std::invalid_argument("rescale_params: alpha must be positive");
  const double delta_new = params.delta / alpha;
  if (delta_new >= 1.0)
    throw std::invalid_argument("rescale_params: delta/alpha >= 1 degenerates the log");
  RescaledProblem out;
  out.params.delta = delta_new;
  out.params.lambda = params.lambda * params.log_delta() / std::abs(std::log(delta_new));
  out.params.ell = params.ell.is_finite() ? LayerSep::finite(params.ell.value() / alpha)
                                          : LayerSep::infinite();
  out.mass = mass / (alpha * alpha);
  return out;
}

namespace {

// Integral of |x-y|^{-3} over the complement of the rectangle
// [x0,x1]x[y0,y1], for x strictly inside: radially it reduces to
// int dtheta / rho(theta), which is elementary per edge.
double outside_rect_integral(Vec2 p, double x0, double x1, double y0, double y1) {
  const double a_br = std::atan2(y0 - p.y, x1 - p.x);
  const double a_tr = std::atan2(y1 - p.y, x1 - p.x);
  const double a_tl = std::atan2(y1 - p.y, x0 - p.x);
  const double a_bl = std::atan2(y0 - p.y, x0 - p.x) + 2.0 * M_PI;
  double total = 0.0;
  total += (std::sin(a_tr) - std::sin(a_br)) / (x1 - p.x);                            // right
  total += (std::sin(a_tl - 0.5 * M_PI) - std::sin(a_tr - 0.5 * M_PI)) / (y1 - p.y);  // top
  total += (std::sin(a_bl - M_PI) - std::sin(a_tl - M_PI)) / (p.x - x0);              // left
  total += (std::sin(a_br + 0.5 * M_PI) - std::sin(a_bl - 1.5 * M_PI)) / (p.y - y0);  // bottom
  return total;
}

}  // namespace

double cut_disk_delta(const RasterSet& omega, double r, const KernelParams& params) {
  params.validate();
  KernelParams pure = params;
  pure.ell = LayerSep::infinite();
  const double r_cut = 0.5 * r;
  if (!(r_cut >= params.delta))
    throw std::invalid_argument("cut_disk_delta: need r/2 >= delta");

  std::vector<Vec2> ball;
  std::vector<Vec2> outside;
  const double rc2 = r_cut * r_cut;
  for (int j = 0; j < omega.ny; ++j)
    for (int i = 0; i < omega.nx; ++i) {
      const Vec2 c = omega.cell_center(i, j);
      const bool in_ball = c.x * c.x + c.y * c.y <= rc2;
      if (in_ball && !omega.occupied(i, j))
        throw std::invalid_argument("cut_disk_delta: ball not contained in omega");
      if (in_ball)
        ball.push_back(c);
      else if (!omega.occupied(i, j))
        outside.push_back(c);
    }
  if (ball.empty()) throw std::invalid_argument("cut_disk_delta: raster too coarse for the ball");

  const double ball_energy =
      energy_boundary(ShapeConfig::single(geometry::make_disk(r_cut)), pure).total;

  const double x0 = omega.origin.x, x1 = omega.origin.x + omega.nx * omega.h;
  const double y0 = omega.origin.y, y1 = omega.origin.y + omega.ny * omega.h;
  const double h2 = omega.h * omega.h;
  const double delta2 = params.delta * params.delta;
  std::vector<double> per_cell(ball.size(), 0.0);
  numeric::parallel_for(ball.size(), [&](std::size_t i) {
    const Vec2 x = ball[i];
    double s = 0.0;
    for (const Vec2& y : outside) {
      const double dx = y.x - x.x, dy = y.y - x.y;
      const double r2 = dx * dx + dy * dy;
      if (r2 > delta2) s += 1.0 / (r2 * std::sqrt(r2));
    }
    per_cell[i] = (s * h2 + outside_rect_integral(x, x0, x1, y0, y1)) * h2;
  });
  const double cross = numeric::pairwise_sum(per_cell);
  return ball_energy + params.lambda / (2.0 * params.log_delta()) * cross;
}

}  // namespace dipolar::energy
