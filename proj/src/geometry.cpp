#include "dipolar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dipolar/numeric.hpp"

namespace dipolar::geometry {

double Vec2::norm() const { return std::hypot(x, y); }

namespace {

// d^order/dt^order of (cos(kt), sin(kt)) as a phase rotation.
inline void harmonic_derivative(int order, double ck, double sk, double& dcos, double& dsin) {
  switch (order & 3) {
    case 0: dcos = ck; dsin = sk; break;
    case 1: dcos = -sk; dsin = ck; break;
    case 2: dcos = -ck; dsin = -sk; break;
    default: dcos = sk; dsin = -ck; break;
  }
}

}  // namespace

Vec2 JordanCurve::point(double t) const { return derivative(t, 0); }

Vec2 JordanCurve::derivative(double t, int order) const {
  const int K = max_harmonic();
  const double c1 = std::cos(t), s1 = std::sin(t);
  double ck = 1.0, sk = 0.0;  // cos(kt), sin(kt) running values
  Vec2 out{};
  for (int k = 0; k <= K; ++k) {
    if (k > 0) {
      const double c = ck * c1 - sk * s1;
      const double s = sk * c1 + ck * s1;
      ck = c;
      sk = s;
    }
    double kp = 1.0;
    for (int o = 0; o < order; ++o) kp *= k;
    double dc, ds;
    harmonic_derivative(order, ck, sk, dc, ds);
    const double cx = k < static_cast<int>(cos_x.size()) ? cos_x[k] : 0.0;
    const double sx = k < static_cast<int>(sin_x.size()) ? sin_x[k] : 0.0;
    const double cy = k < static_cast<int>(cos_y.size()) ? cos_y[k] : 0.0;
    const double sy = k < static_cast<int>(sin_y.size()) ? sin_y[k] : 0.0;
    out.x += kp * (cx * dc + sx * ds);
    out.y += kp * (cy * dc + sy * ds);
  }
  return out;
}

int JordanCurve::max_harmonic() const {
  return static_cast<int>(std::max(std::max(cos_x.size(), sin_x.size()),
                                   std::max(cos_y.size(), sin_y.size()))) -
         1;
}

JordanCurve JordanCurve::scaled(double factor) const {
  JordanCurve out = *this;
  for (auto* v : {&out.cos_x, &out.sin_x, &out.cos_y, &out.sin_y})
    for (double& c : *v) c *= factor;
  return out;
}

JordanCurve JordanCurve::translated(Vec2 offset) const {
  JordanCurve out = *this;
  if (out.cos_x.empty()) out.cos_x.resize(1, 0.0);
  if (out.cos_y.empty()) out.cos_y.resize(1, 0.0);
  out.cos_x[0] += offset.x;
  out.cos_y[0] += offset.y;
  return out;
}

double RasterSet::mass() const { return h * h * static_cast<double>(occupied_count()); }

std::size_t RasterSet::occupied_count() const {
  std::size_t n = 0;
  for (auto m : mask) n += m ? 1 : 0;
  return n;
}

JordanCurve make_disk(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_disk: radius must be positive");
  JordanCurve c;
  c.cos_x = {0.0, radius};
  c.sin_x = {0.0, 0.0};
  c.cos_y = {0.0, 0.0};
  c.sin_y = {0.0, radius};
  return c;
}

JordanCurve make_ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("make_ellipse: axes must be positive");
  JordanCurve c;
  c.cos_x = {0.0, a};
  c.sin_x = {0.0, 0.0};
  c.cos_y = {0.0, 0.0};
  c.sin_y = {0.0, b};
  return c;
}

JordanCurve fit_fourier(const std::vector<Vec2>& points, int max_harmonic) {
  const int M = static_cast<int>(points.size());
  if (max_harmonic >= M / 2) throw std::invalid_argument("fit_fourier: too few samples");
  JordanCurve c;
  c.cos_x.assign(max_harmonic + 1, 0.0);
  c.sin_x.assign(max_harmonic + 1, 0.0);
  c.cos_y.assign(max_harmonic + 1, 0.0);
  c.sin_y.assign(max_harmonic + 1, 0.0);
  for (int k = 0; k <= max_harmonic; ++k) {
    const double scale = (k == 0 ? 1.0 : 2.0) / M;
    double cxs = 0.0, sxs = 0.0, cys = 0.0, sys = 0.0;
    const double dt = 2.0 * M_PI * k / M;
    const double cd = std::cos(dt), sd = std::sin(dt);
    double ck = 1.0, sk = 0.0;
    for (int j = 0; j < M; ++j) {
      cxs += points[j].x * ck;
      sxs += points[j].x * sk;
      cys += points[j].y * ck;
      sys += points[j].y * sk;
      const double cn = ck * cd - sk * sd;
      sk = sk * cd + ck * sd;
      ck = cn;
    }
    c.cos_x[k] = scale * cxs;
    c.sin_x[k] = scale * sxs;
    c.cos_y[k] = scale * cys;
    c.sin_y[k] = scale * sys;
  }
  c.sin_x[0] = c.sin_y[0] = 0.0;
  return c;
}

namespace {

// Rounded rectangle traced CCW by arclength, starting mid right edge.
Vec2 rounded_rect_path(double w, double q, double rho, double s) {
  const double ex = w - 2.0 * rho;  // straight extent, horizontal edges
  const double ey = q - 2.0 * rho;
  const double arc = 0.5 * M_PI * rho;
  struct Seg {
    double len;
    int kind;  // 0..3 edges (R,T,L,B), 4..7 corner arcs (TR,TL,BL,BR)
  };
  const Seg segs[] = {{0.5 * ey, 0}, {arc, 4}, {ex, 1}, {arc, 5}, {ey, 2},
                      {arc, 6},      {ex, 3},  {arc, 7}, {0.5 * ey, 0}};
  for (const Seg& seg : segs) {
    if (s <= seg.len || &seg == &segs[8]) {
      const double u = std::min(s, seg.len);
      const double hx = 0.5 * w - rho, hy = 0.5 * q - rho;
      switch (seg.kind) {
        case 0:  // right edge upward; first pass starts at y=0, last at -ey/2
          return {0.5 * w, (&seg == &segs[0] ? 0.0 : -0.5 * ey) + u};
        case 1: return {hx - u, 0.5 * q};
        case 2: return {-0.5 * w, hy - u};
        case 3: return {-hx + u, -0.5 * q};
        case 4: {
          const double th = u / rho;
          return {hx + rho * std::cos(th), hy + rho * std::sin(th)};
        }
        case 5: {
          const double th = 0.5 * M_PI + u / rho;
          return {-hx + rho * std::cos(th), hy + rho * std::sin(th)};
        }
        case 6: {
          const double th = M_PI + u / rho;
          return {-hx + rho * std::cos(th), -hy + rho * std::sin(th)};
        }
        default: {
          const double th = 1.5 * M_PI + u / rho;
          return {hx + rho * std::cos(th), -hy + rho * std::sin(th)};
        }
      }
    }
    s -= seg.len;
  }
  return {0.5 * w, 0.0};
}

}  // namespace

JordanCurve make_stripe(double a, double m, double corner_rounding) {
  if (!(a > 0.0 && m > 0.0)) throw std::invalid_argument("make_stripe: a and m must be positive");
  const double w = a * m, q = 1.0 / a;
  const double rho = corner_rounding;
  if (rho < 0.0 || rho >= 0.5 * std::min(w, q))
    throw std::invalid_argument("make_stripe: corner rounding must lie in [0, min(am, 1/a)/2)");

  const double perimeter = 2.0 * (w - 2.0 * rho) + 2.0 * (q - 2.0 * rho) + 2.0 * M_PI * rho;
  int K;
  if (rho > 0.0) {
    K = std::clamp(static_cast<int>(std::ceil(2.5 * perimeter / (2.0 * M_PI * rho))), 32, 256);
  } else {
    K = 128;
  }
  const int M = std::max(2048, 16 * K);
  std::vector<Vec2> pts(M);
  for (int j = 0; j < M; ++j) pts[j] = rounded_rect_path(w, q, rho, perimeter * j / M);
  JordanCurve c = fit_fourier(pts, K);
  const double area = enclosed_area(c);
  return c.scaled(std::sqrt(m / area));
}

JordanCurve make_random_shape(std::uint64_t seed, double amplitude) {
  // splitmix64 stream, mapped to [-1, 1]; modes 2..6 on top of the unit circle
  auto next = [&seed]() {
    seed += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  };
  double ac[7] = {0}, bc[7] = {0};
  for (int k = 2; k <= 6; ++k) {
    ac[k] = amplitude * next() / (k * k);
    bc[k] = amplitude * next() / (k * k);
  }
  const int M = 64;
  std::vector<Vec2> pts(M);
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * M_PI * j / M;
    double r = 1.0;
    for (int k = 2; k <= 6; ++k) r += ac[k] * std::cos(k * t) + bc[k] * std::sin(k * t);
    pts[j] = {r * std::cos(t), r * std::sin(t)};
  }
  return fit_fourier(pts, 8);
}

double SampledCurve::max_curvature() const {
  double m = 0.0;
  for (double k : curvature) m = std::max(m, std::abs(k));
  return m;
}

SampledCurve sample_arclength(const JordanCurve& curve, int n) {
  if (n < 16) throw std::invalid_argument("sample_arclength: need n >= 16");
  const int K = std::max(1, curve.max_harmonic());
  const int M = std::max({4096, 8 * n, 16 * (K + 1)});
  const double ht = 2.0 * M_PI / M;

  std::vector<double> speed(M + 1);
  for (int i = 0; i <= M; ++i) speed[i] = curve.derivative(ht * i, 1).norm();
  std::vector<double> cum(M + 1);
  cum[0] = 0.0;
  for (int i = 0; i < M; ++i) cum[i + 1] = cum[i] + 0.5 * ht * (speed[i] + speed[i + 1]);
  const double perimeter = cum[M];
  if (!(perimeter > 1e-12)) throw std::invalid_argument("sample_arclength: degenerate curve");

  auto arc_from = [&](double t0, double t1) {
    return numeric::gauss16(t0, t1, [&](double t) { return curve.derivative(t, 1).norm(); });
  };

  SampledCurve out;
  out.curve = curve;
  out.perimeter = perimeter;
  out.ds = perimeter / n;
  out.params.resize(n);
  out.points.resize(n);
  out.tangents.resize(n);
  out.normals.resize(n);
  out.curvature.resize(n);

  int idx = 0;
  for (int k = 0; k < n; ++k) {
    const double target = perimeter * k / n;
    while (idx + 1 < M && cum[idx + 1] < target) ++idx;
    double t = ht * idx + (target - cum[idx]) / std::max(speed[idx], 1e-300) ;
    for (int it = 0; it < 5; ++it) {
      const double err = cum[idx] + arc_from(ht * idx, t) - target;
      const double v = curve.derivative(t, 1).norm();
      t -= err / std::max(v, 1e-300);
    }
    out.params[k] = t;
    const Vec2 d1 = curve.derivative(t, 1);
    const Vec2 d2 = curve.derivative(t, 2);
    const double v = d1.norm();
    out.points[k] = curve.point(t);
    out.tangents[k] = d1 * (1.0 / v);
    out.normals[k] = {out.tangents[k].y, -out.tangents[k].x};
    out.curvature[k] = (d1.x * d2.y - d1.y * d2.x) / (v * v * v);
  }
  return out;
}

int auto_node_count(const JordanCurve& curve, int minimum, int maximum) {
  const SampledCurve probe = sample_arclength(curve, 256);
  const double target =
      std::max({probe.perimeter / 0.02, probe.perimeter * probe.max_curvature() / 0.1,
                static_cast<double>(minimum)});
  int n = minimum;
  while (n < target && n < maximum) n *= 2;
  return std::min(n, maximum);
}

double enclosed_area(const JordanCurve& curve) {
  const int K = std::max(1, curve.max_harmonic());
  const int M = std::max(256, 8 * (K + 1));
  double sum = 0.0;
  for (int i = 0; i < M; ++i) {
    const double t = 2.0 * M_PI * i / M;
    const Vec2 p = curve.point(t);
    const Vec2 d = curve.derivative(t, 1);
    sum += p.x * d.y - p.y * d.x;
  }
  const double area = 0.5 * sum * 2.0 * M_PI / M;
  if (!(area > 0.0))
    throw std::invalid_argument("enclosed_area: non-positive signed area (orientation violation)");
  return area;
}

double enclosed_area(const ShapeConfig& config) {
  double total = 0.0;
  for (const auto& comp : config.components) total += enclosed_area(comp.curve);
  return total;
}

bool contains_point(const SampledCurve& curve, Vec2 p) {
  bool inside = false;
  const int n = curve.size();
  for (int i = 0; i < n; ++i) {
    const Vec2& a = curve.points[i];
    const Vec2& b = curve.points[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

namespace {

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4;
}

}  // namespace

bool is_simple(const std::vector<Vec2>& poly) {
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through wraparound
      if (segments_cross(a, b, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

RasterSet rasterize(const ShapeConfig& config, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("rasterize: h must be positive");
  std::vector<std::vector<Vec2>> polys;
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  for (const auto& comp : config.components) {
    if (comp.placement.is_far())
      throw std::invalid_argument("rasterize: FAR_SEPARATED components have no common grid");
    const SampledCurve sc = sample_arclength(comp.curve, 2048);
    std::vector<Vec2> poly(sc.points.size());
    for (std::size_t i = 0; i < poly.size(); ++i) poly[i] = sc.points[i] + comp.placement.offset;
    for (const Vec2& p : poly) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
    polys.push_back(std::move(poly));
  }

  RasterSet out;
  out.h = h;
  if (polys.empty()) return out;
  out.origin = {std::floor(min_x / h - 1.0) * h, std::floor(min_y / h - 1.0) * h};
  out.nx = static_cast<int>(std::ceil((max_x - out.origin.x) / h)) + 1;
  out.ny = static_cast<int>(std::ceil((max_y - out.origin.y) / h)) + 1;
  if (static_cast<long long>(out.nx) * out.ny > 60'000'000LL)
    throw std::invalid_argument("rasterize: grid too large at this spacing");
  out.mask.assign(static_cast<std::size_t>(out.nx) * out.ny, 0);

  std::vector<double> crossings;
  for (int j = 0; j < out.ny; ++j) {
    const double yc = out.origin.y + (j + 0.5) * h;
    crossings.clear();
    for (const auto& poly : polys) {
      const int n = static_cast<int>(poly.size());
      for (int i = 0; i < n; ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % n];
        if ((a.y > yc) != (b.y > yc))
          crossings.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t c = 0; c + 1 < crossings.size(); c += 2) {
      int i0 = static_cast<int>(std::ceil((crossings[c] - out.origin.x) / h - 0.5));
      int i1 = static_cast<int>(std::floor((crossings[c + 1] - out.origin.x) / h - 0.5));
      i0 = std::max(i0, 0);
      i1 = std::min(i1, out.nx - 1);
      for (int i = i0; i <= i1; ++i) out.mask[static_cast<std::size_t>(j) * out.nx + i] = 1;
    }
  }
  return out;
}

RasterSet rasterize_disk(double radius, double h) {
  if (!(radius > 0.0 && h > 0.0)) throw std::invalid_argument("rasterize_disk: bad arguments");
  RasterSet out;
  out.h = h;
  const int half = static_cast<int>(std::ceil(radius / h)) + 1;
  out.nx = out.ny = 2 * half;
  out.origin = {-half * h, -half * h};
  if (static_cast<long long>(out.nx) * out.ny > 60'000'000LL)
    throw std::invalid_argument("rasterize_disk: grid too large at this spacing");
  out.mask.assign(static_cast<std::size_t>(out.nx) * out.ny, 0);
  const double r2 = radius * radius;
  for (int j = 0; j < out.ny; ++j)
    for (int i = 0; i < out.nx; ++i) {
      const Vec2 p = out.cell_center(i, j);
      if (p.x * p.x + p.y * p.y <= r2) out.mask[static_cast<std::size_t>(j) * out.nx + i] = 1;
    }
  return out;
}

}  // namespace dipolar::geometry
