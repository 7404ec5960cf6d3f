#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dipolar::geometry {

struct Vec2 {
  double x = 0.0, y = 0.0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const;
};

// Closed curve given by finite Fourier sums over t in [0, 2*pi):
//   x(t) = sum_k cos_x[k] cos(kt) + sin_x[k] sin(kt),   same for y.
// Index 0 of the sin arrays is unused. Band-limiting keeps all derivatives
// exact, which the energy quadratures rely on.
struct JordanCurve {
  std::vector<double> cos_x, sin_x, cos_y, sin_y;

  Vec2 point(double t) const;
  Vec2 derivative(double t, int order = 1) const;
  int max_harmonic() const;

  JordanCurve scaled(double factor) const;
  JordanCurve translated(Vec2 offset) const;
};

// Nodes at uniform arclength spacing together with exact differential data
// evaluated at the corresponding curve parameters.
struct SampledCurve {
  JordanCurve curve;
  std::vector<double> params;     // curve parameter t per node
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;     // unit
  std::vector<Vec2> normals;      // outward unit (curve must be CCW)
  std::vector<double> curvature;  // positive for convex CCW arcs
  double ds = 0.0;                // arclength spacing
  double perimeter = 0.0;

  int size() const { return static_cast<int>(points.size()); }
  double max_curvature() const;
};

struct Placement {
  enum class Kind { Finite, FarSeparated };
  Kind kind = Kind::Finite;
  Vec2 offset{};

  static Placement at(Vec2 p) { return {Kind::Finite, p}; }
  static Placement far() { return {Kind::FarSeparated, {}}; }
  bool is_far() const { return kind == Kind::FarSeparated; }
};

struct Component {
  JordanCurve curve;
  Placement placement;
};

// A finite union of Jordan domains. FAR_SEPARATED components sit "at
// infinity": they contribute their own energy but no cross interactions.
struct ShapeConfig {
  std::vector<Component> components;

  static ShapeConfig single(JordanCurve curve) {
    return ShapeConfig{{Component{std::move(curve), Placement::at({0.0, 0.0})}}};
  }
};

// Boolean occupancy grid with spacing h; cell (i, j) covers
// [origin.x + i*h, origin.x + (i+1)*h) x [...). Mass is h^2 * #occupied.
struct RasterSet {
  double h = 0.0;
  Vec2 origin{};
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> mask;

  bool occupied(int i, int j) const { return mask[static_cast<std::size_t>(j) * nx + i]; }
  Vec2 cell_center(int i, int j) const {
    return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
  }
  double mass() const;
  std::size_t occupied_count() const;
};

// --- constructors ---

JordanCurve make_disk(double radius);
JordanCurve make_ellipse(double a, double b);

// Stripe S_{a,m}: an am x 1/a rectangle. For rounding > 0 the corners are
// replaced by quarter circles and the curve is dilated so the enclosed area
// is exactly m; the result is a band-limited fit, so it is C^infinity but
// tracks the rounded rectangle only up to the fit tolerance.
JordanCurve make_stripe(double a, double m, double corner_rounding);

// Random band-limited perturbation of the unit circle (modes 2..6), used by
// the property checks. Always returns a simple, positively oriented curve.
JordanCurve make_random_shape(std::uint64_t seed, double amplitude = 0.12);

// --- operations ---

// Least-squares-exact Fourier fit (plain DFT) through points sampled at
// uniform parameter spacing; truncation above max_harmonic low-passes the
// data. Used by the stripe constructor and the flow's refit.
JordanCurve fit_fourier(const std::vector<Vec2>& points, int max_harmonic);

// Nodes at equal arclength; tangents, normals and curvature from exact
// Fourier derivatives at the reparametrized nodes. n >= 16.
SampledCurve sample_arclength(const JordanCurve& curve, int n);

// Picks a node count for energy quadrature from the perimeter and maximum
// curvature of the shape (ds <= min(0.02, 0.1/max kappa)).
int auto_node_count(const JordanCurve& curve, int minimum = 128, int maximum = 8192);

// Signed area by Green's theorem; exact for band-limited curves. Negative
// area signals an orientation violation and is rejected.
double enclosed_area(const JordanCurve& curve);
double enclosed_area(const ShapeConfig& config);

// Even-odd test of the sampled polyline.
bool contains_point(const SampledCurve& curve, Vec2 p);

// Polyline self-intersection test (adjacent segments skipped).
bool is_simple(const std::vector<Vec2>& polyline);

// Cell centers inside any component are occupied. All components must be
// finitely placed.
RasterSet rasterize(const ShapeConfig& config, double h);

// Raster of a disk of given radius centered at the origin.
RasterSet rasterize_disk(double radius, double h);

}  // namespace dipolar::geometry
