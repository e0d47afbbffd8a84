#pragma once

// Core planar types: points, orientations, strips, double-strips,
// parallelogram annuli, and the point/line duality transform.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripfit/expansion.hpp"

namespace stripfit {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
};

// Set of distinct points; duplicates are dropped at ingestion, input order
// is preserved for id assignment.
struct PointSet {
  std::vector<Point> pts;
  int duplicates_removed = 0;

  static PointSet from(const std::vector<Point>& input) {
    PointSet ps;
    ps.pts.reserve(input.size());
    for (const Point& p : input) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("point coordinates must be finite");
      bool dup = false;
      for (const Point& q : ps.pts)
        if (q == p) {
          dup = true;
          break;
        }
      if (dup)
        ++ps.duplicates_removed;
      else
        ps.pts.push_back(p);
    }
    return ps;
  }

  size_t size() const { return pts.size(); }
  bool empty() const { return pts.empty(); }
  const Point& operator[](size_t i) const { return pts[i]; }

  double diameter() const {
    double d2 = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
        d2 = std::max(d2, dx * dx + dy * dy);
      }
    return std::sqrt(d2);
  }
};

// Normalize an angle into the orientation domain [-pi/2, pi/2).
inline double normalize_orientation(double theta) {
  if (theta >= -kHalfPi && theta < kHalfPi) return theta;
  theta = std::remainder(theta, kPi);  // lands in [-pi/2, pi/2]
  if (theta >= kHalfPi) theta -= kPi;
  if (theta < -kHalfPi) theta += kPi;
  return theta;
}

struct Orientation {
  double theta = 0.0;  // radians in [-pi/2, pi/2)

  Orientation() = default;
  explicit Orientation(double t) : theta(normalize_orientation(t)) {}

  // Unit direction of a theta-aligned line.
  Point direction() const { return {std::cos(theta), std::sin(theta)}; }
  // Unit normal; signed offsets along it order lines bottom-to-top
  // (left-to-right at theta = -pi/2).
  Point normal() const { return {-std::sin(theta), std::cos(theta)}; }
};

// Signed offset of p along the theta-normal.
inline double normal_offset(const Point& p, const Orientation& o) {
  return -p.x * std::sin(o.theta) + p.y * std::cos(o.theta);
}

// Orientation of segment pq in [-pi/2, pi/2). p != q.
inline double segment_orientation(const Point& p, const Point& q) {
  return normalize_orientation(std::atan2(q.y - p.y, q.x - p.x));
}

// Width of the strip bounded by the two theta-aligned lines through p and q:
// |pq| * |sin(theta - theta_pq)|, evaluated as the offset difference.
inline double sigma(const Point& p, const Point& q, const Orientation& o) {
  return std::fabs(normal_offset(p, o) - normal_offset(q, o));
}

// Exact orientation test: sign of the cross product (b-a) x (c-a).
inline int orient2d(const Point& a, const Point& b, const Point& c) {
  const Expansion lhs =
      expansion_mul(expansion_from(b.x, -a.x), expansion_from(c.y, -a.y));
  const Expansion rhs =
      expansion_mul(expansion_from(b.y, -a.y), expansion_from(c.x, -a.x));
  return expansion_sign(expansion_diff(lhs, rhs));
}

// Closed region between two parallel theta-aligned lines, stored as the
// signed normal offsets of the bounding lines.
struct Strip {
  Orientation orientation;
  double lo = 0.0;
  double hi = 0.0;

  Strip() = default;
  Strip(Orientation o, double lo_, double hi_) : orientation(o), lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("strip requires lo <= hi");
  }

  double width() const { return hi - lo; }
  double middle_offset() const { return 0.5 * (lo + hi); }
  bool contains(const Point& p, double tol = 0.0) const {
    const double h = normal_offset(p, orientation);
    return h >= lo - tol && h <= hi + tol;
  }
};

// Outer strip minus the interior of a concentric inner strip.
struct DoubleStrip {
  Strip outer;
  Strip inner;

  DoubleStrip() = default;
  DoubleStrip(Strip out, Strip in) : outer(std::move(out)), inner(std::move(in)) {
    if (outer.orientation.theta != inner.orientation.theta)
      throw std::invalid_argument("double-strip strips must share orientation");
    const double scale =
        std::max({1.0, std::fabs(outer.lo), std::fabs(outer.hi)});
    const double tol = 1e-9 * scale;
    if (std::fabs(outer.middle_offset() - inner.middle_offset()) > tol)
      throw std::invalid_argument("double-strip strips must share middle line");
    if (inner.lo < outer.lo - tol || inner.hi > outer.hi + tol)
      throw std::invalid_argument("inner strip must lie inside outer strip");
    // Clamp away sub-tolerance inversions so width() stays >= 0.
    inner.lo = std::max(inner.lo, outer.lo);
    inner.hi = std::min(inner.hi, outer.hi);
  }

  static DoubleStrip from_width(const Strip& outer, double width) {
    const double half = 0.5 * outer.width();
    const double w = std::min(std::max(width, 0.0), half);
    const double m = outer.middle_offset();
    return DoubleStrip(outer,
                       Strip(outer.orientation, m - (half - w), m + (half - w)));
  }

  double width() const { return 0.5 * (outer.width() - inner.width()); }
  // p is inside the double strip: inside outer, not in the open inner core.
  bool contains(const Point& p, double tol = 0.0) const {
    const double h = normal_offset(p, outer.orientation);
    if (h < outer.lo - tol || h > outer.hi + tol) return false;
    return !(h > inner.lo + tol && h < inner.hi - tol);
  }
};

// Region between two side-wise parallel parallelograms, given by two
// double-strips of distinct orientations.
struct ParallelogramAnnulus {
  DoubleStrip d1;
  DoubleStrip d2;

  ParallelogramAnnulus() = default;
  ParallelogramAnnulus(DoubleStrip a, DoubleStrip b)
      : d1(std::move(a)), d2(std::move(b)) {
    if (d1.outer.orientation.theta == d2.outer.orientation.theta)
      throw std::invalid_argument("annulus orientations must differ");
  }

  double width() const { return std::max(d1.width(), d2.width()); }
  // Inside the outer parallelogram and outside the open inner one.
  bool contains(const Point& p, double tol = 0.0) const {
    const double h1 = normal_offset(p, d1.outer.orientation);
    const double h2 = normal_offset(p, d2.outer.orientation);
    if (h1 < d1.outer.lo - tol || h1 > d1.outer.hi + tol) return false;
    if (h2 < d2.outer.lo - tol || h2 > d2.outer.hi + tol) return false;
    const bool in1 = h1 > d1.inner.lo + tol && h1 < d1.inner.hi - tol;
    const bool in2 = h2 > d2.inner.lo + tol && h2 < d2.inner.hi - tol;
    return !(in1 && in2);
  }
};

// Line v = a*u - b in the dual plane (the dual of primal point (a, b)).
struct DualLine {
  double a = 0.0;
  double b = 0.0;

  double eval(double u) const { return a * u - b; }
};

// Non-vertical primal line y = a*x - b.
struct PrimalLine {
  double a = 0.0;
  double b = 0.0;

  double eval(double x) const { return a * x - b; }
};

inline DualLine dualize_point(const Point& p) { return DualLine{p.x, p.y}; }
inline Point dualize_line(const PrimalLine& l) { return Point{l.a, l.b}; }
inline PrimalLine primal_line_of(const DualLine& d) { return PrimalLine{d.a, d.b}; }
inline Point dual_point_of(const DualLine& d) { return Point{d.a, d.b}; }

// The theta-aligned line with normal offset c, as y = a*x - b.
// Throws for theta = -pi/2: vertical lines have no dual.
inline PrimalLine line_from_offset(const Orientation& o, double offset) {
  const double c = std::cos(o.theta);
  if (!(std::fabs(o.theta + kHalfPi) > 1e-15) || c == 0.0)
    throw std::domain_error("vertical line is non-dualizable");
  return PrimalLine{std::tan(o.theta), -offset / c};
}

// p above / on / below primal line (sign of p.y - l(p.x)).
inline int point_line_side(const Point& p, const PrimalLine& l) {
  // sign(y - a*x + b), exact.
  Expansion e = expansion_mul(expansion_from(l.a), expansion_from(p.x));
  e = expansion_diff(expansion_from(p.y), e);
  e = grow_expansion(e, l.b);
  return expansion_sign(e);
}

}  // namespace stripfit
