#pragma once

// Convex hull, extreme points chi+/chi-(theta), the minimum-width
// theta-aligned strip S(theta), the antipodal-pair decomposition of the
// orientation domain, and the per-point boundary distance d_p.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stripfit/geometry.hpp"
#include "stripfit/sinusoid.hpp"

namespace stripfit {

// Strictly convex hull: corner vertices only, counter-clockwise.
struct ConvexHull {
  std::vector<int> ccw;    // point ids, counter-clockwise
  std::vector<int> lower;  // left-to-right lower chain (subset of ccw)
  std::vector<int> upper;  // left-to-right upper chain

  size_t size() const { return ccw.size(); }
};

inline ConvexHull convex_hull(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("convex_hull: empty point set");
  const auto& pts = ps.pts;
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });

  ConvexHull h;
  if (pts.size() == 1) {
    h.ccw = {idx[0]};
    h.lower = {idx[0]};
    h.upper = {idx[0]};
    return h;
  }

  auto build = [&](const std::vector<int>& order, std::vector<int>& chain) {
    for (int i : order) {
      while (chain.size() >= 2 &&
             orient2d(pts[chain[chain.size() - 2]], pts[chain.back()], pts[i]) <= 0)
        chain.pop_back();
      chain.push_back(i);
    }
  };
  build(idx, h.lower);
  std::vector<int> rev(idx.rbegin(), idx.rend());
  build(rev, h.upper);
  std::reverse(h.upper.begin(), h.upper.end());  // store left-to-right

  h.ccw = h.lower;
  for (size_t i = h.upper.size() - 1; i >= 1; --i) {
    if (h.upper[i] != h.ccw.front() && h.upper[i] != h.ccw.back())
      h.ccw.push_back(h.upper[i]);
    if (i == 1) break;
  }
  return h;
}

struct ExtremeResult {
  int chi_plus = -1;   // point id on the high-offset bounding line
  int chi_minus = -1;  // point id on the low-offset bounding line
  Strip strip;
};

namespace detail {

// CCW-last among a cyclically contiguous candidate set of hull positions.
inline int ccw_last(const std::vector<int>& hull_ccw, const std::vector<int>& cand) {
  const int m = int(hull_ccw.size());
  if (cand.size() == 1 || m <= 1) return hull_ccw[cand[0]];
  if (int(cand.size()) == m) return hull_ccw[0];
  std::vector<char> in(m, 0);
  for (int c : cand) in[c] = 1;
  for (int c : cand)
    if (!in[(c + 1) % m]) return hull_ccw[c];
  return hull_ccw[cand[0]];
}

}  // namespace detail

// Extreme points and minimum-width theta-aligned strip. The strip offsets
// come from the full point scan; the witnesses come from hull corners with
// the counter-clockwise-last tie-break at antipodal breakpoints.
inline ExtremeResult extreme_points(const PointSet& ps, const ConvexHull& hull,
                                    const Orientation& o) {
  if (ps.empty()) throw std::invalid_argument("extreme_points: empty point set");
  const double s = std::sin(o.theta), c = std::cos(o.theta);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const Point& p : ps.pts) {
    const double h = -p.x * s + p.y * c;
    if (first) {
      lo = hi = h;
      first = false;
    } else {
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
  }

  const int m = int(hull.ccw.size());
  std::vector<double> hh(m);
  double scale = 1.0;
  for (int i = 0; i < m; ++i) {
    const Point& p = ps.pts[hull.ccw[i]];
    hh[i] = -p.x * s + p.y * c;
    scale = std::max(scale, std::fabs(hh[i]));
  }
  const double tol = 1e-12 * scale;
  double mx = *std::max_element(hh.begin(), hh.end());
  double mn = *std::min_element(hh.begin(), hh.end());
  std::vector<int> top, bot;
  for (int i = 0; i < m; ++i) {
    if (hh[i] >= mx - tol) top.push_back(i);
    if (hh[i] <= mn + tol) bot.push_back(i);
  }
  ExtremeResult r;
  r.chi_plus = detail::ccw_last(hull.ccw, top);
  r.chi_minus = detail::ccw_last(hull.ccw, bot);
  r.strip = Strip(o, lo, hi);
  return r;
}

inline ExtremeResult extreme_points(const PointSet& ps, const Orientation& o) {
  return extreme_points(ps, convex_hull(ps), o);
}

// Maximal orientation intervals with a fixed antipodal pair.
struct AntipodalInterval {
  double theta_lo = 0.0;
  double theta_hi = 0.0;  // half-open [lo, hi)
  int chi_plus = -1;
  int chi_minus = -1;
};

struct AntipodalDecomposition {
  std::vector<AntipodalInterval> intervals;  // partition of [-pi/2, pi/2)

  const AntipodalInterval& locate(double theta) const {
    size_t lo = 0, hi = intervals.size();
    while (hi - lo > 1) {
      const size_t mid = (lo + hi) / 2;
      if (intervals[mid].theta_lo <= theta)
        lo = mid;
      else
        hi = mid;
    }
    return intervals[lo];
  }
};

// The pair changes exactly where a bounding line contains a hull edge, i.e.
// at the hull-edge orientations.
inline AntipodalDecomposition antipodal_decomposition(const PointSet& ps,
                                                      const ConvexHull& hull) {
  std::vector<double> brk;
  const int m = int(hull.ccw.size());
  for (int i = 0; i < m && m >= 2; ++i) {
    const Point& a = ps.pts[hull.ccw[i]];
    const Point& b = ps.pts[hull.ccw[(i + 1) % m]];
    if (m == 2 && i == 1) break;  // degenerate hull: one edge
    const double t = segment_orientation(a, b);
    if (t > -kHalfPi && t < kHalfPi) brk.push_back(t);
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

  AntipodalDecomposition d;
  std::vector<double> bounds;
  bounds.push_back(-kHalfPi);
  for (double b : brk) bounds.push_back(b);
  bounds.push_back(kHalfPi);
  for (size_t i = 0; i + 1 < bounds.size(); ++i) {
    AntipodalInterval iv;
    iv.theta_lo = bounds[i];
    iv.theta_hi = bounds[i + 1];
    const ExtremeResult er =
        extreme_points(ps, hull, Orientation(0.5 * (iv.theta_lo + iv.theta_hi)));
    iv.chi_plus = er.chi_plus;
    iv.chi_minus = er.chi_minus;
    d.intervals.push_back(iv);
  }
  return d;
}

inline AntipodalDecomposition antipodal_decomposition(const PointSet& ps) {
  return antipodal_decomposition(ps, convex_hull(ps));
}

// d_p(theta) = min{sigma(p, chi+), sigma(p, chi-)}: distance from p to the
// nearer bounding line of S(theta). Within an antipodal interval both
// branches are pure nonnegative sinusoids, so each interval contributes at
// most one extra breakpoint where the branches cross.
inline PiecewiseSinusoid distance_function(const PointSet& ps,
                                           const AntipodalDecomposition& dec,
                                           int p_id) {
  if (p_id < 0 || p_id >= int(ps.size()))
    throw std::invalid_argument("distance_function: point id out of range");
  const Point& p = ps.pts[p_id];
  PiecewiseSinusoid f;
  bool first_interval = true;
  for (const AntipodalInterval& iv : dec.intervals) {
    const Sinusoid plus =
        Sinusoid::offset_difference(ps.pts[iv.chi_plus], p);  // h_chi+ - h_p
    const Sinusoid minus =
        Sinusoid::offset_difference(p, ps.pts[iv.chi_minus]);  // h_p - h_chi-

    if (!first_interval) f.breakpoints.push_back(iv.theta_lo);
    first_interval = false;

    const EqualRoots er =
        sinusoid_equal_roots(plus, minus, iv.theta_lo, iv.theta_hi);
    std::vector<double> cuts;
    for (double r : er.roots)
      if (r > iv.theta_lo + 1e-15 && r < iv.theta_hi - 1e-15) cuts.push_back(r);

    double lo = iv.theta_lo;
    for (size_t k = 0; k <= cuts.size(); ++k) {
      const double hi = (k < cuts.size()) ? cuts[k] : iv.theta_hi;
      const double mid = 0.5 * (lo + hi);
      const bool plus_wins = plus.eval(mid) <= minus.eval(mid);
      if (k > 0) f.breakpoints.push_back(lo);
      f.pieces.push_back({plus_wins ? plus : minus, false});
      lo = hi;
    }
  }
  return f;
}

inline PiecewiseSinusoid distance_function(const PointSet& ps, int p_id) {
  return distance_function(ps, antipodal_decomposition(ps), p_id);
}

// Direct evaluation of d_p(theta), sharing no state with the decomposition.
inline double distance_at(const PointSet& ps, const ExtremeResult& er, int p_id,
                          const Orientation& o) {
  const double h = normal_offset(ps.pts[p_id], o);
  return std::min(er.strip.hi - h, h - er.strip.lo);
}

}  // namespace stripfit
