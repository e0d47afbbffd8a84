#pragma once

// Sinusoidal functions a*sin(theta + b) and piecewise compositions over the
// orientation domain [-pi/2, pi/2). Strip-width functions sigma_theta(p, q)
// and the per-point boundary distances d_p are built from these.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stripfit/geometry.hpp"

namespace stripfit {

struct Sinusoid {
  double amplitude = 0.0;  // >= 0 after normalization
  double phase = 0.0;      // radians in (-pi, pi]

  Sinusoid() = default;
  Sinusoid(double a, double b) {
    if (a < 0.0) {
      a = -a;
      b += kPi;
    }
    amplitude = a;
    phase = std::remainder(b, 2.0 * kPi);
    if (phase <= -kPi) phase += 2.0 * kPi;
  }

  // A*sin(theta) + B*cos(theta) as a single sinusoid.
  static Sinusoid from_components(double sin_coeff, double cos_coeff) {
    return Sinusoid(std::hypot(sin_coeff, cos_coeff),
                    std::atan2(cos_coeff, sin_coeff));
  }

  // The width function theta -> h_p(theta) - h_q(theta) (no absolute value).
  static Sinusoid offset_difference(const Point& p, const Point& q) {
    return from_components(-(p.x - q.x), p.y - q.y);
  }

  double eval(double theta) const { return amplitude * std::sin(theta + phase); }
  double derivative(double theta) const {
    return amplitude * std::cos(theta + phase);
  }
  bool is_zero() const { return amplitude == 0.0; }

  // Zeros (theta = -phase mod pi) inside [lo, hi].
  std::vector<double> zeros_in(double lo, double hi) const {
    std::vector<double> out;
    if (is_zero()) return out;  // identically zero handled by callers
    double t = -phase + kPi * std::floor((lo + phase) / kPi);
    for (; t <= hi + 1e-15; t += kPi)
      if (t >= lo - 1e-15) out.push_back(std::min(std::max(t, lo), hi));
    return out;
  }

  // Stationary points (peaks of |.|) inside [lo, hi].
  std::vector<double> stationary_in(double lo, double hi) const {
    std::vector<double> out;
    if (is_zero()) return out;
    double t = kHalfPi - phase + kPi * std::floor((lo - kHalfPi + phase) / kPi);
    for (; t <= hi + 1e-15; t += kPi)
      if (t >= lo - 1e-15) out.push_back(std::min(std::max(t, lo), hi));
    return out;
  }
};

// Phasor addition; a cancellation below 1e-14 of the input magnitudes is
// collapsed to the zero sinusoid.
inline Sinusoid sinusoid_sum(const Sinusoid& f, const Sinusoid& g) {
  const double s = f.amplitude * std::cos(f.phase) + g.amplitude * std::cos(g.phase);
  const double c = f.amplitude * std::sin(f.phase) + g.amplitude * std::sin(g.phase);
  const double amp = std::hypot(s, c);
  if (amp <= 1e-14 * (f.amplitude + g.amplitude)) return Sinusoid();
  return Sinusoid::from_components(s, c);
}

inline Sinusoid sinusoid_negate(const Sinusoid& f) {
  return Sinusoid(f.amplitude, f.phase + kPi);
}

struct EqualRoots {
  bool identical = false;      // f - g vanishes identically
  std::vector<double> roots;   // crossing angles, ascending
};

// All theta in [lo, hi] with f(theta) = g(theta). The difference of two
// sinusoids is sinusoidal, so there is at most one root per half-period;
// identical inputs are reported as such rather than as roots.
inline EqualRoots sinusoid_equal_roots(const Sinusoid& f, const Sinusoid& g,
                                       double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("equal_roots: empty interval");
  EqualRoots r;
  const Sinusoid h = sinusoid_sum(f, sinusoid_negate(g));
  if (h.is_zero()) {
    r.identical = true;
    return r;
  }
  r.roots = h.zeros_in(lo, hi);
  return r;
}

// Piecewise sinusoidal function on [-pi/2, pi/2): interior breakpoints plus
// one piece per sub-interval. A piece may carry an absolute-value flag.
struct PiecewiseSinusoid {
  struct Piece {
    Sinusoid s;
    bool abs_value = false;
  };

  std::vector<double> breakpoints;  // strictly increasing, inside (-pi/2, pi/2)
  std::vector<Piece> pieces;        // size == breakpoints.size() + 1

  double eval(double theta) const {
    size_t i = std::upper_bound(breakpoints.begin(), breakpoints.end(), theta) -
               breakpoints.begin();
    const Piece& p = pieces[i];
    const double v = p.s.eval(theta);
    return p.abs_value ? std::fabs(v) : v;
  }

  size_t piece_index(double theta) const {
    return std::upper_bound(breakpoints.begin(), breakpoints.end(), theta) -
           breakpoints.begin();
  }

  // Structural invariants: breakpoint ordering, domain bounds, continuity.
  bool valid(double tol = 1e-9) const {
    if (pieces.size() != breakpoints.size() + 1) return false;
    for (size_t i = 0; i < breakpoints.size(); ++i) {
      if (breakpoints[i] < -kHalfPi || breakpoints[i] >= kHalfPi) return false;
      if (i > 0 && !(breakpoints[i] > breakpoints[i - 1])) return false;
    }
    double scale = 1.0;
    for (const Piece& p : pieces) scale = std::max(scale, p.s.amplitude);
    for (size_t i = 0; i < breakpoints.size(); ++i) {
      const double t = breakpoints[i];
      const double a = pieces[i].abs_value ? std::fabs(pieces[i].s.eval(t))
                                           : pieces[i].s.eval(t);
      const double b = pieces[i + 1].abs_value
                           ? std::fabs(pieces[i + 1].s.eval(t))
                           : pieces[i + 1].s.eval(t);
      if (std::fabs(a - b) > tol * scale) return false;
    }
    return true;
  }
};

// sigma_theta(p, q) over the whole domain as |single sinusoid|.
inline PiecewiseSinusoid sigma_function(const Point& p, const Point& q) {
  PiecewiseSinusoid f;
  f.pieces.push_back({Sinusoid::offset_difference(p, q), true});
  return f;
}

}  // namespace stripfit
