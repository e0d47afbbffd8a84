#pragma once

// Minimum-width double-strip enclosing P: fixed orientation and all
// orientations. The all-orientation sweep decomposes [-pi/2, pi/2) into
// intervals with a fixed tuple (chi+, chi-, q+, q-) via the dual chains and
// minimizes the two-branch width max on each interval in closed form.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stripfit/chain.hpp"
#include "stripfit/geometry.hpp"
#include "stripfit/hull.hpp"
#include "stripfit/sinusoid.hpp"

namespace stripfit {

struct DoubleStripResult {
  double width = 0.0;
  double theta = 0.0;
  DoubleStrip strip;
  int chi_plus = -1, chi_minus = -1;  // outer boundary witnesses
  int q_plus = -1, q_minus = -1;      // inner boundary witnesses (-1: none)
};

// Fixed-orientation solver: outer strip S(theta), inner strip the widest
// empty concentric strip; width w(theta) = max_p d_p(theta). O(n).
inline DoubleStripResult solve_fixed(const PointSet& ps, const Orientation& o) {
  if (ps.empty()) throw std::invalid_argument("solve_fixed: empty point set");
  const double s = std::sin(o.theta), c = std::cos(o.theta);
  double lo = 0.0, hi = 0.0;
  for (size_t i = 0; i < ps.size(); ++i) {
    const double h = -ps[i].x * s + ps[i].y * c;
    if (i == 0) lo = hi = h;
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double m = 0.5 * (lo + hi);
  DoubleStripResult r;
  r.theta = o.theta;
  double qp_h = 0.0, qm_h = 0.0;
  for (size_t i = 0; i < ps.size(); ++i) {
    const double h = -ps[i].x * s + ps[i].y * c;
    const double d = std::min(hi - h, h - lo);
    if (d > r.width) r.width = d;
    if (h >= m && (r.q_plus < 0 || h < qp_h)) {
      r.q_plus = int(i);
      qp_h = h;
    }
    if (h < m && (r.q_minus < 0 || h > qm_h)) {
      r.q_minus = int(i);
      qm_h = h;
    }
    if (h == hi) r.chi_plus = int(i);
    if (h == lo && r.chi_minus < 0) r.chi_minus = int(i);
  }
  r.strip = DoubleStrip::from_width(Strip(o, lo, hi), r.width);
  return r;
}

// Branch of the width function on a tuple interval: sigma between a fixed
// inner witness and the extreme point on its side, nonnegative there.
struct SigmaBranch {
  bool present = false;
  Sinusoid s;

  static SigmaBranch absent() { return {}; }
  static SigmaBranch of(const Point& extreme, const Point& inner) {
    return {true, Sinusoid::offset_difference(extreme, inner)};
  }
  double eval(double theta) const {
    return present ? std::max(s.eval(theta), 0.0) : 0.0;
  }
};

struct IntervalMinimum {
  double theta = 0.0;
  double width = 0.0;
};

// Minimize max(plus, minus) over the closed interval [tlo, thi]. Candidates:
// both endpoints, branch-equality roots, branch zeros, branch stationary
// angles. Ties resolve to the smallest candidate angle.
inline IntervalMinimum minimize_on_interval(const SigmaBranch& plus,
                                            const SigmaBranch& minus,
                                            double tlo, double thi) {
  std::vector<double> cand;
  cand.push_back(tlo);
  cand.push_back(thi);
  auto add_all = [&](const std::vector<double>& xs) {
    for (double x : xs)
      if (x > tlo && x < thi) cand.push_back(x);
  };
  if (plus.present && minus.present) {
    const EqualRoots diff = sinusoid_equal_roots(plus.s, minus.s, tlo, thi);
    add_all(diff.roots);
    const EqualRoots sum =
        sinusoid_equal_roots(plus.s, sinusoid_negate(minus.s), tlo, thi);
    add_all(sum.roots);
  }
  if (plus.present) {
    add_all(plus.s.zeros_in(tlo, thi));
    add_all(plus.s.stationary_in(tlo, thi));
  }
  if (minus.present) {
    add_all(minus.s.zeros_in(tlo, thi));
    add_all(minus.s.stationary_in(tlo, thi));
  }
  std::sort(cand.begin(), cand.end());
  IntervalMinimum best;
  bool first = true;
  for (double t : cand) {
    const double w = std::max(plus.eval(t), minus.eval(t));
    if (first || w < best.width) {
      best.theta = t;
      best.width = w;
      first = false;
    }
  }
  return best;
}

// Orientation interval on which the defining 4-tuple is constant.
struct TupleInterval {
  Breakpoint u_lo = Breakpoint::neg_inf();
  Breakpoint u_hi = Breakpoint::pos_inf();
  double theta_lo = -kHalfPi;
  double theta_hi = kHalfPi;
  int chi_plus = -1, chi_minus = -1;
  int q_plus = -1, q_minus = -1;  // -1: no subset point on that side
};

namespace ds_detail {

inline std::vector<Breakpoint> merged_cuts(const PiecewiseChain& qp,
                                           const PiecewiseChain& qm,
                                           const MidChain& m) {
  std::vector<const std::vector<Breakpoint>*> srcs = {&qp.cuts, &qm.cuts,
                                                      &m.cuts};
  std::vector<Breakpoint> all;
  for (const auto* s : srcs) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a < b; });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Breakpoint& a, const Breakpoint& b) {
                          return breakpoint_compare(a, b) == 0;
                        }),
            all.end());
  return all;
}

}  // namespace ds_detail

// Tuple intervals from the chains: cut at every vertex of Q+, Q-, and M.
// chi- is the U support and chi+ the L support of the M segment; the Q+
// ceiling supplies q- and the Q- floor supplies q+.
inline std::vector<TupleInterval> tuple_intervals_from_chains(
    const PiecewiseChain& qplus, const PiecewiseChain& qminus, const MidChain& m) {
  const std::vector<Breakpoint> cuts = ds_detail::merged_cuts(qplus, qminus, m);
  std::vector<TupleInterval> out;
  out.reserve(cuts.size() + 1);
  size_t ip = 0, im = 0, imm = 0;
  for (size_t k = 0; k <= cuts.size(); ++k) {
    TupleInterval t;
    t.u_lo = k == 0 ? Breakpoint::neg_inf() : cuts[k - 1];
    t.u_hi = k == cuts.size() ? Breakpoint::pos_inf() : cuts[k];
    if (k > 0) {
      while (ip < qplus.cuts.size() &&
             breakpoint_compare(qplus.cuts[ip], t.u_lo) <= 0)
        ++ip;
      while (im < qminus.cuts.size() &&
             breakpoint_compare(qminus.cuts[im], t.u_lo) <= 0)
        ++im;
      while (imm < m.cuts.size() && breakpoint_compare(m.cuts[imm], t.u_lo) <= 0)
        ++imm;
    }
    t.q_minus = qplus.lines[ip] == kGap ? -1 : qplus.lines[ip];
    t.q_plus = qminus.lines[im] == kGap ? -1 : qminus.lines[im];
    t.chi_minus = m.pairs[imm].first;
    t.chi_plus = m.pairs[imm].second;
    t.theta_lo = std::atan(breakpoint_to_double(t.u_lo));
    t.theta_hi = std::atan(breakpoint_to_double(t.u_hi));
    out.push_back(t);
  }
  return out;
}

// Decomposition of the orientation domain into O(n^2) constant-tuple
// intervals for the full point set.
inline std::vector<TupleInterval> tuple_intervals(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("tuple_intervals: empty point set");
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  std::vector<int> all(ps.size());
  for (size_t i = 0; i < ps.size(); ++i) all[i] = int(i);
  const PiecewiseChain qp = build_side_chain(all, M, tbl, true);
  const PiecewiseChain qm = build_side_chain(all, M, tbl, false);
  return tuple_intervals_from_chains(qp, qm, M);
}

inline IntervalMinimum minimize_on_interval(const PointSet& ps,
                                            const TupleInterval& t) {
  const SigmaBranch plus =
      t.q_plus >= 0 ? SigmaBranch::of(ps[t.chi_plus], ps[t.q_plus])
                    : SigmaBranch::absent();
  const SigmaBranch minus =
      t.q_minus >= 0 ? SigmaBranch::of(ps[t.q_minus], ps[t.chi_minus])
                     : SigmaBranch::absent();
  return minimize_on_interval(plus, minus, t.theta_lo, t.theta_hi);
}

namespace ds_detail {

// Witness double-strip for a tuple-interval minimizer.
inline DoubleStripResult witness_at(const PointSet& ps, const TupleInterval& t,
                                    const IntervalMinimum& im) {
  const Orientation o(im.theta);
  double lo = 0.0, hi = 0.0;
  const double s = std::sin(o.theta), c = std::cos(o.theta);
  for (size_t i = 0; i < ps.size(); ++i) {
    const double h = -ps[i].x * s + ps[i].y * c;
    if (i == 0) lo = hi = h;
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  DoubleStripResult r;
  r.width = im.width;
  r.theta = im.theta;
  r.strip = DoubleStrip::from_width(Strip(o, lo, hi), im.width);
  r.chi_plus = t.chi_plus;
  r.chi_minus = t.chi_minus;
  r.q_plus = t.q_plus;
  r.q_minus = t.q_minus;
  return r;
}

}  // namespace ds_detail

// Minimum-width double-strip over all orientations. Candidates are the
// per-interval closed-form minimizers; the unbounded first interval's closed
// endpoint covers theta = -pi/2. Ties break toward smaller theta.
inline DoubleStripResult solve_all_orientations(const PointSet& ps) {
  const std::vector<TupleInterval> ivs = tuple_intervals(ps);
  std::optional<IntervalMinimum> best;
  const TupleInterval* best_iv = nullptr;
  for (const TupleInterval& t : ivs) {
    const IntervalMinimum im = minimize_on_interval(ps, t);
    if (!best || im.width < best->width ||
        (im.width == best->width && im.theta < best->theta)) {
      best = im;
      best_iv = &t;
    }
    if (best->width == 0.0) break;  // global lower bound reached
  }
  return ds_detail::witness_at(ps, *best_iv, *best);
}

}  // namespace stripfit
