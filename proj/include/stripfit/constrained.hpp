#pragma once

// P-constrained double-strips enclosing a subset Q: static solver,
// trapezoidal map over the region between Q+ and Q-, online dynamic
// optimization and decision under insert/delete, and the offline
// insertions-only solver via the backward recurrence.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "stripfit/arrangement.hpp"
#include "stripfit/chain.hpp"
#include "stripfit/double_strip.hpp"
#include "stripfit/geometry.hpp"

namespace stripfit {

struct Trapezoid {
  Breakpoint u_lo = Breakpoint::neg_inf();
  Breakpoint u_hi = Breakpoint::pos_inf();
  int ceil_line = kGap;   // Q+ support: dual of q-
  int floor_line = kGap;  // Q- support: dual of q+
  int chi_plus = -1, chi_minus = -1;
  double theta_lo = -kHalfPi, theta_hi = kHalfPi;
  double width = 0.0;      // w_tau
  double theta_star = 0.0; // its minimizer

  TupleInterval tuple() const {
    TupleInterval t;
    t.u_lo = u_lo;
    t.u_hi = u_hi;
    t.theta_lo = theta_lo;
    t.theta_hi = theta_hi;
    t.chi_plus = chi_plus;
    t.chi_minus = chi_minus;
    t.q_plus = floor_line == kGap ? -1 : floor_line;
    t.q_minus = ceil_line == kGap ? -1 : ceil_line;
    return t;
  }
};

inline bool same_trapezoid(const Trapezoid& a, const Trapezoid& b) {
  return breakpoint_compare(a.u_lo, b.u_lo) == 0 &&
         breakpoint_compare(a.u_hi, b.u_hi) == 0 && a.ceil_line == b.ceil_line &&
         a.floor_line == b.floor_line && a.chi_plus == b.chi_plus &&
         a.chi_minus == b.chi_minus;
}

struct TrapezoidalMap {
  std::vector<Trapezoid> traps;  // contiguous, ascending in u
};

namespace ctr_detail {

// Trapezoids of the window [wlo, whi]: cuts at every chain and M vertex
// inside, each carrying its tuple and the closed-form minimum w_tau.
inline std::vector<Trapezoid> build_trapezoids(
    const PointSet& ps, const PiecewiseChain& qp, const PiecewiseChain& qm,
    const MidChain& m, const Breakpoint& wlo, const Breakpoint& whi) {
  std::vector<Breakpoint> cuts;
  auto add_from = [&](const std::vector<Breakpoint>& src) {
    for (const Breakpoint& b : src)
      if (breakpoint_compare(b, wlo) > 0 && breakpoint_compare(b, whi) < 0)
        cuts.push_back(b);
  };
  add_from(qp.cuts);
  add_from(qm.cuts);
  add_from(m.cuts);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const Breakpoint& a, const Breakpoint& b) {
                           return breakpoint_compare(a, b) == 0;
                         }),
             cuts.end());

  std::vector<Trapezoid> out;
  out.reserve(cuts.size() + 1);
  for (size_t k = 0; k <= cuts.size(); ++k) {
    Trapezoid t;
    t.u_lo = k == 0 ? wlo : cuts[k - 1];
    t.u_hi = k == cuts.size() ? whi : cuts[k];
    t.ceil_line = qp.lines[segment_right_of(qp.cuts, t.u_lo)];
    t.floor_line = qm.lines[segment_right_of(qm.cuts, t.u_lo)];
    const auto& pr = m.pairs[segment_right_of(m.cuts, t.u_lo)];
    t.chi_minus = pr.first;   // U support carries l-(theta)
    t.chi_plus = pr.second;   // L support carries l+(theta)
    t.theta_lo = std::atan(breakpoint_to_double(t.u_lo));
    t.theta_hi = std::atan(breakpoint_to_double(t.u_hi));
    const IntervalMinimum im = minimize_on_interval(ps, t.tuple());
    t.width = im.width;
    t.theta_star = im.theta;
    out.push_back(t);
  }
  return out;
}

inline bool lex_better(double w1, double t1, double w2, double t2) {
  return w1 < w2 || (w1 == w2 && t1 < t2);
}

}  // namespace ctr_detail

// Full trapezoidal map for subset Q (ids into ps).
inline TrapezoidalMap build_trapezoidal_map(const PointSet& ps,
                                            const std::vector<int>& subset) {
  if (ps.empty()) throw std::invalid_argument("empty point set");
  std::vector<int> q = subset;
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  for (int id : q)
    if (id < 0 || id >= int(ps.size()))
      throw std::invalid_argument("subset id out of range");
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  const PiecewiseChain qp = build_side_chain(q, M, tbl, true);
  const PiecewiseChain qm = build_side_chain(q, M, tbl, false);
  TrapezoidalMap map;
  map.traps = ctr_detail::build_trapezoids(ps, qp, qm, M, Breakpoint::neg_inf(),
                                           Breakpoint::pos_inf());
  return map;
}

// Minimum-width P-constrained double-strip enclosing Q, over all
// orientations. Ties break toward smaller theta.
inline DoubleStripResult solve_constrained(const PointSet& ps,
                                           const std::vector<int>& subset) {
  const TrapezoidalMap map = build_trapezoidal_map(ps, subset);
  const Trapezoid* best = nullptr;
  for (const Trapezoid& t : map.traps) {
    if (!best ||
        ctr_detail::lex_better(t.width, t.theta_star, best->width,
                               best->theta_star)) {
      best = &t;
      if (best->width == 0.0) break;
    }
  }
  return ds_detail::witness_at(ps, best->tuple(),
                               IntervalMinimum{best->theta_star, best->width});
}

// Convenience: w_Q(theta) for a fixed orientation, by direct evaluation.
inline double constrained_width_at(const PointSet& ps,
                                   const std::vector<int>& subset,
                                   const Orientation& o) {
  if (subset.empty()) return 0.0;
  const double s = std::sin(o.theta), c = std::cos(o.theta);
  double lo = 0.0, hi = 0.0;
  for (size_t i = 0; i < ps.size(); ++i) {
    const double h = -ps[i].x * s + ps[i].y * c;
    if (i == 0) lo = hi = h;
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  double w = 0.0;
  for (int id : subset) {
    const double h = -ps[id].x * s + ps[id].y * c;
    w = std::max(w, std::min(hi - h, h - lo));
  }
  return w;
}

// Online state: arrangement of the subset's dual lines, the chains Q+/Q-,
// the trapezoidal map keyed by exact u-cuts, and either a priority structure
// over w_tau (optimization mode) or the threshold counter (decision mode).
class DynamicState {
 public:
  struct Update {
    std::vector<Trapezoid> destroyed;
    std::vector<Trapezoid> created;
  };

  explicit DynamicState(PointSet ps, std::optional<double> threshold = {})
      : ps_(std::move(ps)), threshold_(threshold) {
    if (ps_.empty()) throw std::invalid_argument("empty point set");
    tbl_ = dual_lines(ps_);
    U_ = envelope_of_lines(tbl_, true);
    L_ = envelope_of_lines(tbl_, false);
    M_ = mid_of_envelopes(U_, L_);
    qp_.lines.assign(1, kGap);
    qm_.lines.assign(1, kGap);
    member_.assign(ps_.size(), 0);
    arr_id_.assign(ps_.size(), -1);
    rebuild_window(Breakpoint::neg_inf(), Breakpoint::pos_inf(), nullptr);
  }

  const PointSet& points() const { return ps_; }
  bool decision_mode() const { return threshold_.has_value(); }
  double threshold() const { return *threshold_; }
  bool contains(int p) const { return member_[p] != 0; }
  std::vector<int> subset() const {
    std::vector<int> q;
    for (size_t i = 0; i < member_.size(); ++i)
      if (member_[i]) q.push_back(int(i));
    return q;
  }
  TrapezoidalMap map() const {
    TrapezoidalMap m;
    m.traps.reserve(order_.size());
    for (int s : order_) m.traps.push_back(slots_[s]);
    return m;
  }
  const DualArrangement& arrangement() const { return arr_; }
  const PiecewiseChain& q_plus_chain() const { return qp_; }
  const PiecewiseChain& q_minus_chain() const { return qm_; }

  Update insert(int p) {
    check_id(p);
    if (member_[p]) throw std::invalid_argument("insert: point already in subset");
    arr_id_[p] = arr_.insert_line(ps_[p].x, ps_[p].y);
    member_[p] = 1;
    PiecewiseChain np =
        merge_side_chains(qp_, clip_line_to_side(tbl_[p], M_, tbl_, true), true, tbl_);
    PiecewiseChain nm =
        merge_side_chains(qm_, clip_line_to_side(tbl_[p], M_, tbl_, false), false,
                          tbl_);
    return apply_chains(std::move(np), std::move(nm));
  }

  Update erase(int p) {
    check_id(p);
    if (!member_[p]) throw std::invalid_argument("erase: point not in subset");
    arr_.delete_line(arr_id_[p]);
    arr_id_[p] = -1;
    member_[p] = 0;
    std::vector<int> rest = subset();
    PiecewiseChain np = rebuild_without(qp_, p, rest, true);
    PiecewiseChain nm = rebuild_without(qm_, p, rest, false);
    return apply_chains(std::move(np), std::move(nm));
  }

  // Optimization mode: the trapezoid of minimum (w, theta*, u) and its
  // witness double-strip.
  DoubleStripResult query_min() const {
    if (decision_mode())
      throw std::logic_error("query_min unavailable in decision mode");
    const HeapKey k = *heap_.begin();
    const Trapezoid& t = slots_[k.slot];
    return ds_detail::witness_at(ps_, t.tuple(),
                                 IntervalMinimum{t.theta_star, t.width});
  }

  // Decision mode: is threshold >= w*_Q, via the counter of trapezoids with
  // w_tau <= threshold.
  bool decision_query() const {
    if (!decision_mode())
      throw std::logic_error("decision_query requires a threshold");
    return counter_ > 0;
  }

 private:
  struct HeapKey {
    double w;
    double theta;
    double ulo;
    int slot;
    bool operator<(const HeapKey& o) const {
      if (w != o.w) return w < o.w;
      if (theta != o.theta) return theta < o.theta;
      if (ulo != o.ulo) return ulo < o.ulo;
      return slot < o.slot;
    }
  };

  PointSet ps_;
  std::optional<double> threshold_;
  std::vector<DLine> tbl_;
  PiecewiseChain U_, L_;
  MidChain M_;
  PiecewiseChain qp_, qm_;
  std::vector<char> member_;
  std::vector<int> arr_id_;
  DualArrangement arr_;

  std::vector<Trapezoid> slots_;
  std::vector<int> free_slots_;
  std::vector<int> order_;  // slot ids ascending in u
  std::multiset<HeapKey> heap_;
  std::vector<std::multiset<HeapKey>::iterator> handles_;
  long counter_ = 0;

  void check_id(int p) const {
    if (p < 0 || p >= int(ps_.size()))
      throw std::invalid_argument("point id out of range");
  }

  Update apply_chains(PiecewiseChain np, PiecewiseChain nm) {
    Breakpoint lo = Breakpoint::pos_inf(), hi = Breakpoint::neg_inf();
    Breakpoint l1, h1;
    bool changed = false;
    if (chain_diff_window(qp_, np, l1, h1)) {
      changed = true;
      lo = l1;
      hi = h1;
    }
    if (chain_diff_window(qm_, nm, l1, h1)) {
      if (!changed || breakpoint_compare(l1, lo) < 0) lo = l1;
      if (!changed || breakpoint_compare(h1, hi) > 0) hi = h1;
      changed = true;
    }
    qp_ = std::move(np);
    qm_ = std::move(nm);
    Update upd;
    if (changed) rebuild_window(lo, hi, &upd);
    return upd;
  }

  // Rebuild the zone rebuild of a deletion: stretches of the chain supported
  // by the removed line are re-enveloped over the remaining subset.
  PiecewiseChain rebuild_without(const PiecewiseChain& chain, int p,
                                 const std::vector<int>& rest, bool above) {
    PiecewiseChain out = chain;
    // process support runs right-to-left so earlier indices stay valid
    int k = int(out.lines.size()) - 1;
    while (k >= 0) {
      if (out.lines[k] != p) {
        --k;
        continue;
      }
      int k0 = k;
      while (k0 > 0 && out.lines[k0 - 1] == p) --k0;
      const Breakpoint blo =
          k0 == 0 ? Breakpoint::neg_inf() : out.cuts[k0 - 1];
      const Breakpoint bhi = k + 1 == int(out.lines.size())
                                 ? Breakpoint::pos_inf()
                                 : out.cuts[k];
      const PiecewiseChain repl =
          build_side_chain_ranged(rest, M_, tbl_, above, blo, bhi);
      out = splice_chain(out, blo, bhi, repl);
      k = k0 - 1;
    }
    return out;
  }

  int alloc_slot(const Trapezoid& t) {
    int s;
    if (!free_slots_.empty()) {
      s = free_slots_.back();
      free_slots_.pop_back();
      slots_[s] = t;
    } else {
      s = int(slots_.size());
      slots_.push_back(t);
      handles_.emplace_back();
    }
    return s;
  }

  void add_trap(int slot) {
    const Trapezoid& t = slots_[slot];
    if (decision_mode()) {
      if (t.width <= *threshold_) ++counter_;
    } else {
      handles_[slot] = heap_.insert(
          HeapKey{t.width, t.theta_star, breakpoint_to_double(t.u_lo), slot});
    }
  }

  void drop_trap(int slot) {
    const Trapezoid& t = slots_[slot];
    if (decision_mode()) {
      if (t.width <= *threshold_) --counter_;
    } else {
      heap_.erase(handles_[slot]);
    }
    free_slots_.push_back(slot);
  }

  void rebuild_window(const Breakpoint& wlo, const Breakpoint& whi, Update* upd) {
    // victims: trapezoids overlapping the open window
    size_t first = 0, last = order_.size();
    {
      size_t lo = 0, hi = order_.size();
      while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (breakpoint_compare(slots_[order_[mid]].u_hi, wlo) <= 0)
          lo = mid + 1;
        else
          hi = mid;
      }
      first = lo;
      lo = first;
      hi = order_.size();
      while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (breakpoint_compare(slots_[order_[mid]].u_lo, whi) < 0)
          lo = mid + 1;
        else
          hi = mid;
      }
      last = lo;
    }
    Breakpoint span_lo = wlo, span_hi = whi;
    if (first < last) {
      span_lo = slots_[order_[first]].u_lo;
      span_hi = slots_[order_[last - 1]].u_hi;
    } else if (order_.empty()) {
      span_lo = Breakpoint::neg_inf();
      span_hi = Breakpoint::pos_inf();
    } else {
      return;  // window between two cuts: nothing overlaps
    }

    std::vector<Trapezoid> destroyed;
    for (size_t i = first; i < last; ++i) {
      destroyed.push_back(slots_[order_[i]]);
      drop_trap(order_[i]);
    }
    std::vector<Trapezoid> created =
        ctr_detail::build_trapezoids(ps_, qp_, qm_, M_, span_lo, span_hi);
    std::vector<int> new_slots;
    new_slots.reserve(created.size());
    for (const Trapezoid& t : created) {
      const int s = alloc_slot(t);
      add_trap(s);
      new_slots.push_back(s);
    }
    order_.erase(order_.begin() + first, order_.begin() + last);
    order_.insert(order_.begin() + first, new_slots.begin(), new_slots.end());

    if (upd) {
      // report the symmetric difference only
      std::vector<char> dead_used(destroyed.size(), 0);
      for (const Trapezoid& c : created) {
        bool matched = false;
        for (size_t i = 0; i < destroyed.size() && !matched; ++i)
          if (!dead_used[i] && same_trapezoid(destroyed[i], c)) {
            dead_used[i] = 1;
            matched = true;
          }
        if (!matched) upd->created.push_back(c);
      }
      for (size_t i = 0; i < destroyed.size(); ++i)
        if (!dead_used[i]) upd->destroyed.push_back(destroyed[i]);
    }
  }
};

// Offline insertions-only solver: forward insertions record the destroyed
// trapezoid sets T_i; the backward pass applies
// w*_{Q_i} = min{w*_{Q_{i+1}}, min_{tau in T_i} w_tau}.
inline std::vector<DoubleStripResult> offline_insertions(
    const PointSet& ps, const std::vector<int>& sequence) {
  {
    std::set<int> seen;
    for (int p : sequence)
      if (!seen.insert(p).second)
        throw std::invalid_argument("offline_insertions: duplicate insertion");
  }
  DynamicState st(ps);
  std::vector<std::vector<Trapezoid>> destroyed;
  destroyed.reserve(sequence.size());
  for (int p : sequence) destroyed.push_back(st.insert(p).destroyed);

  const size_t k = sequence.size();
  std::vector<DoubleStripResult> out(k + 1);
  out[k] = st.query_min();
  for (size_t i = k; i-- > 0;) {
    const Trapezoid* best = nullptr;
    for (const Trapezoid& t : destroyed[i])
      if (!best ||
          ctr_detail::lex_better(t.width, t.theta_star, best->width,
                                 best->theta_star))
        best = &t;
    if (best && ctr_detail::lex_better(best->width, best->theta_star,
                                       out[i + 1].width, out[i + 1].theta)) {
      out[i] = ds_detail::witness_at(
          ps, best->tuple(), IntervalMinimum{best->theta_star, best->width});
    } else {
      out[i] = out[i + 1];
    }
  }
  return out;
}

}  // namespace stripfit
