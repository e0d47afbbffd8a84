#pragma once

// Dual-plane chains: the envelopes U and L of the dual line set, the
// midpoint chain M, and the subset chains Q+/Q- (lower/upper envelopes of
// line portions cut by M). Breakpoints are exact quotients, so chain
// topology is exact; evaluation is plain double arithmetic.

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "stripfit/expansion.hpp"
#include "stripfit/geometry.hpp"

namespace stripfit {

struct DLine {
  double a = 0.0;  // slope  (primal x)
  double b = 0.0;  // offset (primal y): v = a*u - b
  int id = -1;

  double eval(double u) const { return a * u - b; }
};

inline std::vector<DLine> dual_lines(const PointSet& ps) {
  std::vector<DLine> ls(ps.size());
  for (size_t i = 0; i < ps.size(); ++i) ls[i] = DLine{ps[i].x, ps[i].y, int(i)};
  return ls;
}

// Crossing abscissa of two non-parallel dual lines, built canonically
// (id-ordered) so equal crossings always yield identical expansions.
inline ExactQ crossing_u(const DLine& x, const DLine& y) {
  const DLine& i = x.id <= y.id ? x : y;
  const DLine& j = x.id <= y.id ? y : x;
  assert(i.a != j.a);
  return ExactQ::ratio(expansion_from(i.b, -j.b), expansion_from(i.a, -j.a));
}

constexpr int kGap = -1;

// Piecewise-linear chain over the whole u-axis: cuts.size()+1 segments,
// segment k supported by lines[k] (kGap marks fallback stretches of Q+/Q-).
struct PiecewiseChain {
  std::vector<Breakpoint> cuts;  // strictly increasing, finite
  std::vector<int> lines;

  size_t segments() const { return lines.size(); }
  size_t segment_at(double u) const {
    size_t lo = 0, hi = cuts.size();
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (breakpoint_to_double(cuts[mid]) <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }
  bool valid() const {
    if (lines.size() != cuts.size() + 1) return false;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
      if (!(cuts[i] < cuts[i + 1])) return false;
    for (size_t i = 0; i + 1 < lines.size(); ++i)
      if (lines[i] == lines[i + 1]) return false;  // canonical: merged runs
    return true;
  }
};

// Upper (max) or lower (min) envelope of full lines, exact. Supports are the
// line ids; for duals of P the upper envelope's supports are the lower hull
// chain and vice versa.
inline PiecewiseChain envelope_of_lines(std::vector<DLine> ls, bool upper) {
  if (ls.empty()) throw std::invalid_argument("envelope of empty line set");
  std::sort(ls.begin(), ls.end(), [](const DLine& x, const DLine& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b != y.b ? x.b < y.b : x.id < y.id;
  });
  // One winner per slope class: max v wants min b, min v wants max b.
  std::vector<DLine> distinct;
  for (const DLine& l : ls) {
    if (!distinct.empty() && distinct.back().a == l.a) {
      if (upper) {
        if (l.b < distinct.back().b) distinct.back() = l;
      } else {
        if (l.b > distinct.back().b) distinct.back() = l;
      }
      continue;
    }
    distinct.push_back(l);
  }
  if (!upper) std::reverse(distinct.begin(), distinct.end());  // slopes desc

  // Stack construction; env[i] vs env[i+1] cross at increasing u.
  std::vector<DLine> env;
  std::vector<Breakpoint> cuts;
  for (const DLine& l : distinct) {
    while (!env.empty()) {
      if (env.size() == 1) {
        const ExactQ u = crossing_u(env.back(), l);
        cuts.assign(1, Breakpoint::finite(u));
        break;
      }
      const ExactQ u = crossing_u(env.back(), l);
      if (breakpoint_compare(Breakpoint::finite(u), cuts.back()) > 0) {
        cuts.push_back(Breakpoint::finite(u));
        break;
      }
      env.pop_back();
      cuts.pop_back();
    }
    env.push_back(l);
  }
  PiecewiseChain c;
  c.cuts = std::move(cuts);
  for (const DLine& l : env) c.lines.push_back(l.id);
  if (c.cuts.size() + 1 != c.lines.size())
    c.cuts.clear();  // single-line envelope
  return c;
}

inline double chain_eval(const PiecewiseChain& c, double u,
                         const std::vector<DLine>& tbl) {
  const int id = c.lines[c.segment_at(u)];
  assert(id != kGap);
  return tbl[id].eval(u);
}

// Midpoint chain M(u) = (U(u) + L(u)) / 2; segment k carries the supporting
// pair (U line, L line) and its vertex set is the union of U and L vertices.
struct MidChain {
  std::vector<Breakpoint> cuts;
  std::vector<std::pair<int, int>> pairs;  // (upper-envelope id, lower-envelope id)

  size_t segments() const { return pairs.size(); }
  size_t segment_at(double u) const {
    size_t lo = 0, hi = cuts.size();
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (breakpoint_to_double(cuts[mid]) <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }
  double eval(double u, const std::vector<DLine>& tbl) const {
    const auto [up, lo] = pairs[segment_at(u)];
    return 0.5 * (tbl[up].eval(u) + tbl[lo].eval(u));
  }
};

inline MidChain mid_of_envelopes(const PiecewiseChain& U, const PiecewiseChain& L) {
  MidChain m;
  size_t iu = 0, il = 0;
  while (true) {
    m.pairs.emplace_back(U.lines[iu], L.lines[il]);
    const bool u_has = iu < U.cuts.size();
    const bool l_has = il < L.cuts.size();
    if (!u_has && !l_has) break;
    int take;  // -1: U cut, +1: L cut, 0: both (equal)
    if (u_has && l_has)
      take = breakpoint_compare(U.cuts[iu], L.cuts[il]);
    else
      take = u_has ? -1 : 1;
    if (take <= 0) m.cuts.push_back(U.cuts[iu]);
    else m.cuts.push_back(L.cuts[il]);
    if (take <= 0) ++iu;
    if (take >= 0) ++il;
  }
  return m;
}

namespace chain_detail {

// Coefficients of 2*(r(u) - M_seg(u)) = C*u - D over one M segment.
inline void line_vs_mseg(const DLine& r, const DLine& up, const DLine& lo,
                         Expansion& C, Expansion& D) {
  C = grow_expansion(grow_expansion(expansion_from(2.0 * r.a), -up.a), -lo.a);
  D = grow_expansion(grow_expansion(expansion_from(2.0 * r.b), -up.b), -lo.b);
}

struct ChainWriter {
  PiecewiseChain c;
  void emit(int support, const Breakpoint& next_cut, bool last) {
    if (!c.lines.empty() && c.lines.back() == support) {
      if (!last)
        c.cuts.back() = next_cut;
      else if (c.cuts.size() == c.lines.size())
        c.cuts.pop_back();  // final stretch merges into the previous segment
      return;
    }
    c.lines.push_back(support);
    if (!last) c.cuts.push_back(next_cut);
  }
  // emit() stores a provisional trailing cut for every non-final segment;
  // call with last=true for the final stretch.
  PiecewiseChain take() { return std::move(c); }
};

}  // namespace chain_detail

// Portions of a single line on one side of M, as a chain with gaps. Side
// convention matches the primal rule that points on the middle line belong
// to the upper subset: the below-side chain is closed (includes stretches
// where the line coincides with M), the above side is open.
inline PiecewiseChain clip_line_to_side(const DLine& r, const MidChain& m,
                                        const std::vector<DLine>& tbl, bool above) {
  chain_detail::ChainWriter w;
  const size_t n = m.segments();
  for (size_t k = 0; k < n; ++k) {
    const Breakpoint lo = k == 0 ? Breakpoint::neg_inf() : m.cuts[k - 1];
    const Breakpoint hi = k + 1 < n ? m.cuts[k] : Breakpoint::pos_inf();
    Expansion C, D;
    chain_detail::line_vs_mseg(r, tbl[m.pairs[k].first], tbl[m.pairs[k].second], C, D);
    const int sc = expansion_sign(C);
    auto include = [&](int sign) {
      return above ? sign > 0 : sign <= 0;
    };
    const bool last = k + 1 == n;
    if (sc == 0) {
      const int s = -expansion_sign(D);  // constant sign of r - M on segment
      w.emit(include(s) ? r.id : kGap, hi, last);
      continue;
    }
    const ExactQ ustar = ExactQ::ratio(D, C);
    const Breakpoint bstar = Breakpoint::finite(ustar);
    if (breakpoint_compare(bstar, lo) <= 0) {
      w.emit(include(sc) ? r.id : kGap, hi, last);  // right regime throughout
    } else if (breakpoint_compare(bstar, hi) >= 0) {
      w.emit(include(-sc) ? r.id : kGap, hi, last);  // left regime throughout
    } else {
      w.emit(include(-sc) ? r.id : kGap, bstar, false);
      w.emit(include(sc) ? r.id : kGap, hi, last);
    }
  }
  return w.take();
}

// Pointwise min (lower envelope, for Q+) or max (upper envelope, for Q-) of
// two side chains. Gaps lose against any line: line values never exceed U
// nor fall below L, so the fallback stretch is dominated either way.
inline PiecewiseChain merge_side_chains(const PiecewiseChain& A,
                                        const PiecewiseChain& B, bool min_merge,
                                        const std::vector<DLine>& tbl) {
  chain_detail::ChainWriter w;
  size_t ia = 0, ib = 0;
  Breakpoint cur = Breakpoint::neg_inf();
  while (true) {
    const bool a_last = ia == A.cuts.size();
    const bool b_last = ib == B.cuts.size();
    const Breakpoint enda = a_last ? Breakpoint::pos_inf() : A.cuts[ia];
    const Breakpoint endb = b_last ? Breakpoint::pos_inf() : B.cuts[ib];
    const int c = breakpoint_compare(enda, endb);
    const Breakpoint next = c <= 0 ? enda : endb;
    const bool last = a_last && b_last;

    const int sa = A.lines[ia], sb = B.lines[ib];
    if (sa == kGap && sb == kGap) {
      w.emit(kGap, next, last);
    } else if (sa == kGap || sb == kGap) {
      w.emit(sa == kGap ? sb : sa, next, last);
    } else {
      const DLine& la = tbl[sa];
      const DLine& lb = tbl[sb];
      if (la.a == lb.a) {
        assert(la.b != lb.b && "duplicate dual lines must be merged upstream");
        const bool a_wins = min_merge ? la.b > lb.b : la.b < lb.b;
        w.emit(a_wins ? sa : sb, next, last);
      } else {
        // right of the crossing the smaller slope is lower
        const int right_winner = (min_merge == (la.a < lb.a)) ? sa : sb;
        const int left_winner = right_winner == sa ? sb : sa;
        const Breakpoint bstar = Breakpoint::finite(crossing_u(la, lb));
        if (breakpoint_compare(bstar, cur) <= 0) {
          w.emit(right_winner, next, last);
        } else if (breakpoint_compare(bstar, next) >= 0) {
          w.emit(left_winner, next, last);
        } else {
          w.emit(left_winner, bstar, false);
          w.emit(right_winner, next, last);
        }
      }
    }
    if (last) break;
    cur = next;
    if (c <= 0) ++ia;
    if (c >= 0) ++ib;
  }
  return w.take();
}

// Q+ (above=true, lower envelope) or Q- (above=false, upper envelope) of the
// given subset of dual lines relative to M, divide-and-conquer.
inline PiecewiseChain build_side_chain(const std::vector<int>& subset,
                                       const MidChain& m,
                                       const std::vector<DLine>& tbl, bool above) {
  if (subset.empty()) {
    PiecewiseChain c;
    c.lines.push_back(kGap);
    return c;
  }
  if (subset.size() == 1) return clip_line_to_side(tbl[subset[0]], m, tbl, above);
  const size_t half = subset.size() / 2;
  const std::vector<int> lo(subset.begin(), subset.begin() + half);
  const std::vector<int> hi(subset.begin() + half, subset.end());
  return merge_side_chains(build_side_chain(lo, m, tbl, above),
                           build_side_chain(hi, m, tbl, above), above, tbl);
}

inline PiecewiseChain mask_outside(const PiecewiseChain& c, const Breakpoint& blo,
                                   const Breakpoint& bhi);

// Ranged variant used by deletion zone rebuilds: only [blo, bhi] matters,
// everything outside is emitted as gap.
inline PiecewiseChain build_side_chain_ranged(const std::vector<int>& subset,
                                              const MidChain& m,
                                              const std::vector<DLine>& tbl,
                                              bool above, const Breakpoint& blo,
                                              const Breakpoint& bhi) {
  if (subset.empty()) {
    PiecewiseChain c;
    c.lines.push_back(kGap);
    return c;
  }
  if (subset.size() == 1)
    return mask_outside(clip_line_to_side(tbl[subset[0]], m, tbl, above), blo, bhi);
  const size_t half = subset.size() / 2;
  const std::vector<int> lo(subset.begin(), subset.begin() + half);
  const std::vector<int> hi(subset.begin() + half, subset.end());
  return merge_side_chains(build_side_chain_ranged(lo, m, tbl, above, blo, bhi),
                           build_side_chain_ranged(hi, m, tbl, above, blo, bhi),
                           above, tbl);
}

// Evaluate a side chain; gaps fall back to the envelope (U for Q+, L for Q-).
inline double side_chain_eval(const PiecewiseChain& c, double u,
                              const std::vector<DLine>& tbl,
                              const PiecewiseChain& fallback) {
  const int id = c.lines[c.segment_at(u)];
  if (id != kGap) return tbl[id].eval(u);
  return chain_eval(fallback, u, tbl);
}

// Number of cuts <= b, i.e. the segment index valid just right of b.
inline size_t segment_right_of(const std::vector<Breakpoint>& cuts,
                               const Breakpoint& b) {
  size_t lo = 0, hi = cuts.size();
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (breakpoint_compare(cuts[mid], b) <= 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

// Replace supports outside [blo, bhi] with gaps, splitting at the window
// boundaries. Used to restrict rebuilt envelope pieces to a deletion zone.
inline PiecewiseChain mask_outside(const PiecewiseChain& c, const Breakpoint& blo,
                                   const Breakpoint& bhi) {
  chain_detail::ChainWriter w;
  const size_t n = c.lines.size();
  for (size_t k = 0; k < n; ++k) {
    const Breakpoint slo = k == 0 ? Breakpoint::neg_inf() : c.cuts[k - 1];
    const Breakpoint shi = k + 1 < n ? c.cuts[k] : Breakpoint::pos_inf();
    const bool last = k + 1 == n;
    if (c.lines[k] == kGap) {
      w.emit(kGap, shi, last);
      continue;
    }
    // portions of [slo, shi] before blo / inside / after bhi
    Breakpoint a = slo, b = shi;
    if (breakpoint_compare(blo, a) > 0) {
      if (breakpoint_compare(blo, b) >= 0) {
        w.emit(kGap, shi, last);
        continue;
      }
      w.emit(kGap, blo, false);
      a = blo;
    }
    if (breakpoint_compare(bhi, b) < 0) {
      if (breakpoint_compare(bhi, a) <= 0) {
        w.emit(kGap, shi, last);
        continue;
      }
      w.emit(c.lines[k], bhi, false);
      w.emit(kGap, shi, last);
      continue;
    }
    w.emit(c.lines[k], shi, last);
  }
  return w.take();
}

// base outside [blo, bhi], repl inside, canonically merged.
inline PiecewiseChain splice_chain(const PiecewiseChain& base, const Breakpoint& blo,
                                   const Breakpoint& bhi, const PiecewiseChain& repl) {
  chain_detail::ChainWriter w;
  auto copy_range = [&](const PiecewiseChain& c, const Breakpoint& a,
                        const Breakpoint& b) {
    if (breakpoint_compare(a, b) >= 0) return;
    const size_t n = c.lines.size();
    size_t k = segment_right_of(c.cuts, a);
    for (; k < n; ++k) {
      const Breakpoint shi = k + 1 < n ? c.cuts[k] : Breakpoint::pos_inf();
      const Breakpoint upto = breakpoint_compare(shi, b) < 0 ? shi : b;
      const bool last = breakpoint_compare(upto, Breakpoint::pos_inf()) == 0;
      w.emit(c.lines[k], upto, last);
      if (breakpoint_compare(shi, b) >= 0) break;
    }
  };
  copy_range(base, Breakpoint::neg_inf(), blo);
  copy_range(repl, blo, bhi);
  copy_range(base, bhi, Breakpoint::pos_inf());
  PiecewiseChain out = w.take();
  return out;
}

// u-window outside of which two canonical chains agree; false when identical.
// Outside the open window (lo, hi) both chains have the same segments, so
// trapezoids not overlapping it survive a chain update untouched.
inline bool chain_diff_window(const PiecewiseChain& a, const PiecewiseChain& b,
                              Breakpoint& lo, Breakpoint& hi) {
  const size_t na = a.lines.size(), nb = b.lines.size();
  if (na == nb && a.lines == b.lines) {
    bool same = true;
    for (size_t i = 0; i < a.cuts.size() && same; ++i)
      same = a.cuts[i] == b.cuts[i];
    if (same) return false;
  }
  // Longest common prefix of (segment, trailing cut) pairs.
  size_t p = 0;
  while (p < na && p < nb && a.lines[p] == b.lines[p]) {
    if (p >= a.cuts.size() || p >= b.cuts.size()) break;
    if (!(a.cuts[p] == b.cuts[p])) break;
    ++p;
  }
  // Longest common suffix, kept clear of the prefix.
  size_t s = 0;
  while (s < na && s < nb && na - 1 - s >= p && nb - 1 - s >= p) {
    if (a.lines[na - 1 - s] != b.lines[nb - 1 - s]) break;
    if (s > 0 && !(a.cuts[na - 1 - s] == b.cuts[nb - 1 - s])) break;
    ++s;
    if (na - s == p || nb - s == p) break;
  }
  lo = p == 0 ? Breakpoint::neg_inf() : a.cuts[p - 1];
  if (s == 0) {
    hi = Breakpoint::pos_inf();
  } else {
    // Chains agree on the matched suffix only from the later of the two
    // boundary cuts onward; a fully-matched chain contributes no boundary.
    bool have = false;
    if (s < na) {
      hi = a.cuts[na - 1 - s];
      have = true;
    }
    if (s < nb) {
      const Breakpoint hb = b.cuts[nb - 1 - s];
      if (!have || breakpoint_compare(hb, hi) > 0) hi = hb;
      have = true;
    }
    if (!have) hi = lo;  // both chains matched entirely: no real window
  }
  return true;
}

}  // namespace stripfit
