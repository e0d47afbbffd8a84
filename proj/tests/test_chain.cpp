#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "stripfit/chain.hpp"
#include "stripfit/hull.hpp"

using namespace stripfit;
using testing_sets::sq4;
using testing_sets::sq5;

namespace {

double brute_env(const std::vector<DLine>& ls, double u, bool upper) {
  double v = ls[0].eval(u);
  for (const DLine& l : ls) v = upper ? std::max(v, l.eval(u)) : std::min(v, l.eval(u));
  return v;
}

// reference for Q+/Q-: envelope of line values on one side of M, with the
// U/L fallback where the side is empty
double brute_side(const std::vector<DLine>& tbl, const std::vector<int>& subset,
                  const MidChain& m, const PiecewiseChain& fallback, double u,
                  bool above) {
  const double mval = m.eval(u, tbl);
  bool any = false;
  double best = 0.0;
  for (int id : subset) {
    const double v = tbl[id].eval(u);
    const bool on_side = above ? v > mval + 1e-12 : v < mval - 1e-12;
    if (!on_side) continue;
    if (!any || (above ? v < best : v > best)) best = v;
    any = true;
  }
  if (!any) return chain_eval(fallback, u, tbl);
  return best;
}

}  // namespace

TEST_CASE("envelope of lines vs brute force") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int it = 0; it < 30; ++it) {
    std::vector<DLine> ls;
    const int n = 2 + int(rng() % 10);
    for (int i = 0; i < n; ++i) ls.push_back({c(rng), c(rng), i});
    for (bool upper : {true, false}) {
      const PiecewiseChain env = envelope_of_lines(ls, upper);
      REQUIRE(env.valid());
      for (double u = -5.0; u <= 5.0; u += 0.37) {
        REQUIRE(chain_eval(env, u, ls) ==
                Catch::Approx(brute_env(ls, u, upper)).margin(1e-12));
      }
    }
  }
}

TEST_CASE("envelopes of a 3-point dual family") {
  // duals of {(0,0),(1,0),(0,1)}: v=0, v=u, v=-1
  const PointSet ps = PointSet::from({{0, 0}, {1, 0}, {0, 1}});
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  for (double u : {-3.0, -1.5, -1.0, -0.4, 0.0, 0.7, 2.0}) {
    REQUIRE(chain_eval(U, u, tbl) ==
            Catch::Approx(std::max(0.0, u)).margin(1e-15));  // max(0, u, -1)
    REQUIRE(chain_eval(L, u, tbl) ==
            Catch::Approx(std::min(u, -1.0)).margin(1e-15));  // min(0, u, -1)
  }
  REQUIRE(U.cuts.size() == 1);
  REQUIRE(L.cuts.size() == 1);
  const MidChain M = mid_of_envelopes(U, L);
  REQUIRE(M.cuts.size() == 2);  // vertex set = union of U and L vertices
}

TEST_CASE("single line gives trivial envelopes") {
  const std::vector<DLine> tbl = {{0.5, 1.0, 0}};
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  REQUIRE(U.cuts.empty());
  REQUIRE(L.cuts.empty());
  for (double u : {-2.0, 0.0, 3.0}) {
    REQUIRE(chain_eval(U, u, tbl) == tbl[0].eval(u));
    REQUIRE(chain_eval(L, u, tbl) == tbl[0].eval(u));
    REQUIRE(M.eval(u, tbl) == tbl[0].eval(u));
  }
}

TEST_CASE("envelope breakpoints are the hull edge orientations") {
  const PointSet ps = sq4();
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const AntipodalDecomposition dec = antipodal_decomposition(ps);
  // finite breakpoints of the decomposition are tan(theta) = envelope cuts
  std::vector<double> cuts;
  for (const Breakpoint& b : U.cuts) cuts.push_back(breakpoint_to_double(b));
  for (const Breakpoint& b : L.cuts) cuts.push_back(breakpoint_to_double(b));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> expect;
  for (size_t i = 1; i < dec.intervals.size(); ++i)
    expect.push_back(std::tan(dec.intervals[i].theta_lo));
  REQUIRE(cuts.size() == expect.size());
  for (size_t i = 0; i < cuts.size(); ++i)
    REQUIRE(cuts[i] == Catch::Approx(expect[i]).margin(1e-12));

  // supports: upper envelope from the lower hull chain, and vice versa
  const ConvexHull h = convex_hull(ps);
  for (int id : U.lines)
    REQUIRE(std::find(h.lower.begin(), h.lower.end(), id) != h.lower.end());
  for (int id : L.lines)
    REQUIRE(std::find(h.upper.begin(), h.upper.end(), id) != h.upper.end());
  REQUIRE(U.lines.size() + L.lines.size() <= ps.size() + 2);
}

TEST_CASE("empty subset side chains coincide with the envelopes") {
  const PointSet ps = sq5();
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  const PiecewiseChain qp = build_side_chain({}, M, tbl, true);
  const PiecewiseChain qm = build_side_chain({}, M, tbl, false);
  REQUIRE(qp.lines == std::vector<int>{kGap});
  REQUIRE(qm.lines == std::vector<int>{kGap});
  for (double u : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
    REQUIRE(side_chain_eval(qp, u, tbl, U) == chain_eval(U, u, tbl));
    REQUIRE(side_chain_eval(qm, u, tbl, L) == chain_eval(L, u, tbl));
  }
}

TEST_CASE("one-line side chain is the clipped line completed by the envelope") {
  const PointSet ps = sq4();
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  for (int id = 0; id < int(ps.size()); ++id) {
    const PiecewiseChain qp = build_side_chain({id}, M, tbl, true);
    const PiecewiseChain qm = build_side_chain({id}, M, tbl, false);
    for (double u = -3.0; u <= 3.0; u += 0.173) {
      const double mval = M.eval(u, tbl);
      const double v = tbl[id].eval(u);
      const double want_p = v > mval + 1e-12 ? v : chain_eval(U, u, tbl);
      const double want_m = v <= mval + 1e-12 ? v : chain_eval(L, u, tbl);
      REQUIRE(side_chain_eval(qp, u, tbl, U) == Catch::Approx(want_p).margin(1e-12));
      REQUIRE(side_chain_eval(qm, u, tbl, L) == Catch::Approx(want_m).margin(1e-12));
    }
  }
}

TEST_CASE("SQ5 side chains reproduce the primal inner witnesses") {
  const PointSet ps = sq5();
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  std::vector<int> all = {0, 1, 2, 3, 4};
  const PiecewiseChain qp = build_side_chain(all, M, tbl, true);
  const PiecewiseChain qm = build_side_chain(all, M, tbl, false);
  // the center's dual coincides with M, so the on-mu convention pins the
  // below-side chain to the center over the whole domain
  REQUIRE(qm.lines == std::vector<int>{4});

  // primal sampling oracle at 10^4 angles
  const ConvexHull h = convex_hull(ps);
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const double t = -kHalfPi + kPi * (i + 0.5) / samples;
    const double u = std::tan(t);
    if (std::fabs(u) > 1e6) continue;
    const ExtremeResult er = extreme_points(ps, h, Orientation(t));
    const double m = 0.5 * (er.strip.lo + er.strip.hi);
    // q+ = closest point on/above mu; q- = closest strictly below
    int qplus = -1, qminus = -1;
    for (size_t p = 0; p < ps.size(); ++p) {
      const double hh = normal_offset(ps[p], Orientation(t));
      if (hh >= m && (qplus < 0 ||
                      hh < normal_offset(ps[qplus], Orientation(t))))
        qplus = int(p);
      if (hh < m && (qminus < 0 ||
                     hh > normal_offset(ps[qminus], Orientation(t))))
        qminus = int(p);
    }
    // dual correspondence: Q-(u) is the line through q+, Q+(u) through q-
    if (qplus >= 0)
      REQUIRE(side_chain_eval(qm, u, tbl, L) ==
              Catch::Approx(tbl[qplus].eval(u)).margin(1e-9 * (1 + std::fabs(u))));
    if (qminus >= 0)
      REQUIRE(side_chain_eval(qp, u, tbl, U) ==
              Catch::Approx(tbl[qminus].eval(u)).margin(1e-9 * (1 + std::fabs(u))));
  }
}

TEST_CASE("side chains match the brute-force side envelope on random input") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 20; ++it) {
    const PointSet ps = testing_sets::random_points(rng, 3 + int(rng() % 12));
    const std::vector<DLine> tbl = dual_lines(ps);
    const PiecewiseChain U = envelope_of_lines(tbl, true);
    const PiecewiseChain L = envelope_of_lines(tbl, false);
    const MidChain M = mid_of_envelopes(U, L);
    std::vector<int> subset;
    for (size_t i = 0; i < ps.size(); ++i)
      if (rng() % 2) subset.push_back(int(i));
    const PiecewiseChain qp = build_side_chain(subset, M, tbl, true);
    const PiecewiseChain qm = build_side_chain(subset, M, tbl, false);
    REQUIRE(qp.valid());
    REQUIRE(qm.valid());
    for (double u = -4.0; u <= 4.0; u += 0.21) {
      REQUIRE(side_chain_eval(qp, u, tbl, U) ==
              Catch::Approx(brute_side(tbl, subset, M, U, u, true)).margin(1e-9));
      REQUIRE(side_chain_eval(qm, u, tbl, L) ==
              Catch::Approx(brute_side(tbl, subset, M, L, u, false)).margin(1e-9));
    }
  }
}

TEST_CASE("incremental merges equal the batch build, in any insertion order") {
  std::mt19937_64 rng(67);
  for (int it = 0; it < 20; ++it) {
    const PointSet ps = testing_sets::random_points(rng, 4 + int(rng() % 10));
    const std::vector<DLine> tbl = dual_lines(ps);
    const PiecewiseChain U = envelope_of_lines(tbl, true);
    const PiecewiseChain L = envelope_of_lines(tbl, false);
    const MidChain M = mid_of_envelopes(U, L);
    std::vector<int> subset;
    for (size_t i = 0; i < ps.size(); ++i) subset.push_back(int(i));
    std::shuffle(subset.begin(), subset.end(), rng);

    for (bool above : {true, false}) {
      PiecewiseChain inc;
      inc.lines.assign(1, kGap);
      for (int id : subset)
        inc = merge_side_chains(inc, clip_line_to_side(tbl[id], M, tbl, above),
                                above, tbl);
      std::vector<int> sorted = subset;
      std::sort(sorted.begin(), sorted.end());
      const PiecewiseChain batch = build_side_chain(sorted, M, tbl, above);
      REQUIRE(inc.lines == batch.lines);
      REQUIRE(inc.cuts.size() == batch.cuts.size());
      for (size_t i = 0; i < inc.cuts.size(); ++i)
        REQUIRE(breakpoint_compare(inc.cuts[i], batch.cuts[i]) == 0);
    }
  }
}

TEST_CASE("splice and mask reproduce ranged rebuilds") {
  const PointSet ps = sq5();
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  const PiecewiseChain full = build_side_chain({0, 1, 2, 3, 4}, M, tbl, true);
  // replace the whole axis with itself: a no-op splice
  const PiecewiseChain same = splice_chain(
      full, Breakpoint::neg_inf(), Breakpoint::pos_inf(), full);
  REQUIRE(same.lines == full.lines);
  // masking to an empty-ish window yields all gap
  const PiecewiseChain gap =
      mask_outside(full, Breakpoint::of(100.0), Breakpoint::pos_inf());
  for (double u : {-5.0, 0.0, 5.0})
    REQUIRE(gap.lines[gap.segment_at(u)] == kGap);
}

TEST_CASE("chain diff window brackets the changed region") {
  const PointSet ps = sq5();
  const std::vector<DLine> tbl = dual_lines(ps);
  const PiecewiseChain U = envelope_of_lines(tbl, true);
  const PiecewiseChain L = envelope_of_lines(tbl, false);
  const MidChain M = mid_of_envelopes(U, L);
  const PiecewiseChain a = build_side_chain({0, 1}, M, tbl, true);
  const PiecewiseChain b = build_side_chain({0, 1, 2}, M, tbl, true);
  Breakpoint lo, hi;
  if (chain_diff_window(a, b, lo, hi)) {
    // outside (lo, hi) evaluations agree
    for (double u = -6.0; u <= 6.0; u += 0.11) {
      const bool inside = u > breakpoint_to_double(lo) - 1e-12 &&
                          u < breakpoint_to_double(hi) + 1e-12;
      if (inside) continue;
      REQUIRE(side_chain_eval(a, u, tbl, U) == side_chain_eval(b, u, tbl, U));
    }
  }
  Breakpoint l2, h2;
  REQUIRE(!chain_diff_window(a, a, l2, h2));
}
