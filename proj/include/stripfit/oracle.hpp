#pragma once

// Independent brute-force reference solvers, used by tests and exposed via
// the CLI `oracle` subcommand. They deliberately avoid the chain, trapezoid
// and arrangement machinery: widths are evaluated by direct scans over
// candidate orientations, or over a (theta, phi) grid with local refinement.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "stripfit/geometry.hpp"
#include "stripfit/sinusoid.hpp"

namespace stripfit {

struct OracleReport {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;  // grid oracle only
  enum Method { CandidateEnum, GridRefine, Exhaustive } method = CandidateEnum;
  bool certified = false;
  double tolerance = 0.0;  // grid oracle: stated uncertainty
};

namespace oracle_detail {

constexpr int kDeskBound = 15;

inline void strip_bounds(const PointSet& ps, double theta, double& lo,
                         double& hi) {
  const double s = std::sin(theta), c = std::cos(theta);
  for (size_t i = 0; i < ps.size(); ++i) {
    const double h = -ps[i].x * s + ps[i].y * c;
    if (i == 0) lo = hi = h;
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
}

// w_Q(theta) by direct evaluation: distance to the nearer bounding line of
// the enclosing strip, maximized over the subset.
inline double width_at(const PointSet& ps, const std::vector<int>& subset,
                       double theta) {
  if (subset.empty()) return 0.0;
  double lo = 0.0, hi = 0.0;
  strip_bounds(ps, theta, lo, hi);
  const double s = std::sin(theta), c = std::cos(theta);
  double w = 0.0;
  for (int id : subset) {
    const double h = -ps[id].x * s + ps[id].y * c;
    w = std::max(w, std::min(hi - h, h - lo));
  }
  return w;
}

// Candidate orientations covering the optimality structure: all pair
// orientations (antipodal breakpoints are among them), every root of
// |sigma(p,a)| = |sigma(q,b)|, branch stationary angles, and -pi/2.
inline std::vector<double> candidate_orientations(const PointSet& ps) {
  const size_t n = ps.size();
  std::vector<double> cand;
  cand.push_back(-kHalfPi);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double t = segment_orientation(ps[i], ps[j]);
      cand.push_back(t);
      cand.push_back(normalize_orientation(t + kHalfPi));
    }
  std::vector<Sinusoid> branch;
  std::vector<std::pair<int, int>> who;
  for (size_t p = 0; p < n; ++p)
    for (size_t a = 0; a < n; ++a) {
      if (p == a) continue;
      branch.push_back(Sinusoid::offset_difference(ps[a], ps[p]));
      who.emplace_back(int(p), int(a));
    }
  for (size_t x = 0; x < branch.size(); ++x)
    for (size_t y = x + 1; y < branch.size(); ++y) {
      const EqualRoots d =
          sinusoid_equal_roots(branch[x], branch[y], -kHalfPi, kHalfPi);
      for (double r : d.roots)
        if (r < kHalfPi) cand.push_back(r);
      const EqualRoots s = sinusoid_equal_roots(
          branch[x], sinusoid_negate(branch[y]), -kHalfPi, kHalfPi);
      for (double r : s.roots)
        if (r < kHalfPi) cand.push_back(r);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

}  // namespace oracle_detail

// Certified minimum of w(theta) over all orientations by exhaustive
// candidate enumeration. Desk-scale only.
inline OracleReport oracle_double_strip(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("oracle: empty point set");
  if (int(ps.size()) > oracle_detail::kDeskBound)
    throw std::invalid_argument("oracle_double_strip: n exceeds desk bound");
  std::vector<int> all(ps.size());
  for (size_t i = 0; i < ps.size(); ++i) all[i] = int(i);
  OracleReport r;
  r.method = OracleReport::CandidateEnum;
  r.certified = true;
  bool first = true;
  for (double t : oracle_detail::candidate_orientations(ps)) {
    const double w = oracle_detail::width_at(ps, all, t);
    if (first || w < r.value) {
      r.value = w;
      r.theta = t;
      first = false;
    }
  }
  return r;
}

inline OracleReport oracle_constrained(const PointSet& ps,
                                       const std::vector<int>& subset) {
  if (ps.empty()) throw std::invalid_argument("oracle: empty point set");
  if (int(ps.size()) > oracle_detail::kDeskBound)
    throw std::invalid_argument("oracle_constrained: n exceeds desk bound");
  for (int id : subset)
    if (id < 0 || id >= int(ps.size()))
      throw std::invalid_argument("oracle_constrained: id out of range");
  OracleReport r;
  r.method = OracleReport::CandidateEnum;
  r.certified = true;
  if (subset.empty()) {
    r.theta = -kHalfPi;
    return r;
  }
  bool first = true;
  for (double t : oracle_detail::candidate_orientations(ps)) {
    const double w = oracle_detail::width_at(ps, subset, t);
    if (first || w < r.value) {
      r.value = w;
      r.theta = t;
      first = false;
    }
  }
  return r;
}

// Annulus width for a fixed orientation pair, by direct scan.
inline double oracle_annulus_at(const PointSet& ps, double theta, double phi) {
  double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
  oracle_detail::strip_bounds(ps, theta, lo1, hi1);
  oracle_detail::strip_bounds(ps, phi, lo2, hi2);
  const double s1 = std::sin(theta), c1 = std::cos(theta);
  const double s2 = std::sin(phi), c2 = std::cos(phi);
  double z = 0.0;
  for (size_t i = 0; i < ps.size(); ++i) {
    const double h1 = -ps[i].x * s1 + ps[i].y * c1;
    const double h2 = -ps[i].x * s2 + ps[i].y * c2;
    const double d = std::min(std::min(hi1 - h1, h1 - lo1),
                              std::min(hi2 - h2, h2 - lo2));
    z = std::max(z, d);
  }
  return z;
}

// Approximate free-annulus minimum: exhaustive (theta, phi) grid of the
// exact fixed-pair solver followed by shrinking local refinement.
inline OracleReport oracle_annulus_grid(const PointSet& ps, int resolution = 256,
                                        int refine_iters = 48) {
  if (ps.empty()) throw std::invalid_argument("oracle: empty point set");
  if (resolution < 64)
    throw std::invalid_argument("oracle_annulus_grid: resolution < 64");
  const size_t n = ps.size();
  const int R = resolution;
  std::vector<double> thetas(R);
  for (int i = 0; i < R; ++i) thetas[i] = -kHalfPi + kPi * double(i) / R;
  // d_p table per grid orientation
  std::vector<double> d(size_t(R) * n);
  for (int i = 0; i < R; ++i) {
    double lo = 0.0, hi = 0.0;
    oracle_detail::strip_bounds(ps, thetas[i], lo, hi);
    const double s = std::sin(thetas[i]), c = std::cos(thetas[i]);
    for (size_t p = 0; p < n; ++p) {
      const double h = -ps[p].x * s + ps[p].y * c;
      d[size_t(i) * n + p] = std::min(hi - h, h - lo);
    }
  }
  OracleReport r;
  r.method = OracleReport::GridRefine;
  r.certified = false;
  // best cell per 4x4 block, so refinement seeds stay spatially diverse
  struct Seed {
    double z, theta, phi;
  };
  std::map<std::pair<int, int>, Seed> blocks;
  for (int i = 0; i < R; ++i)
    for (int j = i + 1; j < R; ++j) {
      double z = 0.0;
      const double* di = &d[size_t(i) * n];
      const double* dj = &d[size_t(j) * n];
      for (size_t p = 0; p < n; ++p) z = std::max(z, std::min(di[p], dj[p]));
      const std::pair<int, int> key{i / 4, j / 4};
      auto it = blocks.find(key);
      if (it == blocks.end() || z < it->second.z)
        blocks[key] = Seed{z, thetas[i], thetas[j]};
    }
  std::vector<Seed> seeds;
  seeds.reserve(blocks.size());
  for (const auto& [k, s] : blocks) seeds.push_back(s);
  std::sort(seeds.begin(), seeds.end(),
            [](const Seed& a, const Seed& b) { return a.z < b.z; });
  if (seeds.size() > 48) seeds.resize(48);

  // pattern search per seed: recenter and grow on improvement, else shrink
  bool first = true;
  for (const Seed& s : seeds) {
    double bt = s.theta, bp = s.phi, bz = s.z;
    const double span0 = 4.0 * kPi / R;
    double span = span0;
    const int cap = refine_iters * 10;  // moves + shrinks
    for (int it = 0; it < cap && span > 1e-14; ++it) {
      double nt = bt, np = bp, nz = bz;
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
          if (a == 0 && b == 0) continue;
          const double t = bt + span * a / 2.0;
          const double f = bp + span * b / 2.0;
          const double z = oracle_annulus_at(ps, t, f);
          if (z < nz) {
            nz = z;
            nt = t;
            np = f;
          }
        }
      if (nz < bz) {
        bt = nt;
        bp = np;
        bz = nz;
        span = std::min(span * 1.6, span0);
      } else {
        span *= 0.5;
      }
    }
    if (first || bz < r.value) {
      r.value = bz;
      r.theta = bt;
      r.phi = bp;
      first = false;
    }
  }
  r.tolerance = ps.diameter() * (kPi / R);
  return r;
}

// Independent enumeration of the Gamma-arrangement vertices: true antipodal
// boundaries by argmax probing over refined pair-orientation intervals, then
// per-interval branch kinks and pairwise curve crossings.
struct GammaOracleVertex {
  double theta = 0.0;
  double y = 0.0;
};

inline std::vector<GammaOracleVertex> oracle_gamma_vertices(const PointSet& ps) {
  const size_t n = ps.size();
  if (n < 2) throw std::invalid_argument("oracle_gamma_vertices: need >= 2 points");
  if (int(n) > 12)
    throw std::invalid_argument("oracle_gamma_vertices: n exceeds desk bound");

  // refined boundaries: all pair orientations
  std::vector<double> bounds;
  bounds.push_back(-kHalfPi);
  bounds.push_back(kHalfPi);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      bounds.push_back(segment_orientation(ps[i], ps[j]));
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  if (bounds.front() > -kHalfPi) bounds.insert(bounds.begin(), -kHalfPi);
  if (bounds.back() < kHalfPi) bounds.push_back(kHalfPi);

  auto extremes_at = [&](double theta, int& chip, int& chim) {
    const double s = std::sin(theta), c = std::cos(theta);
    double lo = 0.0, hi = 0.0;
    chip = chim = 0;
    for (size_t i = 0; i < n; ++i) {
      const double h = -ps[i].x * s + ps[i].y * c;
      if (i == 0) {
        lo = hi = h;
        continue;
      }
      if (h > hi) {
        hi = h;
        chip = int(i);
      }
      if (h < lo) {
        lo = h;
        chim = int(i);
      }
    }
  };

  // merge refined intervals into true antipodal intervals
  struct Interval {
    double lo, hi;
    int chip, chim;
  };
  std::vector<Interval> ivs;
  for (size_t k = 0; k + 1 < bounds.size(); ++k) {
    if (!(bounds[k + 1] > bounds[k])) continue;
    int chip, chim;
    extremes_at(0.5 * (bounds[k] + bounds[k + 1]), chip, chim);
    if (!ivs.empty() && ivs.back().chip == chip && ivs.back().chim == chim)
      ivs.back().hi = bounds[k + 1];
    else
      ivs.push_back({bounds[k], bounds[k + 1], chip, chim});
  }

  // per-interval piecewise description of every d_p
  struct Piece {
    double lo, hi;
    Sinusoid s;
  };
  std::vector<std::vector<Piece>> curves(n);
  std::vector<GammaOracleVertex> out;
  for (const Interval& iv : ivs) {
    for (size_t p = 0; p < n; ++p) {
      const Sinusoid plus = Sinusoid::offset_difference(ps[iv.chip], ps[p]);
      const Sinusoid minus = Sinusoid::offset_difference(ps[p], ps[iv.chim]);
      const EqualRoots er = sinusoid_equal_roots(plus, minus, iv.lo, iv.hi);
      std::vector<double> cuts;
      for (double root : er.roots)
        if (root > iv.lo + 1e-15 && root < iv.hi - 1e-15) cuts.push_back(root);
      double lo = iv.lo;
      for (size_t k = 0; k <= cuts.size(); ++k) {
        const double hi = k < cuts.size() ? cuts[k] : iv.hi;
        const double mid = 0.5 * (lo + hi);
        const bool plus_wins = plus.eval(mid) <= minus.eval(mid);
        curves[p].push_back({lo, hi, plus_wins ? plus : minus});
        if (k > 0)  // min-switch breakpoint
          out.push_back({lo, curves[p].back().s.eval(lo)});
        lo = hi;
      }
    }
  }
  // boundary vertices: domain edge plus every true interval boundary
  auto eval_curve = [&](size_t p, double theta) {
    for (const Piece& pc : curves[p])
      if (theta <= pc.hi + 1e-15 && theta >= pc.lo - 1e-15) return pc.s.eval(theta);
    return curves[p].back().s.eval(theta);
  };
  for (size_t p = 0; p < n; ++p) {
    out.push_back({-kHalfPi, eval_curve(p, -kHalfPi)});
    for (size_t k = 1; k < ivs.size(); ++k)
      out.push_back({ivs[k].lo, eval_curve(p, ivs[k].lo)});
  }
  // pairwise crossings per overlapping pure pieces
  for (size_t p = 0; p < n; ++p)
    for (size_t q = p + 1; q < n; ++q)
      for (const Piece& a : curves[p])
        for (const Piece& b : curves[q]) {
          const double lo = std::max(a.lo, b.lo);
          const double hi = std::min(a.hi, b.hi);
          if (!(hi > lo)) continue;
          const EqualRoots er = sinusoid_equal_roots(a.s, b.s, lo, hi);
          if (er.identical) continue;
          for (double root : er.roots) out.push_back({root, a.s.eval(root)});
        }
  return out;
}

}  // namespace stripfit
