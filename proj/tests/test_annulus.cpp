#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "stripfit/annulus.hpp"
#include "stripfit/oracle.hpp"

using namespace stripfit;
using testing_sets::sq4;
using testing_sets::sq5;
using testing_sets::tri3;

namespace {

PointSet square_boundary8() {
  return PointSet::from({{0, 0}, {0.5, 0}, {1, 0}, {1, 0.5},
                         {1, 1}, {0.5, 1}, {0, 1}, {0, 0.5}});
}

}  // namespace

TEST_CASE("fixed-fixed annulus on the named examples") {
  SECTION("8 points on the unit square boundary: width 0") {
    const AnnulusResult r =
        solve_fixed_fixed(square_boundary8(), Orientation(0.0), Orientation(-kHalfPi));
    REQUIRE(r.width == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("SQ5 axis-aligned: width 0.5") {
    const AnnulusResult r =
        solve_fixed_fixed(sq5(), Orientation(0.0), Orientation(-kHalfPi));
    REQUIRE(r.width == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(r.witness_point == 4);
  }
  SECTION("square plus an off-center boundary-near point: width 0.25") {
    // four-term minimum per point; (0.25, 0.5) is nearest to the side x=0
    const PointSet ps = PointSet::from({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.25, 0.5}});
    const AnnulusResult r =
        solve_fixed_fixed(ps, Orientation(0.0), Orientation(-kHalfPi));
    double want = 0.0;
    for (const Point& p : ps.pts)
      want = std::max(want, std::min(std::min(1.0 - p.y, p.y),
                                     std::min(1.0 - p.x, p.x)));
    REQUIRE(want == 0.25);
    REQUIRE(r.width == Catch::Approx(0.25).margin(1e-12));
  }
  SECTION("equal orientations are rejected") {
    REQUIRE_THROWS_AS(solve_fixed_fixed(sq5(), Orientation(0.3), Orientation(0.3)),
                      std::invalid_argument);
  }
  SECTION("the returned annulus encloses all points") {
    std::mt19937_64 rng(151);
    for (int it = 0; it < 20; ++it) {
      const PointSet ps = testing_sets::random_points(rng, 3 + int(rng() % 10));
      const AnnulusResult r =
          solve_fixed_fixed(ps, Orientation(0.4), Orientation(-0.9));
      for (const Point& p : ps.pts) REQUIRE(r.annulus.contains(p, 1e-9));
      REQUIRE(r.annulus.width() <= r.width + 1e-9);
    }
  }
}

TEST_CASE("fixed-phi annulus") {
  SECTION("named values") {
    REQUIRE(solve_fixed_phi(sq4(), Orientation(0.0)).width ==
            Catch::Approx(0.0).margin(1e-12));
    REQUIRE(solve_fixed_phi(sq5(), Orientation(0.0)).width ==
            Catch::Approx(0.5).margin(1e-12));
  }
  SECTION("matches the brute-force prefix enumeration") {
    std::mt19937_64 rng(157);
    for (int it = 0; it < 10; ++it) {
      const PointSet ps = testing_sets::random_points(rng, 10);
      const Orientation phi(kPi / 6.0);
      const AnnulusResult r = solve_fixed_phi(ps, phi);
      const ExtremeResult er = extreme_points(ps, phi);
      std::vector<int> order(ps.size());
      std::vector<double> dv(ps.size());
      for (size_t i = 0; i < ps.size(); ++i) {
        order[i] = int(i);
        dv[i] = distance_at(ps, er, int(i), phi);
      }
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return dv[a] != dv[b] ? dv[a] > dv[b] : a < b;
      });
      double best = 1e300;
      for (size_t j = 0; j < ps.size(); ++j) {
        const std::vector<int> q(order.begin(), order.begin() + j);
        best = std::min(
            best, std::max(dv[order[j]], oracle_constrained(ps, q).value));
      }
      REQUIRE(r.width == Catch::Approx(best).margin(1e-9));
      for (const Point& p : ps.pts) REQUIRE(r.annulus.contains(p, 1e-9));
      REQUIRE(r.phi == phi.theta);
      REQUIRE(r.theta != r.phi);
    }
  }
}

TEST_CASE("gamma arrangement construction") {
  SECTION("two points degenerate to zero curves") {
    const GammaArrangement g = build_gamma(PointSet::from({{0, 0}, {2, 1}}));
    REQUIRE(g.degenerate);
    REQUIRE(g.candidate_widths == std::vector<double>{0.0});
  }
  SECTION("crossings satisfy the residual bound") {
    const GammaArrangement g = build_gamma(sq5());
    REQUIRE(!g.degenerate);
    size_t crossings = 0;
    for (const auto& v : g.vertices) {
      if (v.q < 0) continue;
      ++crossings;
      REQUIRE(std::fabs(g.curves[v.p].eval(v.theta) -
                        g.curves[v.q].eval(v.theta)) < 1e-10);
      REQUIRE(v.y >= -1e-12);
    }
    REQUIRE(crossings > 0);
  }
  SECTION("vertex multiset matches the oracle enumeration") {
    for (const PointSet& ps : {tri3(), sq5()}) {
      const GammaArrangement g = build_gamma(ps);
      const std::vector<GammaOracleVertex> ov = oracle_gamma_vertices(ps);
      auto key = [](double theta, double y) {
        return std::pair<double, double>(theta, y);
      };
      std::vector<std::pair<double, double>> a, b;
      for (const auto& v : g.vertices) a.push_back(key(v.theta, v.y));
      for (const auto& v : ov) b.push_back(key(v.theta, v.y));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      // dedupe within tolerance on both sides, then match 1:1
      auto dedupe = [](std::vector<std::pair<double, double>>& v) {
        std::vector<std::pair<double, double>> out;
        for (const auto& x : v) {
          if (!out.empty() && std::fabs(out.back().first - x.first) < 1e-9 &&
              std::fabs(out.back().second - x.second) < 1e-9)
            continue;
          out.push_back(x);
        }
        v = out;
      };
      dedupe(a);
      dedupe(b);
      REQUIRE(a.size() == b.size());
      for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].first == Catch::Approx(b[i].first).margin(1e-9));
        REQUIRE(a[i].second == Catch::Approx(b[i].second).margin(1e-9));
      }
    }
  }
}

TEST_CASE("decision procedure") {
  const PointSet p5 = sq5();
  const GammaArrangement g = build_gamma(p5);
  SECTION("SQ5 thresholds around the optimum") {
    REQUIRE(!decide(p5, g, 0.49).feasible);
    const DecideResult ok = decide(p5, g, 0.5);
    REQUIRE(ok.feasible);
    REQUIRE(ok.witness.has_value());
    REQUIRE(ok.witness->width() <= 0.5 + 1e-9);
    for (const Point& p : p5.pts) REQUIRE(ok.witness->contains(p, 1e-9));
  }
  SECTION("a single width-w(S(0)) double-strip certifies feasibility") {
    std::mt19937_64 rng(163);
    const PointSet ps = testing_sets::random_points(rng, 8);
    const GammaArrangement gg = build_gamma(ps);
    double w0 = 0.0;  // max_p d_p(0) <= half the strip width
    const ExtremeResult er = extreme_points(ps, Orientation(0.0));
    for (size_t i = 0; i < ps.size(); ++i)
      w0 = std::max(w0, distance_at(ps, er, int(i), Orientation(0.0)));
    REQUIRE(decide(ps, gg, w0).feasible);
  }
  SECTION("monotone over a threshold ladder") {
    std::mt19937_64 rng(167);
    for (int it = 0; it < 5; ++it) {
      const PointSet ps = testing_sets::random_points(rng, 7);
      const GammaArrangement gg = build_gamma(ps);
      bool seen_true = false;
      for (int k = 0; k < 20; ++k) {
        const double w = 0.3 * k / 19.0;
        const bool f = decide(ps, gg, w).feasible;
        if (seen_true) REQUIRE(f);
        seen_true |= f;
      }
      REQUIRE(seen_true);
    }
  }
}

TEST_CASE("general annulus solver") {
  SECTION("points on a parallelogram boundary admit width 0") {
    // 12 points on the boundary of a parallelogram with side orientations
    // {0, pi/4}: corners at offsets along (1,0) and (1,1)/sqrt(2)
    std::vector<Point> pts;
    const Point e1{1.0, 0.0};
    const Point e2{std::sqrt(0.5), std::sqrt(0.5)};
    for (int k = 0; k < 3; ++k) {
      const double t = k / 3.0;
      pts.push_back({t * e1.x, t * e1.y});                              // bottom
      pts.push_back({e2.x + t * e1.x, e2.y + t * e1.y});                // top
      pts.push_back({t * e2.x, t * e2.y});                              // left
      pts.push_back({e1.x + t * e2.x, e1.y + t * e2.y});                // right
    }
    const PointSet ps = PointSet::from(pts);
    const AnnulusResult r = solve_general(ps);
    REQUIRE(r.width == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("SQ5 optimum is 0.5") {
    const AnnulusResult r = solve_general(sq5());
    REQUIRE(r.width == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(r.validated);
    for (const Point& p : sq5().pts) REQUIRE(r.annulus.contains(p, 1e-9));
  }
  SECTION("trivial inputs") {
    REQUIRE(solve_general(PointSet::from({{1, 2}})).width == 0.0);
    REQUIRE(solve_general(PointSet::from({{0, 0}, {1, 3}})).width ==
            Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("matches the grid oracle and the dominance chain on random input") {
    std::mt19937_64 rng(173);
    std::uniform_real_distribution<double> ang(-kHalfPi, kHalfPi);
    for (int it = 0; it < 20; ++it) {
      const PointSet ps = testing_sets::random_points(rng, 8);
      const AnnulusResult gen = solve_general(ps);
      const OracleReport grid = oracle_annulus_grid(ps, 256, 48);
      REQUIRE(gen.width ==
              Catch::Approx(grid.value).margin(1e-6 * ps.diameter()));
      // candidate completeness: the result is an element of W
      const GammaArrangement g = build_gamma(ps);
      REQUIRE(std::find(g.candidate_widths.begin(), g.candidate_widths.end(),
                        gen.width) != g.candidate_widths.end());
      // dominance: general <= fixed-phi <= fixed-fixed
      const double phi = ang(rng);
      const AnnulusResult fp = solve_fixed_phi(ps, Orientation(phi));
      REQUIRE(gen.width <= fp.width + 1e-9);
      double theta = ang(rng);
      if (theta == phi) theta = normalize_orientation(theta + 0.3);
      const AnnulusResult ff =
          solve_fixed_fixed(ps, Orientation(theta), Orientation(phi));
      REQUIRE(fp.width <= ff.width + 1e-9);
      // witness validity
      for (const Point& p : ps.pts) REQUIRE(gen.annulus.contains(p, 1e-9));
      REQUIRE(gen.annulus.width() <= gen.width + 1e-9);
    }
  }
}
