#pragma once

// Shared fixtures for the test suite: named point sets and instance
// generators. The named sets appear throughout the unit and acceptance
// tests with frozen expected values.

#include <random>
#include <vector>

#include "stripfit/geometry.hpp"

namespace testing_sets {

using stripfit::Point;
using stripfit::PointSet;

inline PointSet sq4() {
  return PointSet::from({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline PointSet sq5() {
  return PointSet::from({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
}

inline PointSet tri3() { return PointSet::from({{0, 0}, {4, 0}, {0, 3}}); }

// random points on the [0,1) grid of doubles
inline PointSet random_points(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
  return PointSet::from(pts);
}

// random points with small integer coordinates (exact-degeneracy prone)
inline PointSet random_grid_points(std::mt19937_64& rng, int n, int extent) {
  std::vector<Point> pts;
  std::uniform_int_distribution<int> g(-extent, extent);
  while (int(pts.size()) < n) {
    Point p{double(g(rng)), double(g(rng))};
    bool dup = false;
    for (const Point& q : pts) dup |= (q == p);
    if (!dup) pts.push_back(p);
  }
  return PointSet::from(pts);
}

inline PointSet regular_gon(int k, double rot = 0.3) {
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) {
    const double a = rot + 2.0 * stripfit::kPi * i / k;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  return PointSet::from(pts);
}

}  // namespace testing_sets
