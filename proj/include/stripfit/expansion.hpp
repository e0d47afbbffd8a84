#pragma once

// Exact floating-point expansion arithmetic (Shewchuk-style) plus the exact
// rational quotients used as arrangement/chain breakpoints.
//
// An expansion is a sum of non-overlapping doubles stored in ascending
// magnitude order with zeros eliminated; the empty expansion is 0. Every
// operation here is exact, so sign decisions made on expansions are exact
// sign decisions on the underlying real values.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace stripfit {

using Expansion = std::vector<double>;

namespace detail {

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void two_prod(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

}  // namespace detail

inline Expansion expansion_from(double a) {
  if (a == 0.0) return {};
  return {a};
}

inline Expansion expansion_from(double a, double b) {
  double x, y;
  detail::two_sum(a, b, x, y);
  Expansion e;
  if (y != 0.0) e.push_back(y);
  if (x != 0.0) e.push_back(x);
  return e;
}

// e + b for a single double b.
inline Expansion grow_expansion(const Expansion& e, double b) {
  Expansion h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double ei : e) {
    double qn, hi;
    detail::two_sum(q, ei, qn, hi);
    q = qn;
    if (hi != 0.0) h.push_back(hi);
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

// e + f (fast expansion sum with zero elimination).
inline Expansion expansion_sum(const Expansion& e, const Expansion& f) {
  if (e.empty()) return f;
  if (f.empty()) return e;
  Expansion g;
  g.reserve(e.size() + f.size());
  {
    size_t i = 0, j = 0;
    while (i < e.size() && j < f.size()) {
      if (std::fabs(e[i]) < std::fabs(f[j]))
        g.push_back(e[i++]);
      else
        g.push_back(f[j++]);
    }
    while (i < e.size()) g.push_back(e[i++]);
    while (j < f.size()) g.push_back(f[j++]);
  }
  Expansion h;
  h.reserve(g.size());
  double q = g[0];
  for (size_t i = 1; i < g.size(); ++i) {
    double qn, hi;
    detail::two_sum(q, g[i], qn, hi);
    q = qn;
    if (hi != 0.0) h.push_back(hi);
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

inline Expansion expansion_negate(Expansion e) {
  for (double& t : e) t = -t;
  return e;
}

inline Expansion expansion_diff(const Expansion& e, const Expansion& f) {
  return expansion_sum(e, expansion_negate(f));
}

// e * b for a single double b.
inline Expansion scale_expansion(const Expansion& e, double b) {
  Expansion h;
  if (e.empty() || b == 0.0) return h;
  h.reserve(2 * e.size());
  double q, hh;
  detail::two_prod(e[0], b, q, hh);
  if (hh != 0.0) h.push_back(hh);
  for (size_t i = 1; i < e.size(); ++i) {
    double t1, t0;
    detail::two_prod(e[i], b, t1, t0);
    double s, r;
    detail::two_sum(q, t0, s, r);
    if (r != 0.0) h.push_back(r);
    double qn;
    detail::two_sum(t1, s, qn, r);
    if (r != 0.0) h.push_back(r);
    q = qn;
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

inline Expansion expansion_mul(const Expansion& e, const Expansion& f) {
  Expansion acc;
  for (double ft : f) acc = expansion_sum(acc, scale_expansion(e, ft));
  return acc;
}

inline int expansion_sign(const Expansion& e) {
  if (e.empty()) return 0;
  const double t = e.back();
  return (t > 0.0) - (t < 0.0);
}

inline double expansion_approx(const Expansion& e) {
  double s = 0.0;
  for (double t : e) s += t;  // ascending magnitude keeps this accurate
  return s;
}

// Exact rational value num/den with den > 0, plus a guaranteed double
// enclosure (|value - approx| <= err) used as a cheap comparison filter.
struct ExactQ {
  Expansion num;
  Expansion den;  // sign-normalized: expansion_sign(den) > 0
  double approx = 0.0;
  double err = std::numeric_limits<double>::infinity();

  static ExactQ from_double(double v) {
    ExactQ q;
    q.num = expansion_from(v);
    q.den = {1.0};
    q.approx = v;
    q.err = 0.0;
    return q;
  }

  static ExactQ ratio(Expansion num, Expansion den) {
    const int ds = expansion_sign(den);
    assert(ds != 0 && "ExactQ denominator must be nonzero");
    ExactQ q;
    if (ds < 0) {
      q.num = expansion_negate(std::move(num));
      q.den = expansion_negate(std::move(den));
    } else {
      q.num = std::move(num);
      q.den = std::move(den);
    }
    q.refresh_approx();
    return q;
  }

  void refresh_approx() {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double nsum = 0.0, nabs = 0.0;
    for (double t : num) {
      nsum += t;
      nabs += std::fabs(t);
    }
    double dsum = 0.0, dabs = 0.0;
    for (double t : den) {
      dsum += t;
      dabs += std::fabs(t);
    }
    const double nerr = 2.0 * eps * nabs * double(num.size() + 1);
    const double derr = 2.0 * eps * dabs * double(den.size() + 1);
    if (dsum - derr <= 0.0) {  // denominator enclosure touches zero
      approx = nsum / dsum;
      err = std::numeric_limits<double>::infinity();
      return;
    }
    approx = nsum / dsum;
    // |n/d - approx| <= (nerr + |approx|*derr + ulp slack) / (d - derr)
    err = (nerr + std::fabs(approx) * derr + 4.0 * eps * std::fabs(approx) * dsum) /
          (dsum - derr);
  }

  int sign() const { return expansion_sign(num); }
};

// Exact three-way comparison of two quotients.
inline int exactq_compare(const ExactQ& a, const ExactQ& b) {
  if (std::isfinite(a.err) && std::isfinite(b.err)) {
    const double d = a.approx - b.approx;
    if (d > a.err + b.err) return 1;
    if (d < -(a.err + b.err)) return -1;
  }
  const Expansion lhs = expansion_mul(a.num, b.den);
  const Expansion rhs = expansion_mul(b.num, a.den);
  return expansion_sign(expansion_diff(lhs, rhs));
}

inline bool exactq_equal(const ExactQ& a, const ExactQ& b) {
  return exactq_compare(a, b) == 0;
}

inline double exactq_to_double(const ExactQ& q) { return q.approx; }

// sign(c*u - d) for expansions c, d and a finite quotient u.
inline int sign_linear_at(const Expansion& c, const Expansion& d, const ExactQ& u) {
  // c*num - d*den, den > 0
  const Expansion lhs = expansion_mul(c, u.num);
  const Expansion rhs = expansion_mul(d, u.den);
  return expansion_sign(expansion_diff(lhs, rhs));
}

// A point on the extended u-axis: -inf, finite exact value, or +inf.
struct Breakpoint {
  enum Kind : int8_t { NegInf = -1, Finite = 0, PosInf = 1 };
  Kind kind = Finite;
  ExactQ v;

  static Breakpoint neg_inf() { return Breakpoint{NegInf, {}}; }
  static Breakpoint pos_inf() { return Breakpoint{PosInf, {}}; }
  static Breakpoint finite(ExactQ q) { return Breakpoint{Finite, std::move(q)}; }
  static Breakpoint of(double x) { return finite(ExactQ::from_double(x)); }

  bool is_finite() const { return kind == Finite; }
};

inline int breakpoint_compare(const Breakpoint& a, const Breakpoint& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind != Breakpoint::Finite) return 0;
  return exactq_compare(a.v, b.v);
}

inline bool operator<(const Breakpoint& a, const Breakpoint& b) {
  return breakpoint_compare(a, b) < 0;
}
inline bool operator==(const Breakpoint& a, const Breakpoint& b) {
  return breakpoint_compare(a, b) == 0;
}

inline double breakpoint_to_double(const Breakpoint& b) {
  switch (b.kind) {
    case Breakpoint::NegInf: return -std::numeric_limits<double>::infinity();
    case Breakpoint::PosInf: return std::numeric_limits<double>::infinity();
    default: return exactq_to_double(b.v);
  }
}

}  // namespace stripfit
