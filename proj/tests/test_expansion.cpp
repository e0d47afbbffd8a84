#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stripfit/expansion.hpp"

using namespace stripfit;

TEST_CASE("expansion arithmetic is exact on adversarial doubles") {
  // 1 + eps/2 - 1 cancels in plain doubles but not in expansions
  const double tiny = std::numeric_limits<double>::epsilon() / 2.0;
  Expansion e = expansion_from(1.0, tiny);
  e = grow_expansion(e, -1.0);
  REQUIRE(expansion_sign(e) > 0);
  REQUIRE(expansion_approx(e) == tiny);

  const Expansion z = expansion_diff(expansion_from(0.1), expansion_from(0.1));
  REQUIRE(expansion_sign(z) == 0);
}

TEST_CASE("expansion products recover exact signs") {
  // (a*b - c*d) with values chosen so the double evaluation loses the sign
  const double a = 1.0 + std::ldexp(1.0, -30);
  const double b = 1.0 - std::ldexp(1.0, -30);
  const double c = 1.0;
  const double d = a * b;  // rounded
  const Expansion lhs = expansion_mul(expansion_from(a), expansion_from(b));
  const Expansion rhs = expansion_mul(expansion_from(c), expansion_from(d));
  const Expansion diff = expansion_diff(lhs, rhs);
  // exact a*b = 1 - 2^-60 is not representable; d rounds to 1 - 2^-60 exactly?
  // Either way the expansion difference must match exact rational arithmetic:
  // a*b = 1 - 2^-60, and d = fl(a*b). The sign is the rounding residue.
  const double residue = std::fma(a, b, -d);
  REQUIRE(expansion_sign(diff) == (residue > 0 ? 1 : residue < 0 ? -1 : 0));
}

TEST_CASE("quotient comparison agrees with long double on random ratios") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int it = 0; it < 2000; ++it) {
    const double n1 = u(rng), d1 = u(rng), n2 = u(rng), d2 = u(rng);
    if (d1 == 0.0 || d2 == 0.0) continue;
    const ExactQ a = ExactQ::ratio(expansion_from(n1), expansion_from(d1));
    const ExactQ b = ExactQ::ratio(expansion_from(n2), expansion_from(d2));
    const long double va = static_cast<long double>(n1) / d1;
    const long double vb = static_cast<long double>(n2) / d2;
    // long double has enough headroom for single-term ratios
    const int expect = va < vb ? -1 : va > vb ? 1 : 0;
    REQUIRE(exactq_compare(a, b) == expect);
  }
}

TEST_CASE("quotient comparison detects exact ties across forms") {
  // 1/3 expressed two ways (scaled numerator and denominator)
  const ExactQ a = ExactQ::ratio(expansion_from(2.0), expansion_from(6.0));
  const ExactQ b = ExactQ::ratio(expansion_from(-1.0), expansion_from(-3.0));
  REQUIRE(exactq_compare(a, b) == 0);
  REQUIRE(exactq_equal(a, b));
}

TEST_CASE("breakpoints order with symbolic infinities") {
  const Breakpoint lo = Breakpoint::neg_inf();
  const Breakpoint hi = Breakpoint::pos_inf();
  const Breakpoint x = Breakpoint::of(2.5);
  REQUIRE(breakpoint_compare(lo, x) < 0);
  REQUIRE(breakpoint_compare(x, hi) < 0);
  REQUIRE(breakpoint_compare(lo, hi) < 0);
  REQUIRE(breakpoint_compare(x, Breakpoint::of(2.5)) == 0);
  REQUIRE(std::isinf(breakpoint_to_double(lo)));
}

TEST_CASE("sign of linear form at a quotient") {
  // 2u - 3 at u = 3/2 is zero; at 3/2 + ulp it is positive
  const ExactQ u = ExactQ::ratio(expansion_from(3.0), expansion_from(2.0));
  REQUIRE(sign_linear_at(expansion_from(2.0), expansion_from(3.0), u) == 0);
  const ExactQ above = ExactQ::ratio(expansion_from(std::nextafter(1.5, 2.0)),
                                     expansion_from(1.0));
  REQUIRE(sign_linear_at(expansion_from(2.0), expansion_from(3.0), above) == 1);
}
