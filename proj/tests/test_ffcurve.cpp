#include <cmath>
#include <random>

#include "ateich/ffcurve.hpp"
#include "ateich/lubin_tate.hpp"
#include "doctest.h"

using namespace ateich;

TEST_CASE("standard points and Beltrami exponents") {
  auto Q = NumberField::rationals();
  CHECK(standard_point(parse_place(Q, "7")).exponent == Rational(1));
  CHECK(beltrami(standard_point(parse_place(Q, "3"))).coeff(3) == Rational(-1));
  auto K = NumberField::parse("Q(i)");
  CHECK(standard_point(parse_place(K, "5:0")).exponent == Rational(1));
  CHECK(standard_point(parse_place(K, "3")).exponent == Rational(2));
  CHECK(standard_point(Place::archimedean(K)).exponent == Rational(1));
}

TEST_CASE("Frobenius on local points") {
  auto Q = NumberField::rationals();
  auto y = standard_point(parse_place(Q, "5"));
  CHECK(frobenius_point(y, 1).exponent == Rational(5));
  CHECK(frobenius_point(y, 0) == y);
  CHECK(frobenius_point(frobenius_point(y, 1), -1) == y);
  CHECK(frobenius_point(standard_point(parse_place(Q, "3")), 1).exponent == Rational(3));
  for (auto p : primes_up_to(50)) {
    auto yp = standard_point(parse_place(Q, std::to_string(p)));
    for (int m = -6; m <= 6; ++m) {
      // |p|_y = |p|_{phi y}^{1/p}: exponents satisfy e(y) = e(phi y)/p.
      auto a = frobenius_point(yp, m);
      auto b = frobenius_point(a, 1);
      CHECK(beltrami(a).coeff(p) == beltrami(b).coeff(p) / Rational(p));
    }
  }
  auto inf = archimedean_point(Place::archimedean(Q), Rational(3));
  CHECK(frobenius_point(inf, 4) == inf);
}

TEST_CASE("concrete layer is Frobenius-equivariant and Lubin-Tate invariant") {
  auto Q = NumberField::rationals();
  const FiniteField* F = FiniteField::get(3, 12).get();
  std::mt19937_64 rng(2);
  auto v = parse_place(Q, "3");
  for (int i = 0; i < 30; ++i) {
    auto a = HahnSeries::random(F, rng, 3, Rational(1, 3), Rational(3), 4, Rational(5));
    if (a.is_zero()) continue;
    auto y = concrete_point(v, a);
    auto fy = frobenius_point(y, 1);
    CHECK(fy.concrete->valuation() == fy.exponent);
    auto b = lubin_tate_act(2, 4, a);
    CHECK(concrete_point(v, b).exponent == y.exponent);
    CHECK(same_point_class(a, b, 3));
  }
  auto t = HahnSeries::monomial(F->one(), Rational(1), Rational(6));
  auto t2 = HahnSeries::monomial(F->one(), Rational(2), Rational(6));
  CHECK_FALSE(same_point_class(t, t2, 3));
  CHECK(canonical_representative(t, 2) == canonical_representative(lubin_tate_act(5, 2, t), 2));
}

TEST_CASE("archimedean action") {
  auto inf = Place::archimedean(NumberField::rationals());
  auto y = archimedean_point(inf, Rational(1));
  CHECK(arch_act(Rational(1), y) == y);
  CHECK(arch_act(Rational(2), y).exponent == Rational(2));
  CHECK(arch_act(Rational(3), arch_act(Rational(2, 7), y)) == arch_act(Rational(6, 7), y));
}

TEST_CASE("local distance is a metric with Frobenius as translation") {
  auto Q = NumberField::rationals();
  auto v = parse_place(Q, "7");
  auto y = standard_point(v);
  CHECK(local_distance(y, y) == 0.0);
  CHECK(std::abs(local_distance(y, frobenius_point(y, 1)) - std::log(7.0)) < 1e-15);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(1, 60);
  for (int i = 0; i < 1000; ++i) {
    auto a = finite_point(v, Rational(d(rng), d(rng)));
    auto b = finite_point(v, Rational(d(rng), d(rng)));
    auto c = finite_point(v, Rational(d(rng), d(rng)));
    CHECK(local_distance(a, b) == local_distance(b, a));
    CHECK(local_distance(a, c) <= local_distance(a, b) + local_distance(b, c) + 1e-12);
  }
  CHECK_THROWS(local_distance(y, standard_point(parse_place(Q, "5"))));
}

TEST_CASE("switching to the multiplicative description keeps the radius") {
  const FiniteField* F = FiniteField::get(2, 12).get();
  auto t = HahnSeries::monomial(F->one(), Rational(1), Rational(6));
  auto m = switch_description(t);
  CHECK((m - HahnSeries::constant(F->one(), m.cap())).valuation() == Rational(1));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto a = HahnSeries::random(F, rng, 3, Rational(1, 5), Rational(3), 5, Rational(4));
    if (a.is_zero()) continue;
    auto s = switch_description(a);
    CHECK((s - HahnSeries::constant(F->one(), s.cap())).valuation() == a.valuation());
  }
  CHECK_THROWS(switch_description(HahnSeries(F, Rational(4))));
}

TEST_CASE("correspondence fibers") {
  auto Q = NumberField::rationals();
  CHECK(correspondence_fiber(Q, 5, Rational(1)).size() == 1);
  auto K = NumberField::parse("Q(i)");
  auto fib = correspondence_fiber(K, 5, Rational(1));
  REQUIRE(fib.size() == 2);
  for (const auto& y : fib) CHECK(y == standard_point(y.place));
  for (auto p : primes_up_to(40)) CHECK(correspondence_fiber(K, p, Rational(3)).size() <= 2);
  CHECK(correspondence_fiber(K, 3, Rational(2))[0].exponent == Rational(4));
}
