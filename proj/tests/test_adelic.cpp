#include <algorithm>
#include <cmath>
#include <random>

#include "ateich/adelic.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ateich;
using namespace ateich::oracle;

TEST_CASE("global Frobenius is lazy and invertible") {
  auto Q = NumberField::rationals();
  auto y0 = Arithmeticoid::standard(Q);
  CHECK(global_frobenius(y0, 0) == y0);
  auto y1 = global_frobenius(y0, 1);
  for (auto p : primes_up_to(100)) CHECK(y1.point(parse_place(Q, std::to_string(p))).exponent == Rational(p));
  CHECK(y1.point(Place::archimedean(Q)).exponent == Rational(1));
  CHECK(global_frobenius(y1, -1) == y0);
}

TEST_CASE("L^* action") {
  auto Q = NumberField::rationals();
  auto y0 = Arithmeticoid::standard(Q);
  auto y = lstar_act(FieldElement(Q, Rational(12)), y0);
  CHECK(y.point(parse_place(Q, "2")).exponent == Rational(4));
  CHECK(y.point(parse_place(Q, "3")).exponent == Rational(3));
  CHECK(y.point(parse_place(Q, "5")).exponent == Rational(1));
  CHECK(y.point(Place::archimedean(Q)).exponent == Rational(12));
  auto z = lstar_act(FieldElement(Q, Rational(1, 5)), y0);
  CHECK(z.point(parse_place(Q, "5")).exponent == Rational(1, 5));
  CHECK(z.point(Place::archimedean(Q)).exponent == Rational(1, 5));
  CHECK(lstar_act(FieldElement(Q, Rational(5)), z) == y0);

  auto K = NumberField::parse("Q(i)");
  auto yk = Arithmeticoid::standard(K);
  CHECK(stabilizer_check(FieldElement::parse(K, "i"), yk));
  CHECK(lstar_act(FieldElement::parse(K, "i"), yk) == yk);
  CHECK_FALSE(stabilizer_check(FieldElement::parse(K, "2+i"), yk));
  CHECK(stabilizer_check(FieldElement(Q, Rational(-1)), y0));
  CHECK_FALSE(stabilizer_check(FieldElement(Q, Rational(2)), y0));
  // (2+i)/(2-i) has norm 1 but nonzero orders over 5.
  auto u = FieldElement::parse(K, "2+i") / FieldElement::parse(K, "2-i");
  CHECK_FALSE(stabilizer_check(u, yk));
}

TEST_CASE("stabilizer scan equals the roots of unity") {
  for (auto spec : {"Q", "Q(i)", "Q(sqrt(-3))", "Q(sqrt(-2))"}) {
    auto K = NumberField::parse(spec);
    auto y = Arithmeticoid::standard(K);
    auto mu = roots_of_unity(K);
    int bound = K.is_rationals() ? 25 : 5;
    int found = 0;
    for (int a = -bound; a <= bound; ++a) {
      for (int b = K.is_rationals() ? 0 : -bound; b <= (K.is_rationals() ? 0 : bound); ++b) {
        FieldElement x(K, Rational(a), Rational(b));
        if (x.is_zero()) continue;
        bool fixed = stabilizer_check(x, y);
        CHECK(fixed == (lstar_act(x, y) == y));
        CHECK(fixed == (std::find(mu.begin(), mu.end(), x) != mu.end()));
        found += fixed;
      }
    }
    CHECK(found == static_cast<int>(mu.size()));
  }
}

TEST_CASE("Frobenius commutes with the L^* action") {
  std::mt19937_64 rng(7);
  auto K = NumberField::parse("Q(i)");
  std::uniform_int_distribution<int> c(-9, 9);
  for (int i = 0; i < 200; ++i) {
    auto y = random_arithmeticoid(K, rng);
    FieldElement x(K, Rational(c(rng)), Rational(c(rng)));
    if (x.is_zero()) continue;
    CHECK(global_frobenius(lstar_act(x, y), 1) == lstar_act(x, global_frobenius(y, 1)));
  }
}

TEST_CASE("automorphism action on concrete layers") {
  auto Q = NumberField::rationals();
  const FiniteField* F = FiniteField::get(3, 12).get();
  auto v = parse_place(Q, "3");
  Arithmeticoid y(Q, "c");
  y.set_point(concrete_point(v, HahnSeries::monomial(F->one(), Rational(1), Rational(5)) +
                                    HahnSeries::monomial(F->from_int(2), Rational(3, 2), Rational(5))));
  CHECK(aut_act({{v, 1}}, 4, y) == y);
  auto moved = aut_act({{v, 2}}, 4, y);
  CHECK(moved.point(v).exponent == y.point(v).exponent);
  CHECK(period_map(moved) == period_map(y));
  CHECK(aut_act({{v, 2}}, 4, aut_act({{v, 5}}, 4, y)) == aut_act({{v, 10}}, 4, y));
  CHECK_THROWS(aut_act({{parse_place(Q, "5"), 2}}, 4, y));
}

TEST_CASE("distance") {
  std::mt19937_64 rng(13);
  auto Q = NumberField::rationals();
  auto y0 = Arithmeticoid::standard(Q);
  CHECK(distance(y0, y0) == 0.0);
  double d = distance(y0, global_frobenius(y0, 1));
  CHECK(d > 0.0);
  CHECK(d < 1.0);
  for (auto spec : {"Q", "Q(i)"}) {
    auto K = NumberField::parse(spec);
    for (int i = 0; i < 300; ++i) {
      auto a = random_arithmeticoid(K, rng), b = random_arithmeticoid(K, rng), c = random_arithmeticoid(K, rng);
      CHECK(distance(a, a) == 0.0);
      CHECK(distance(a, b) == distance(b, a));
      CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
      if (!(a == b)) CHECK(distance(a, b) > 0.0);
    }
  }
  auto K = NumberField::parse("Q(i)");
  CHECK(canonical_index(K, Place::archimedean(K)) == 1);
  CHECK(canonical_index(K, parse_place(K, "2")) == 2);
  CHECK(canonical_index(K, parse_place(K, "3")) == 3);
  CHECK(canonical_index(K, parse_place(K, "5:1")) == 5);
}

TEST_CASE("normalization coordinates and the period map") {
  auto Q = NumberField::rationals();
  auto y0 = Arithmeticoid::standard(Q);
  NormalizationCoordinate a0(y0);
  CHECK(a0.special().empty());
  CHECK(a0.alpha(parse_place(Q, "7")) == Rational(1));
  NormalizationCoordinate a1(global_frobenius(y0, 1));
  for (auto p : primes_up_to(50)) CHECK(a1.alpha(parse_place(Q, std::to_string(p))) == Rational(1, p));
  NormalizationCoordinate an(lstar_act(FieldElement(Q, Rational(45)), y0));
  CHECK(an.alpha(parse_place(Q, "3")) == Rational(1, 9));
  CHECK(an.alpha(parse_place(Q, "5")) == Rational(1, 5));
  CHECK(an.alpha(parse_place(Q, "7")) == Rational(1));

  CHECK(period_map(y0) == period_map(y0));
  CHECK_FALSE(period_map(y0) == period_map(global_frobenius(y0, 1)));
  CHECK_FALSE(period_map(y0) == period_map(lstar_act(FieldElement(Q, Rational(2)), y0)));

  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> c(-40, 40);
  for (auto spec : {"Q", "Q(i)", "Q(sqrt(-3))"}) {
    auto K = NumberField::parse(spec);
    for (int i = 0; i < 100; ++i) {
      auto y = random_arithmeticoid(K, rng);
      FieldElement x(K, Rational(c(rng), 1 + (c(rng) & 7)), K.is_rationals() ? Rational(0) : Rational(c(rng)));
      if (x.is_zero()) continue;
      CHECK(hyperplane_pairing(y, x).is_exactly_zero());
    }
  }
}

TEST_CASE("toy mutation of Tate parameters") {
  auto rep = mutate_tate_parameters({{"q1", Rational(1, 2)}}, 1);
  CHECK(rep.flagged == 1);
  CHECK(rep.entries[0].abs_after == Rational(2));
  CHECK(mutate_tate_parameters({{"q1", Rational(1, 2)}}, 0).flagged == 0);
  auto r3 = mutate_tate_parameters({{"a", Rational(1, 3)}, {"b", Rational(1, 5)}, {"c", Rational(2, 7)}}, 2);
  CHECK(r3.flagged == 2);
  CHECK(r3.requires_fresh_parameters);
  CHECK_THROWS(mutate_tate_parameters({{"a", Rational(1, 3)}}, 2));
  CHECK_THROWS(mutate_tate_parameters({{"a", Rational(3, 2)}}, 1));
}
