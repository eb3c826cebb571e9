#include <cmath>
#include <random>

#include "ateich/numfield.hpp"
#include "doctest.h"

using namespace ateich;

namespace {

// Brute-force quadratic residue test used as an independent splitting oracle.
bool is_square_mod(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  for (std::int64_t x = 0; x < p; ++x) {
    if (x * x % p == a) return true;
  }
  return false;
}

FieldElement random_element(const NumberField& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-30, 30);
  std::uniform_int_distribution<int> den(1, 12);
  for (;;) {
    Rational a(num(rng), den(rng));
    Rational b = K.is_rationals() ? Rational(0) : Rational(num(rng), den(rng));
    FieldElement x(K, a, b);
    if (!x.is_zero()) return x;
  }
}

}  // namespace

TEST_CASE("field parsing and discriminants") {
  CHECK(NumberField::parse("Q").is_rationals());
  CHECK(NumberField::parse("Q(i)").discriminant() == -4);
  CHECK(NumberField::parse("Q(sqrt(-1))") == NumberField::parse("Q(i)"));
  CHECK(NumberField::parse("Q(sqrt(-3))").discriminant() == -3);
  CHECK(NumberField::parse("Q(sqrt(-5))").discriminant() == -20);
  CHECK_THROWS(NumberField::parse("Q(sqrt(-4))"));
  CHECK_THROWS(NumberField::parse("Q(sqrt(2))"));
}

TEST_CASE("element parsing and arithmetic") {
  auto K = NumberField::parse("Q(i)");
  auto x = FieldElement::parse(K, "2+i");
  CHECK(x.norm() == Rational(5));
  CHECK(x * x.conjugate() == FieldElement(K, Rational(5)));
  auto i = FieldElement::parse(K, "i");
  CHECK(i * i == FieldElement(K, Rational(-1)));
  CHECK(FieldElement::parse(K, "3/2-2*i") == FieldElement(K, Rational(3, 2), Rational(-2)));
  CHECK(x / x == FieldElement(K, Rational(1)));

  auto E = NumberField::parse("Q(sqrt(-3))");
  auto s = FieldElement::parse(E, "sqrt(-3)");
  CHECK(s * s == FieldElement(E, Rational(-3)));
  auto w = FieldElement::parse(E, "w");
  CHECK(w.pow(6) == FieldElement(E, Rational(1)));
  CHECK(std::abs(s.embed().imag() - std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("places up to a bound") {
  auto Q = NumberField::rationals();
  auto pl = places_up_to(Q, 10);
  REQUIRE(pl.size() == 5);
  CHECK(pl[0].is_archimedean());
  CHECK(pl[1].p == 2);
  CHECK(pl[4].p == 7);

  auto K = NumberField::parse("Q(i)");
  auto over2 = places_over(K, 2);
  REQUIRE(over2.size() == 1);
  CHECK(over2[0].e == 2);
  CHECK(over2[0].f == 1);
  auto over5 = places_over(K, 5);
  REQUIRE(over5.size() == 2);
  CHECK(over5[0].local_degree() == 1);
  CHECK(places_over(K, 3)[0].f == 2);

  auto E = NumberField::parse("Q(sqrt(-3))");
  CHECK(places_over(E, 7).size() == 2);
  CHECK(places_over(E, 3)[0].splitting == Splitting::Ramified);
}

TEST_CASE("splitting matches brute-force residues and degrees sum to [L:Q]") {
  for (std::int64_t d : {1, 2, 3, 5, 7, 11, 15}) {
    auto K = NumberField::imaginary_quadratic(d);
    std::int64_t D = K.discriminant();
    for (auto p : primes_up_to(60)) {
      auto over = places_over(K, p);
      int total = 0;
      for (const auto& v : over) total += v.local_degree();
      CHECK(total == 2);
      if (p != 2 && D % p != 0) {
        CHECK((over.size() == 2) == is_square_mod(D, p));
      }
      if (p == 2 && D % 2 != 0) {
        // D = 1 mod 4: splits iff D = 1 mod 8.
        CHECK((over.size() == 2) == (((D % 8) + 8) % 8 == 1));
      }
    }
  }
}

TEST_CASE("valuations") {
  auto Q = NumberField::rationals();
  auto v5 = parse_place(Q, "5");
  CHECK(ord(FieldElement(Q, Rational(5)), v5) == 1);
  CHECK(ord(FieldElement(Q, Rational(1, 5)), v5) == -1);
  CHECK_THROWS(ord(FieldElement(Q, Rational(0)), v5));

  auto K = NumberField::parse("Q(i)");
  auto v2 = parse_place(K, "2");
  CHECK(ord(FieldElement::parse(K, "1+i"), v2) == 1);
  CHECK(ord(FieldElement(K, Rational(2)), v2) == 2);
  // 2+i and 2-i generate the two primes over 5.
  auto x = FieldElement::parse(K, "2+i");
  auto y = x.conjugate();
  auto a = parse_place(K, "5:0");
  auto b = parse_place(K, "5:1");
  CHECK(ord(x, a) + ord(x, b) == 1);
  CHECK(ord(x, a) == ord(y, b));
  CHECK(ord(x, a) != ord(y, a));
  auto q = x / y;
  CHECK(q.norm() == Rational(1));
  CHECK(divisor(q).size() == 2);
}

TEST_CASE("ord is additive on random pairs") {
  std::mt19937_64 rng(11);
  for (auto spec : {"Q", "Q(i)", "Q(sqrt(-3))", "Q(sqrt(-5))"}) {
    auto K = NumberField::parse(spec);
    auto places = places_up_to(K, 13);
    for (int t = 0; t < 500; ++t) {
      auto x = random_element(K, rng);
      auto y = random_element(K, rng);
      for (const auto& v : places) {
        if (v.is_archimedean()) continue;
        CHECK(ord(x * y, v) == ord(x, v) + ord(y, v));
      }
    }
  }
}

TEST_CASE("uniformizers have order one") {
  for (auto spec : {"Q", "Q(i)", "Q(sqrt(-3))", "Q(sqrt(-5))"}) {
    auto K = NumberField::parse(spec);
    for (const auto& v : places_up_to(K, 30)) {
      if (v.is_archimedean()) continue;
      CHECK(ord(uniformizer(K, v), v) == 1);
    }
  }
}

TEST_CASE("standard absolute values") {
  auto Q = NumberField::rationals();
  auto five = FieldElement(Q, Rational(5));
  auto l5 = standard_abs(five, parse_place(Q, "5"));
  CHECK(l5.coeff(5) == Rational(-1));
  auto linf = standard_abs(five, Place::archimedean(Q));
  CHECK(linf.coeff(5) == Rational(1));
  auto K = NumberField::parse("Q(i)");
  auto li = standard_abs(FieldElement::parse(K, "1+i"), Place::archimedean(K));
  CHECK(li.coeff(2) == Rational(1));
  CHECK(std::abs(li.value() - std::log(2.0)) < 1e-15);
}

TEST_CASE("product formula") {
  auto Q = NumberField::rationals();
  auto r = product_formula_check(FieldElement(Q, Rational(6, 35)));
  CHECK(r.exact_cancellation);
  CHECK(r.residual < 1e-14);
  auto K = NumberField::parse("Q(sqrt(-1))");
  auto r2 = product_formula_check(FieldElement::parse(K, "2+i"));
  CHECK(r2.exact_cancellation);
  CHECK(r2.residual < 1e-12);

  std::mt19937_64 rng(5);
  for (auto spec : {"Q(sqrt(-3))", "Q(sqrt(-7))", "Q(sqrt(-5))"}) {
    auto L = NumberField::parse(spec);
    for (int t = 0; t < 200; ++t) {
      auto rep = product_formula_check(random_element(L, rng));
      CHECK(rep.exact_cancellation);
      CHECK(rep.residual < 1e-9);
    }
  }
}

TEST_CASE("roots of unity") {
  CHECK(roots_of_unity(NumberField::rationals()).size() == 2);
  auto K = NumberField::parse("Q(i)");
  auto mu = roots_of_unity(K);
  REQUIRE(mu.size() == 4);
  CHECK(mu[1] == FieldElement::parse(K, "i"));
  auto E = NumberField::parse("Q(sqrt(-3))");
  auto mu6 = roots_of_unity(E);
  REQUIRE(mu6.size() == 6);
  for (const auto& z : mu6) CHECK(z.pow(6) == FieldElement(E, Rational(1)));
  CHECK(roots_of_unity(NumberField::parse("Q(sqrt(-5))")).size() == 2);
}
