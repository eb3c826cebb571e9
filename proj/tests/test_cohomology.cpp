#include <cmath>
#include <numbers>
#include <random>

#include "ateich/cohomology.hpp"
#include "doctest.h"

using namespace ateich;

namespace {

// p-adic valuation of a nonzero rational by repeated division.
int vp_rational(const Rational& x, std::int64_t p) {
  int k = 0;
  std::int64_t n = x.num(), d = x.den();
  while (n % p == 0) n /= p, ++k;
  while (d % p == 0) d /= p, --k;
  return k;
}

FieldElement random_element(const NumberField& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-30, 30), d(1, 12);
  for (;;) {
    FieldElement x(K, Rational(c(rng), d(rng)), K.is_rationals() ? Rational(0) : Rational(c(rng), d(rng)));
    if (!x.is_zero()) return x;
  }
}

}  // namespace

TEST_CASE("Kummer classes of rationals") {
  auto Q = NumberField::rationals();
  auto v5 = parse_place(Q, "5");
  auto c = kummer_class(FieldElement(Q, Rational(5)), v5, 3);
  CHECK(c.order_part == 1);
  CHECK(c.unit_tag == FieldElement(Q, Rational(1)));
  auto u = kummer_class(FieldElement(Q, Rational(7, 3)), v5, 3);
  CHECK(u.order_part == 0);
  CHECK(u.unit_tag == FieldElement(Q, Rational(7, 3)));
  auto inv = kummer_class(FieldElement(Q, Rational(1, 25)), v5, 2);
  CHECK(inv.order_part == 25 - 2);
  CHECK(inv.modulus() == 25);
  CHECK_THROWS(kummer_class(FieldElement(Q, Rational(0)), v5, 2));
  CHECK_THROWS(kummer_class(FieldElement(Q, Rational(3)), Place::archimedean(Q), 2));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto x = random_element(Q, rng);
    for (std::int64_t p : {2, 3, 5, 7}) {
      auto k = kummer_class(x, parse_place(Q, std::to_string(p)), 4);
      mpz_class m = ipow(p, 4);
      mpz_class expect = vp_rational(x.a(), p);
      expect = ((expect % m) + m) % m;
      CHECK(k.order_part == expect);
      CHECK(vp_rational(k.unit_tag.a(), p) == 0);
    }
  }
}

TEST_CASE("Kummer map is a homomorphism") {
  std::mt19937_64 rng(11);
  for (auto K : {NumberField::rationals(), NumberField::parse("Q(i)"), NumberField::parse("Q(sqrt(-3))")}) {
    auto places = places_up_to(K, 13);
    places.erase(places.begin());
    for (int t = 0; t < 500; ++t) {
      auto x = random_element(K, rng), y = random_element(K, rng);
      const Place& v = places[t % places.size()];
      int n = 1 + t % 4;
      CHECK(kummer_class(x * y, v, n) == kummer_class(x, v, n) + kummer_class(y, v, n));
    }
  }
}

TEST_CASE("Tate classes") {
  auto Q = NumberField::rationals();
  std::complex<double> qinf = std::exp(std::complex<double>(0, 2 * std::numbers::pi) * std::complex<double>(0, 1));
  auto empty = tate_class(Q, {}, qinf, 3);
  CHECK(empty.finite.empty());
  CHECK(empty.arch_q == qinf);
  CHECK(bloch_kato_member(empty));
  CHECK(std::abs(qinf - std::exp(-2 * std::numbers::pi)) < 1e-15);

  auto v7 = parse_place(Q, "7");
  auto c = tate_class(Q, {{v7, FieldElement(Q, Rational(ipow(7, 5) * 3))}}, qinf, 3);
  CHECK(c.finite.at(v7).order_part == 5);
  CHECK(c.finite.at(v7).unit_tag == FieldElement(Q, Rational(3)));
  CHECK_FALSE(bloch_kato_member(c));
  CHECK_THROWS_AS(tate_class(Q, {{v7, FieldElement(Q, Rational(3))}}, qinf, 3), std::domain_error);
  CHECK_THROWS_AS(tate_class(Q, {{v7, FieldElement(Q, Rational(1, 7))}}, qinf, 3), std::domain_error);

  AdelicClass unit_only;
  unit_only.precision = 3;
  unit_only.finite.emplace(v7, kummer_class(FieldElement(Q, Rational(2)), v7, 3));
  CHECK(bloch_kato_member(unit_only));
  CHECK(bloch_kato_member(AdelicClass{}));

  auto coeffs = load_j_coefficients();
  auto tp = invert_j_series(5, Rational(1, 125), 10, coeffs);
  auto q5 = tate_parameter_element(tp);
  auto tc = tate_class(Q, {{parse_place(Q, "5"), q5}}, qinf, 2);
  CHECK(tc.finite.begin()->second.order_part == 3);
}

TEST_CASE("collation") {
  auto Q = NumberField::rationals();
  auto v7 = parse_place(Q, "7");
  auto c = tate_class(Q, {{v7, FieldElement(Q, Rational(49 * 2))}}, {0.5, 0.0}, 4);
  CHECK(collate({{"y", c}}, {{"y", {Transform{}}}}).size() == 1);
  CHECK(collate({{"y", c}, {"y'", c}}, {{"y", {Transform{}}}, {"y'", {Transform{}}}}).size() == 1);
  CHECK_THROWS_AS(collate({{"y", c}}, {}), std::invalid_argument);

  // Theta-value style collation: order part scaled by j^2, j = 1..l*.
  for (int ell : {5, 7, 11}) {
    int lstar = (ell - 1) / 2;
    std::vector<Transform> ts;
    for (int j = 1; j <= lstar; ++j) ts.push_back(Transform{std::nullopt, j * j, 0, std::nullopt});
    auto out = collate({{"y", c}}, {{"y", ts}});
    CHECK(static_cast<int>(out.size()) == lstar);
    for (const auto& k : out) {
      mpz_class op = k.finite.at(v7).order_part;
      bool found = false;
      for (int j = 1; j <= lstar; ++j) found = found || op == (2 * j * j) % 2401;
      CHECK(found);
    }
  }
  CHECK_THROWS(apply_transform(c, Transform{v7, 14, 0, std::nullopt}));

  // Frobenius shift multiplies the order part by p^m.
  auto f = apply_transform(c, Transform{v7, 1, 1, std::nullopt});
  CHECK(f.finite.at(v7).order_part == 14);
  CHECK(f.finite.at(v7).unit_tag == FieldElement(Q, Rational(ipow(2, 7))));

  // Bloch-Kato membership is stable under unit-part transforms.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto x = random_element(Q, rng);
    AdelicClass a;
    a.precision = 2;
    for (std::int64_t p : {2, 3, 5}) {
      auto v = parse_place(Q, std::to_string(p));
      a.finite.emplace(v, kummer_class(x, v, 2));
    }
    Transform u{parse_place(Q, "3"), 1, 0, FieldElement(Q, Rational(2))};
    CHECK(bloch_kato_member(apply_transform(a, u)) == bloch_kato_member(a));
  }

  // Output size bounded by the inputs and invariant under relabeling.
  std::map<std::string, AdelicClass> in;
  std::map<std::string, std::vector<Transform>> iso, iso2;
  std::map<std::string, AdelicClass> in2;
  for (int i = 0; i < 6; ++i) {
    auto x = random_element(Q, rng);
    AdelicClass a;
    a.precision = 2;
    a.finite.emplace(v7, kummer_class(x * FieldElement(Q, Rational(7)), v7, 2));
    in["l" + std::to_string(i)] = a;
    in2["m" + std::to_string(5 - i)] = a;
    iso["l" + std::to_string(i)] = {Transform{}, Transform{std::nullopt, 3, 0, std::nullopt}};
    iso2["m" + std::to_string(5 - i)] = iso["l" + std::to_string(i)];
  }
  auto o1 = collate(in, iso), o2 = collate(in2, iso2);
  CHECK(o1.size() <= 12);
  CHECK(o1 == o2);
}
