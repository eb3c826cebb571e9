#include "ateich/ffcurve.hpp"

#include <cmath>
#include <stdexcept>

#include "ateich/lubin_tate.hpp"
#include "ateich/zp_series.hpp"

namespace ateich {

namespace {

bool series_less(const HahnSeries& a, const HahnSeries& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return a.terms().size() < b.terms().size();
}

}  // namespace

bool operator==(const LocalPoint& a, const LocalPoint& b) {
  if (!(a.place == b.place) || a.exponent != b.exponent) return false;
  if (a.concrete && b.concrete) return *a.concrete == *b.concrete;
  return true;
}

LocalPoint standard_point(const Place& v) {
  LocalPoint y;
  y.place = v;
  y.exponent = v.is_archimedean() ? Rational(1) : Rational(v.local_degree());
  return y;
}

LocalPoint finite_point(const Place& v, const Rational& e) {
  if (!v.is_finite()) throw std::invalid_argument("finite_point needs a finite place");
  if (e <= Rational(0)) throw std::invalid_argument("Beltrami exponent must be positive");
  LocalPoint y;
  y.place = v;
  y.exponent = e;
  return y;
}

LocalPoint concrete_point(const Place& v, const HahnSeries& a) {
  if (a.p() != v.p) throw std::invalid_argument("Hahn representative over the wrong prime");
  if (a.is_zero() || a.valuation() <= Rational(0)) {
    throw std::domain_error("a point representative needs 0 < val(a)");
  }
  LocalPoint y = finite_point(v, a.valuation());
  y.concrete = a;
  return y;
}

LocalPoint archimedean_point(const Place& v, const Rational& s) {
  if (!v.is_archimedean()) throw std::invalid_argument("archimedean_point needs the archimedean place");
  if (s <= Rational(0)) throw std::invalid_argument("s must be positive");
  LocalPoint y;
  y.place = v;
  y.exponent = s;
  return y;
}

LocalPoint frobenius_point(const LocalPoint& y, int m) {
  if (y.is_archimedean() || m == 0) return y;
  LocalPoint r = y;
  const Rational p(y.place.p);
  r.exponent = y.exponent * p.pow(m);
  if (r.concrete) r.concrete = r.concrete->frobenius_power(m);
  return r;
}

LogValue beltrami(const LocalPoint& y) {
  if (y.is_archimedean()) return LogValue(y.exponent.to_double());
  return LogValue::log_prime(y.place.p, -y.exponent);
}

LogValue local_log_abs(const FieldElement& x, const LocalPoint& y) {
  if (x.is_zero()) throw std::domain_error("log of zero");
  if (y.is_archimedean()) return standard_abs(x, y.place).scaled(y.exponent);
  const Rational o(ord(x, y.place));
  return LogValue::log_prime(y.place.p, -y.exponent * o / Rational(y.place.e));
}

LocalPoint arch_act(const Rational& z_modulus, const LocalPoint& y) {
  if (!y.is_archimedean()) throw std::invalid_argument("arch_act needs an archimedean point");
  if (z_modulus <= Rational(0)) throw std::invalid_argument("modulus must be positive");
  LocalPoint r = y;
  r.exponent = y.exponent * z_modulus;
  return r;
}

double local_distance(const LocalPoint& y1, const LocalPoint& y2) {
  if (!(y1.place == y2.place)) throw std::invalid_argument("local_distance needs points over the same place");
  if (y1.exponent == y2.exponent) return 0.0;
  return std::abs((y1.exponent / y2.exponent).log());
}

HahnSeries switch_description(const HahnSeries& a) {
  if (a.is_zero() || a.valuation() <= Rational(0)) throw std::domain_error("switch_description needs 0 < val(a)");
  // Terms a^n with n val(a) >= cap vanish, so degree floor(cap / val) suffices.
  std::int64_t degree = (a.cap() / a.valuation()).floor() + 1;
  return evaluate_series(artin_hasse(a.p(), static_cast<int>(degree), 1), a);
}

HahnSeries canonical_representative(const HahnSeries& a, int precision, std::int64_t max_units) {
  const std::int64_t p = a.p();
  std::int64_t pn = 1;
  for (int i = 0; i < precision; ++i) {
    pn *= p;
    if (pn > max_units) throw std::invalid_argument("unit group too large for brute-force canonicalization");
  }
  std::optional<HahnSeries> best;
  for (std::int64_t u = 1; u < pn; ++u) {
    if (u % p == 0) continue;
    HahnSeries c = lubin_tate_act(mpz_class(static_cast<long>(u)), precision, a);
    if (!best || series_less(c, *best)) best = c;
  }
  return *best;
}

bool same_point_class(const HahnSeries& a, const HahnSeries& b, int precision, std::int64_t max_units) {
  if (a.p() != b.p()) return false;
  return canonical_representative(a, precision, max_units) == canonical_representative(b, precision, max_units);
}

std::vector<LocalPoint> correspondence_fiber(const NumberField& field, std::int64_t p, const Rational& base_exponent) {
  if (field.degree() > 2) throw std::invalid_argument("unsupported field degree");
  if (base_exponent <= Rational(0)) throw std::invalid_argument("base exponent must be positive");
  std::vector<LocalPoint> fiber;
  for (const auto& v : places_over(field, p)) {
    fiber.push_back(finite_point(v, Rational(v.local_degree()) * base_exponent));
  }
  return fiber;
}

}  // namespace ateich
