#include "ateich/cohomology.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ateich {

namespace {

mpz_class prime_power(std::int64_t p, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
  return r;
}

mpz_class reduce(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

}  // namespace

mpz_class KummerClass::modulus() const { return prime_power(place.p, precision); }

KummerClass KummerClass::operator+(const KummerClass& o) const {
  if (!(place == o.place) || precision != o.precision)
    throw std::invalid_argument("Kummer classes at different places or precisions");
  KummerClass r = *this;
  r.order_part = reduce(order_part + o.order_part, modulus());
  r.unit_tag = unit_tag * o.unit_tag;
  return r;
}

std::string KummerClass::key() const {
  return place.str() + "|" + std::to_string(precision) + "|" + order_part.get_str() + "|" + unit_tag.str();
}

AdelicClass AdelicClass::operator+(const AdelicClass& o) const {
  if (!(field == o.field) || precision != o.precision)
    throw std::invalid_argument("adelic classes over different fields or precisions");
  AdelicClass r = *this;
  for (const auto& [v, c] : o.finite) {
    auto it = r.finite.find(v);
    if (it == r.finite.end())
      r.finite.emplace(v, c);
    else
      it->second = it->second + c;
  }
  // Drop components that became trivial so equality is by content.
  FieldElement one(field, Rational(1));
  for (auto it = r.finite.begin(); it != r.finite.end();) {
    if (it->second.order_part == 0 && it->second.unit_tag == one)
      it = r.finite.erase(it);
    else
      ++it;
  }
  r.arch_q = arch_q * o.arch_q;
  return r;
}

bool AdelicClass::is_trivial() const { return finite.empty() && arch_q == std::complex<double>(1.0, 0.0); }

std::string AdelicClass::key() const {
  std::string k = field.spec() + "#" + std::to_string(precision) + "#" + hex(arch_q.real()) + "," + hex(arch_q.imag());
  for (const auto& [v, c] : finite) k += "#" + c.key();
  return k;
}

KummerClass kummer_class(const FieldElement& x, const Place& v, int n) {
  if (x.is_zero()) throw std::invalid_argument("kummer_class of zero");
  if (!v.is_finite()) throw std::invalid_argument("kummer_class needs a finite place");
  if (n < 1) throw std::invalid_argument("kummer_class precision must be >= 1");
  const int k = ord(x, v);
  KummerClass c{v, n, 0, x / uniformizer(x.field(), v).pow(k)};
  c.order_part = reduce(mpz_class(k), c.modulus());
  return c;
}

KummerClass trivial_kummer_class(const NumberField& field, const Place& v, int n) {
  return KummerClass{v, n, 0, FieldElement(field, Rational(1))};
}

AdelicClass tate_class(const NumberField& field, const std::map<Place, FieldElement>& semistable,
                       std::complex<double> schottky_arch, int n) {
  AdelicClass c;
  c.field = field;
  c.precision = n;
  c.arch_q = schottky_arch;
  for (const auto& [v, q] : semistable) {
    if (q.is_zero() || ord(q, v) <= 0) throw std::domain_error("Tate parameter must satisfy |q_v| < 1");
    c.finite.emplace(v, kummer_class(q, v, n));
  }
  return c;
}

FieldElement tate_parameter_element(const TateParameter& t) {
  int m = 0;
  std::int64_t pm = 1;
  while (m < t.precision && pm <= std::numeric_limits<std::int64_t>::max() / 4 / t.p) {
    pm *= t.p;
    ++m;
  }
  if (m <= t.valuation) throw std::overflow_error("Tate parameter does not fit in 64 bits");
  mpz_class r = reduce(t.residue, mpz_class(static_cast<long>(pm)));
  return FieldElement(NumberField::rationals(), Rational(r.get_si()));
}

bool bloch_kato_member(const AdelicClass& c) {
  for (const auto& [v, k] : c.finite)
    if (k.order_part != 0) return false;
  return true;
}

AdelicClass apply_transform(const AdelicClass& c, const Transform& t) {
  if (t.frobenius_shift < 0) throw std::invalid_argument("frobenius_shift must be >= 0");
  AdelicClass r = c;
  FieldElement one(c.field, Rational(1));
  for (auto& [v, k] : r.finite) {
    if (t.place && !(*t.place == v)) continue;
    if (mpz_divisible_ui_p(t.unit_scale.get_mpz_t(), static_cast<unsigned long>(v.p)))
      throw std::invalid_argument("unit_scale is not a p-adic unit at " + v.str());
    mpz_class s = t.unit_scale * prime_power(v.p, t.frobenius_shift);
    k.order_part = reduce(k.order_part * s, k.modulus());
    k.unit_tag = k.unit_tag.pow(static_cast<int>(ipow(v.p, t.frobenius_shift)));
    if (t.unit_factor) k.unit_tag *= *t.unit_factor;
  }
  if (t.place && t.unit_factor && !r.finite.contains(*t.place)) {
    KummerClass k = trivial_kummer_class(c.field, *t.place, c.precision);
    k.unit_tag = *t.unit_factor;
    r.finite.emplace(*t.place, k);
  }
  for (auto it = r.finite.begin(); it != r.finite.end();) {
    if (it->second.order_part == 0 && it->second.unit_tag == one)
      it = r.finite.erase(it);
    else
      ++it;
  }
  if (!t.place) {
    if (!t.unit_scale.fits_slong_p()) throw std::overflow_error("unit_scale too large for the archimedean slot");
    r.arch_q = std::pow(c.arch_q, static_cast<int>(t.unit_scale.get_si()));
  }
  return r;
}

std::set<AdelicClass> collate(const std::map<std::string, AdelicClass>& classes,
                              const std::map<std::string, std::vector<Transform>>& isos) {
  std::set<AdelicClass> out;
  for (const auto& [label, c] : classes) {
    auto it = isos.find(label);
    if (it == isos.end() || it->second.empty()) throw std::invalid_argument("no transform for label " + label);
    for (const auto& t : it->second) out.insert(apply_transform(c, t));
  }
  return out;
}

}  // namespace ateich
