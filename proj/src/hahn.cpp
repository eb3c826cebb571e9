#include "ateich/hahn.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ateich {

HahnSeries HahnSeries::monomial(const Fq& c, const Rational& exponent, const Rational& cap) {
  HahnSeries s(c.field(), cap);
  s.add_term(exponent, c);
  return s;
}

HahnSeries HahnSeries::random(const FiniteField* field, std::mt19937_64& rng, int terms, const Rational& min_exp,
                              const Rational& max_exp, std::int64_t max_den, const Rational& cap,
                              bool prime_field_coeffs) {
  HahnSeries s(field, cap);
  std::uniform_int_distribution<std::int64_t> den(1, max_den);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int guard = 0;
  while (static_cast<int>(s.terms_.size()) < terms && guard++ < 100 * terms) {
    std::int64_t d = den(rng);
    std::int64_t lo = (min_exp * Rational(d)).floor();
    std::int64_t hi = (max_exp * Rational(d)).floor();
    std::uniform_int_distribution<std::int64_t> num(lo, hi);
    Rational e(num(rng), d);
    if (e < min_exp || e >= max_exp || e >= cap) continue;
    Fq c = prime_field_coeffs ? field->random_prime_field(rng, true) : field->random(rng);
    if (c.is_zero() || s.terms_.count(e)) continue;
    s.terms_.emplace(e, c);
  }
  return s;
}

Rational HahnSeries::valuation() const {
  if (terms_.empty()) throw std::domain_error("valuation of the zero series");
  return terms_.begin()->first;
}

const Fq& HahnSeries::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of the zero series");
  return terms_.begin()->second;
}

Fq HahnSeries::coeff(const Rational& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_->zero() : it->second;
}

void HahnSeries::add_term(const Rational& e, const Fq& c) {
  if (e >= cap_ || c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HahnSeries HahnSeries::truncated(const Rational& cap) const {
  HahnSeries r(field_, std::min(cap, cap_));
  for (const auto& [e, c] : terms_) {
    if (e >= r.cap_) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

void HahnSeries::check_compatible(const HahnSeries& o) const {
  if (field_ != o.field_) throw std::invalid_argument("Hahn series over different coefficient fields");
}

HahnSeries HahnSeries::operator-() const {
  HahnSeries r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

HahnSeries& HahnSeries::operator+=(const HahnSeries& o) {
  check_compatible(o);
  if (o.cap_ < cap_) *this = truncated(o.cap_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HahnSeries& HahnSeries::operator-=(const HahnSeries& o) { return *this += -o; }

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
  a.check_compatible(b);
  HahnSeries r(a.field_, std::min(a.cap_, b.cap_));
  if (a.is_zero() || b.is_zero()) return r;
  // Terms of x*y are known only below min(cap_x + val y, cap_y + val x).
  r.cap_ = std::min(a.cap_ + b.valuation(), b.cap_ + a.valuation());
  r.cap_ = std::min(r.cap_, std::min(a.cap_, b.cap_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Rational e = ea + eb;
      if (e >= r.cap_) break;
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

HahnSeries HahnSeries::scaled(const Fq& c) const {
  HahnSeries r(field_, cap_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
  return r;
}

HahnSeries HahnSeries::pow(unsigned n) const {
  HahnSeries r = constant(field_->one(), cap_);
  HahnSeries b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

HahnSeries HahnSeries::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of the zero series");
  const Rational a = valuation();
  const Fq cinv = leading_coeff().inverse();
  // x = c t^a (1 + u) with val(u) > 0; x^{-1} = c^{-1} t^{-a} sum (-u)^n.
  HahnSeries u(field_, cap_ - a);
  for (const auto& [e, c] : terms_) {
    if (e == a) continue;
    u.add_term(e - a, c * cinv);
  }
  HahnSeries neg_u = -u;
  HahnSeries sum = constant(field_->one(), cap_ - a);
  HahnSeries power = sum;
  while (!neg_u.is_zero()) {
    power = power * neg_u;
    if (power.is_zero()) break;
    sum += power;
  }
  HahnSeries r(field_, cap_);
  for (const auto& [e, c] : sum.terms_) r.add_term(e - a, c * cinv);
  return r;
}

HahnSeries HahnSeries::frobenius() const {
  const Rational p(field_->p());
  HahnSeries r(field_, cap_ * p);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e * p, c.frobenius());
  return r;
}

HahnSeries HahnSeries::inverse_frobenius() const {
  const Rational p(field_->p());
  HahnSeries r(field_, cap_ / p);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e / p, c.inverse_frobenius());
  return r;
}

HahnSeries HahnSeries::frobenius_power(int m) const {
  HahnSeries r = *this;
  for (int i = 0; i < m; ++i) r = r.frobenius();
  for (int i = 0; i > m; --i) r = r.inverse_frobenius();
  return r;
}

bool operator==(const HahnSeries& a, const HahnSeries& b) {
  if (a.field_ != b.field_) return false;
  Rational cap = std::min(a.cap_, b.cap_);
  return a.truncated(cap).terms_ == b.truncated(cap).terms_;
}

std::string HahnSeries::str() const {
  std::ostringstream os;
  if (terms_.empty()) os << "0";
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*t^" << e;
  }
  os << " + O(t^" << cap_ << ")";
  return os.str();
}

}  // namespace ateich
