#include "ateich/log_value.hpp"

#include <cstdio>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ateich {

LogValue LogValue::log_prime(std::int64_t p, const Rational& coeff) {
  LogValue v;
  v.add_term(p, coeff);
  return v;
}

Rational LogValue::coeff(std::int64_t p) const {
  auto it = exact_.find(p);
  return it == exact_.end() ? Rational(0) : it->second;
}

void LogValue::add_term(std::int64_t p, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = exact_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) exact_.erase(it);
  }
}

double LogValue::value() const {
  double s = real_;
  for (const auto& [p, c] : exact_) s += c.to_double() * std::log(static_cast<double>(p));
  return s;
}

LogValue& LogValue::operator+=(const LogValue& o) {
  for (const auto& [p, c] : o.exact_) add_term(p, c);
  real_ += o.real_;
  return *this;
}

LogValue& LogValue::operator-=(const LogValue& o) { return *this += -o; }

LogValue LogValue::operator-() const {
  LogValue r;
  for (const auto& [p, c] : exact_) r.exact_.emplace(p, -c);
  r.real_ = -real_;
  return r;
}

LogValue LogValue::scaled(const Rational& c) const {
  LogValue r;
  if (c.is_zero()) return r;
  for (const auto& [p, k] : exact_) r.exact_.emplace(p, k * c);
  r.real_ = real_ * c.to_double();
  return r;
}

std::string LogValue::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : exact_) {
    if (!first) os << " + ";
    os << "(" << c << ")*log(" << p << ")";
    first = false;
  }
  if (real_ != 0.0 || first) {
    if (!first) os << " + ";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", real_);
    os << buf;
  }
  return os.str();
}

LogValue log_abs_rational(const Rational& x) {
  if (x.is_zero()) throw std::domain_error("log of zero");
  LogValue out;
  for (auto p : prime_divisors(x.num())) out += LogValue::log_prime(p, padic_valuation(x.num(), p));
  for (auto p : prime_divisors(x.den())) out -= LogValue::log_prime(p, padic_valuation(x.den(), p));
  return out;
}

}  // namespace ateich
