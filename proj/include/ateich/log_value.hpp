#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ateich/rational.hpp"

namespace ateich {

/// A real number of the form  sum_p c_p * log(p) + r  with exact rational c_p.
///
/// Finite-place absolute values of number-field elements live entirely in the
/// exact part; only genuinely transcendental archimedean data uses `real`.
class LogValue {
 public:
  LogValue() = default;
  explicit LogValue(double real) : real_(real) {}
  static LogValue log_prime(std::int64_t p, const Rational& coeff);

  const std::map<std::int64_t, Rational>& exact() const { return exact_; }
  double real() const { return real_; }
  Rational coeff(std::int64_t p) const;

  bool exact_is_zero() const { return exact_.empty(); }
  bool is_exactly_zero() const { return exact_.empty() && real_ == 0.0; }
  /// True when the value is a single prime's log multiple (or zero) with no real part.
  bool is_single_prime() const { return real_ == 0.0 && exact_.size() <= 1; }

  double value() const;

  LogValue& operator+=(const LogValue& o);
  LogValue& operator-=(const LogValue& o);
  LogValue operator-() const;
  LogValue scaled(const Rational& c) const;
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
  friend bool operator==(const LogValue& a, const LogValue& b) = default;

  std::string str() const;

 private:
  void add_term(std::int64_t p, const Rational& c);

  std::map<std::int64_t, Rational> exact_;
  double real_ = 0.0;
};

/// Exact log|x| for a nonzero rational, as sum of v_p(x) log p.
LogValue log_abs_rational(const Rational& x);

}  // namespace ateich
