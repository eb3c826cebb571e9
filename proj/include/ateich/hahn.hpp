#pragma once

#include <map>
#include <random>
#include <string>

#include "ateich/finite_field.hpp"
#include "ateich/rational.hpp"

namespace ateich {

/// Truncated Hahn series  sum c_a t^a  over F_{p^k} with rational exponents.
///
/// Exponents at or above `cap` are dropped. Binary operations use the smaller
/// of the two caps.
class HahnSeries {
 public:
  HahnSeries(const FiniteField* field, Rational cap) : field_(field), cap_(cap) {}
  static HahnSeries monomial(const Fq& c, const Rational& exponent, const Rational& cap);
  static HahnSeries constant(const Fq& c, const Rational& cap) { return monomial(c, Rational(0), cap); }
  /// `terms` nonzero coefficients, exponents num/den with den <= max_den and
  /// min_exp <= exponent < max_exp.
  static HahnSeries random(const FiniteField* field, std::mt19937_64& rng, int terms, const Rational& min_exp,
                           const Rational& max_exp, std::int64_t max_den, const Rational& cap,
                           bool prime_field_coeffs = false);

  const FiniteField* field() const { return field_; }
  std::int64_t p() const { return field_->p(); }
  const Rational& cap() const { return cap_; }
  const std::map<Rational, Fq>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Least exponent; throws for the zero series.
  Rational valuation() const;
  const Fq& leading_coeff() const;
  Fq coeff(const Rational& e) const;

  /// Adds c t^e (ignored when e >= cap).
  void add_term(const Rational& e, const Fq& c);
  HahnSeries truncated(const Rational& cap) const;

  HahnSeries operator-() const;
  HahnSeries& operator+=(const HahnSeries& o);
  HahnSeries& operator-=(const HahnSeries& o);
  friend HahnSeries operator+(HahnSeries a, const HahnSeries& b) { return a += b; }
  friend HahnSeries operator-(HahnSeries a, const HahnSeries& b) { return a -= b; }
  friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
  HahnSeries scaled(const Fq& c) const;
  HahnSeries pow(unsigned n) const;
  /// Geometric series off the leading term, truncated at the cap.
  HahnSeries inverse() const;

  HahnSeries frobenius() const;
  HahnSeries inverse_frobenius() const;
  /// Frobenius^m for any integer m.
  HahnSeries frobenius_power(int m) const;

  /// Equality of the truncations at the common cap.
  friend bool operator==(const HahnSeries& a, const HahnSeries& b);

  std::string str() const;

 private:
  void check_compatible(const HahnSeries& o) const;

  const FiniteField* field_;
  Rational cap_;
  std::map<Rational, Fq> terms_;
};

}  // namespace ateich
