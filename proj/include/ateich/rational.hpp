#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ateich {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Every
/// operation goes through 128-bit intermediates and throws
/// std::overflow_error when the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "n", "-n", "n/d". Throws std::invalid_argument on malformed input.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Natural log of a positive rational, computed as log(num) - log(den).
  double log() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational inverse() const;
  /// Integer power, negative exponents allowed for nonzero values.
  Rational pow(int e) const;
  /// Largest integer <= value.
  std::int64_t floor() const;

  std::string str() const;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// p-adic valuation of a nonzero integer.
int padic_valuation(std::int64_t n, std::int64_t p);
/// p-adic valuation of a nonzero rational.
int padic_valuation(const Rational& r, std::int64_t p);

bool is_prime(std::int64_t n);
/// Primes q <= bound in increasing order.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
/// Distinct prime divisors of |n| (n != 0) in increasing order.
std::vector<std::int64_t> prime_divisors(std::int64_t n);
/// Checked p^e for e >= 0.
std::int64_t ipow(std::int64_t p, int e);

}  // namespace ateich

template <>
struct std::hash<ateich::Rational> {
  std::size_t operator()(const ateich::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
