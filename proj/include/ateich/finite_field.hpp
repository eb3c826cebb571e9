#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace ateich {

class Fq;

/// F_{p^k} = F_p[X]/(m(X)) for the lexicographically smallest monic irreducible m of degree k.
class FiniteField {
 public:
  /// Shared, immutable instances; safe to call from several threads.
  static std::shared_ptr<const FiniteField> get(std::int64_t p, int k);

  std::int64_t p() const { return p_; }
  int k() const { return k_; }
  /// Coefficients of m, lowest degree first, leading 1 included.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  Fq zero() const;
  Fq one() const;
  Fq from_int(std::int64_t n) const;
  Fq from_coeffs(std::vector<std::int64_t> c) const;
  Fq random(std::mt19937_64& rng) const;
  /// Element of the prime subfield chosen uniformly, nonzero if requested.
  Fq random_prime_field(std::mt19937_64& rng, bool nonzero) const;

  FiniteField(std::int64_t p, int k);

 private:
  std::int64_t p_;
  int k_;
  std::vector<std::int64_t> modulus_;
};

/// Irreducibility over F_p by Rabin's test; `f` monic, lowest degree first.
bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p);

class Fq {
 public:
  Fq() = default;
  Fq(const FiniteField* field, std::vector<std::int64_t> c) : field_(field), c_(std::move(c)) {}

  const FiniteField* field() const { return field_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in the prime field.
  bool in_prime_field() const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  Fq scaled(std::int64_t n) const;
  Fq inverse() const;
  Fq pow(std::uint64_t e) const;
  Fq frobenius() const { return pow(static_cast<std::uint64_t>(field_->p())); }
  /// The unique p-th root.
  Fq inverse_frobenius() const;

  friend bool operator==(const Fq& a, const Fq& b) { return a.c_ == b.c_; }
  friend auto operator<=>(const Fq& a, const Fq& b) { return a.c_ <=> b.c_; }

  std::string str() const;

 private:
  const FiniteField* field_ = nullptr;
  std::vector<std::int64_t> c_;
};

}  // namespace ateich
