#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ateich/log_value.hpp"
#include "ateich/rational.hpp"

namespace ateich {

/// Q or an imaginary quadratic field Q(sqrt(-d)), d squarefree and positive.
///
/// Elements use the integral basis {1, w}: w = sqrt(-d) when -d = 2,3 mod 4 and
/// w = (1 + sqrt(-d))/2 when -d = 1 mod 4. The minimal polynomial of w is
/// X^2 - t X + n.
class NumberField {
 public:
  static NumberField rationals() { return NumberField(0); }
  static NumberField imaginary_quadratic(std::int64_t d);
  /// Accepts "Q", "Q(i)", "Q(sqrt(-d))".
  static NumberField parse(std::string_view spec);

  bool is_rationals() const { return d_ == 0; }
  int degree() const { return is_rationals() ? 1 : 2; }
  std::int64_t d() const { return d_; }
  std::int64_t discriminant() const;
  std::int64_t trace_w() const { return t_; }
  std::int64_t norm_w() const { return n_; }
  std::complex<double> embed_w() const;
  std::string spec() const;

  friend bool operator==(const NumberField&, const NumberField&) = default;

 private:
  explicit NumberField(std::int64_t d);
  std::int64_t d_ = 0;
  std::int64_t t_ = 0;
  std::int64_t n_ = 0;
};

class FieldElement {
 public:
  FieldElement(NumberField field, Rational a, Rational b = Rational(0));
  static FieldElement rational(const NumberField& field, const Rational& q) { return {field, q}; }
  /// Parses sums of terms like "2+i", "1/5", "3-2*sqrt(-3)", "1/2+w".
  static FieldElement parse(const NumberField& field, std::string_view text);

  const NumberField& field() const { return field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  /// Membership in the ring of integers (coordinates in the integral basis are integers).
  bool is_integral() const { return a_.is_integer() && b_.is_integer(); }
  Rational norm() const;
  FieldElement conjugate() const;
  FieldElement inverse() const;
  FieldElement pow(int e) const;
  std::complex<double> embed() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  std::string str() const;

 private:
  void check_same_field(const FieldElement& o) const;

  NumberField field_;
  Rational a_;
  Rational b_;
};

enum class PlaceKind { Archimedean, Finite };
enum class Splitting { Rational, Split, Inert, Ramified, Archimedean };

/// A place of a supported number field.
///
/// Canonical order: the archimedean place first, then finite places by
/// rational prime and conjugate index.
struct Place {
  PlaceKind kind = PlaceKind::Archimedean;
  std::int64_t p = 0;  // 0 for the archimedean place
  int e = 1;           // ramification index
  int f = 1;           // residue degree (archimedean: 1 real, 2 complex)
  int conjugate_index = 0;
  Splitting splitting = Splitting::Archimedean;
  std::int64_t root = 0;  // root of the minimal polynomial of w mod p selecting the prime ideal

  static Place archimedean(const NumberField& field);

  bool is_archimedean() const { return kind == PlaceKind::Archimedean; }
  bool is_finite() const { return kind == PlaceKind::Finite; }
  /// [L_v : Q_p] (finite) or [L_v : R] (archimedean).
  int local_degree() const { return e * f; }
  std::string str() const;

  friend bool operator==(const Place& a, const Place& b) {
    return a.kind == b.kind && a.p == b.p && a.conjugate_index == b.conjugate_index;
  }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    if (a.kind != b.kind) return a.is_archimedean() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.conjugate_index <=> b.conjugate_index;
  }
};

/// Kronecker symbol (D / p) for a prime p.
int kronecker_symbol(std::int64_t D, std::int64_t p);

/// Places above the rational prime p.
std::vector<Place> places_over(const NumberField& field, std::int64_t p);
/// The archimedean place followed by all finite places over primes <= bound.
std::vector<Place> places_up_to(const NumberField& field, std::int64_t bound);
/// First `count` places in canonical order.
std::vector<Place> first_places(const NumberField& field, std::size_t count);
/// Looks up a place by text "inf", "p", or "p:k" (k = conjugate index).
Place parse_place(const NumberField& field, std::string_view text);

/// Normalized additive valuation, ord_v(uniformizer) = 1. Throws for x = 0 or
/// an archimedean place.
int ord(const FieldElement& x, const Place& v);

/// Rational primes below which x has nonzero order somewhere.
std::vector<std::int64_t> support_primes(const FieldElement& x);
/// Finite places where x has nonzero order, with the orders.
std::map<Place, int> divisor(const FieldElement& x);

/// A global element of v-order exactly one.
FieldElement uniformizer(const NumberField& field, const Place& v);

/// Artin-normalized log|x|_v. Finite places: -f_v ord_v(x) log p.
/// Archimedean: log|N_{L_v/R}(x)|, expressed exactly through the norm's factorization.
LogValue standard_abs(const FieldElement& x, const Place& v);
/// Floating-point log|x|_v at the archimedean place computed from the complex embedding.
double archimedean_log_abs(const FieldElement& x);

struct ProductFormulaReport {
  std::map<std::int64_t, Rational> finite_exponent_sum;  // coefficient of log p over v | p
  std::map<std::int64_t, Rational> archimedean_coeff;    // coefficient of log p at infinity
  double archimedean_log = 0.0;
  double residual = 0.0;
  bool exact_cancellation = false;
};

ProductFormulaReport product_formula_check(const FieldElement& x);

struct ProductFormulaBatch {
  std::size_t count = 0;
  std::size_t exact = 0;         // elements whose finite exponent sums all cancel
  double max_residual = 0.0;
};

/// product_formula_check on `count` random nonzero elements with numerators
/// and denominators up to `height`. OpenMP over the batch.
ProductFormulaBatch product_formula_batch(const NumberField& field, std::size_t count, std::uint64_t seed,
                                          std::int64_t height = 1000);
ProductFormulaBatch product_formula_batch_serial(const NumberField& field, std::size_t count, std::uint64_t seed,
                                                 std::int64_t height = 1000);
/// The random elements used by the batch drivers.
std::vector<FieldElement> random_elements(const NumberField& field, std::size_t count, std::uint64_t seed,
                                          std::int64_t height);

/// The torsion subgroup of L^*.
std::vector<FieldElement> roots_of_unity(const NumberField& field);

}  // namespace ateich
