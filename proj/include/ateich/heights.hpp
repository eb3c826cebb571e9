#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ateich/adelic.hpp"

namespace ateich {

struct PlaceContribution {
  Place place;
  Rational alpha;
  LogValue contribution;  // max_j alpha_v log|x_j|_{K_{y_v}}
};

struct HeightReport {
  std::string label;
  std::vector<PlaceContribution> places;  // canonical order; omitted places contribute 0
  LogValue total;

  double value() const { return total.value(); }
};

/// h_y(P) = sum_v max_j alpha_v log|x_j|_{K_{y_v}} for P = (x_0 : ... : x_n).
HeightReport height(const Arithmeticoid& y, const std::vector<FieldElement>& P);
/// h_y(z) = h_y((1, z)).
HeightReport height(const Arithmeticoid& y, const FieldElement& z);

struct StabilizedHeight {
  LogValue value;
  LogValue base;           // h_y(z)
  FieldElement argmax;     // the sample element attaining the maximum (1 if none beats it)
  bool strict = false;     // value > base, decided exactly
  std::size_t sample_size = 0;
};

/// max over alpha in sample u {1} of h_{alpha.y}(z): a lower bound for the
/// supremum over L^*. OpenMP over the sample.
StabilizedHeight stabilized_height(const Arithmeticoid& y, const FieldElement& z,
                                   const std::vector<FieldElement>& sample);
/// Serial reference of stabilized_height.
StabilizedHeight stabilized_height_serial(const Arithmeticoid& y, const FieldElement& z,
                                          const std::vector<FieldElement>& sample);

/// +-1, primes up to `prime_bound`, their inverses, and products of at most
/// `max_factors` of these.
std::vector<FieldElement> default_stabilizer_sample(const NumberField& field, std::int64_t prime_bound = 50,
                                                    int max_factors = 3);

/// Element of the ideloid: orders at finitely many finite places, optional
/// unit tags, and the standard archimedean log-modulus.
struct Ideloid {
  std::map<Place, Rational> orders;
  std::map<Place, FieldElement> unit_tags;
  LogValue arch_log;
};

Ideloid principal_ideloid(const FieldElement& x);
Ideloid ideloid_mul(const Ideloid& a, const Ideloid& b);
/// deg_y(I) = sum_v alpha_v log|x_v|_{K_{y_v}}.
LogValue arithmetic_degree(const Arithmeticoid& y, const Ideloid& I);

enum class FrobenioidMode { Integer, Perfection, Realified };

/// Divisor with exponents in Z, Q (perfection) or R (realified). `signed_group`
/// marks elements of the group completion.
struct FrobenioidElement {
  FrobenioidMode mode = FrobenioidMode::Integer;
  bool signed_group = false;
  std::map<Place, Rational> exponents;
  std::map<Place, double> real_exponents;

  friend bool operator==(const FrobenioidElement&, const FrobenioidElement&) = default;
};

struct Frobenioid {
  NumberField field;
  FrobenioidMode mode;

  /// Checks exponent type and effectivity.
  bool admits(const FrobenioidElement& d) const;
};

Frobenioid frobenioid_of(const NumberField& field);
/// Value monoid of an arithmeticoid: the perfection.
Frobenioid frobenioid_of_arithmeticoid(const Arithmeticoid& y);

FrobenioidElement frobenioid_add(const FrobenioidElement& a, const FrobenioidElement& b);
FrobenioidElement perfection(const FrobenioidElement& d);
FrobenioidElement realify(const FrobenioidElement& d);
/// Signed divisor of x, positive at zeros.
FrobenioidElement principal_divisor(const FieldElement& x);
FrobenioidElement effective_part(const FrobenioidElement& d);
/// Pullback along the global Frobenius^m: exponent at v | p scaled by p^{-m}.
/// Throws in integer mode if an exponent leaves Z.
FrobenioidElement frobenius_pullback(const FrobenioidElement& d, int m);

/// Coefficients c_n (n >= 1) of j = 1/q + 744 + sum c_n q^n.
struct JCoefficients {
  std::vector<mpz_class> c;  // c[0] is c_1
  std::string source;
};

/// Reads "n c_n" lines ('#' comments allowed). The default path is the shipped
/// data file, overridable by ATEICH_J_COEFFICIENTS.
JCoefficients load_j_coefficients(const std::string& path = "");

struct TateParameter {
  std::int64_t p = 2;
  int valuation = 0;          // v_p(q) = -v_p(j)
  int precision = 0;          // q is known mod p^precision
  int j_precision = 0;        // j(q) = j mod p^j_precision
  mpz_class residue;          // q mod p^precision
};

/// Inverts j(q) for v_p(j) < 0. The returned q reproduces j to absolute
/// precision M; internally q is computed mod p^{M + 2k}, k = -v_p(j).
TateParameter invert_j_series(std::int64_t p, const Rational& j, int M, const JCoefficients& coeffs);
/// j(q) = 1/q + 744 + sum c_n q^n truncated at terms of valuation >= precision.
mpq_class evaluate_j(const mpz_class& q, std::int64_t p, int precision, const JCoefficients& coeffs);

struct TeichmuellerComparison {
  LogValue norm1;
  LogValue norm2;
  bool equal = false;
};

/// Norms p^{-e_i x} of the Teichmueller lift of an element of valuation x under y1, y2.
TeichmuellerComparison compare_teichmueller_lifts(const Rational& x_valuation, const LocalPoint& y1,
                                                  const LocalPoint& y2);

struct AbcRow {
  std::int64_t a = 0, b = 0, c = 0;
  double h_standard = 0.0;   // h_{y0}(abc)
  double h_moved = 0.0;      // h_{(abc).y0}(abc)
  double log_radical = 0.0;  // log rad(abc)
  double log_c = 0.0;
};

/// Both sides of the height comparison for coprime a + b = c, tabulated only.
AbcRow abc_row(std::int64_t a, std::int64_t b);

}  // namespace ateich
