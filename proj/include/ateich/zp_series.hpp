#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "ateich/hahn.hpp"

namespace ateich {

/// Power series with coefficients in Z_p, stored as residues mod p^precision.
struct ZpSeries {
  std::int64_t p = 2;
  int precision = 1;
  std::vector<mpz_class> coeffs;  // coeffs[n] is the coefficient of T^n

  int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }
  mpz_class modulus() const;
};

/// Exact rational coefficients of exp(sum_{n>=0} T^{p^n}/p^n) up to max_degree.
std::vector<mpq_class> artin_hasse_rational(std::int64_t p, int max_degree);

/// Artin-Hasse series reduced mod p^precision. Throws std::logic_error if a
/// coefficient fails to be p-integral.
ZpSeries artin_hasse(std::int64_t p, int max_degree, int precision);

/// sum (c_n mod p) a^n. The result cap is lowered to (max_degree + 1) val(a)
/// when the series is too short to reach the input cap.
HahnSeries evaluate_series(const ZpSeries& s, const HahnSeries& a);

struct AdditivityReport {
  std::int64_t p = 2;
  std::uint64_t seed = 0;
  int trials = 0;
  int holds = 0;                 // AH(a + b) = AH(a) AH(b) at the working cap
  std::optional<Rational> worst_defect;  // least valuation of AH(a + b) - AH(a) AH(b)
};

/// Empirical test of AH(a + b) = AH(a) AH(b) for random a, b in the maximal
/// ideal of F_{p^k}((t^Q)), truncated at `cap`. Reports, asserts nothing.
AdditivityReport artin_hasse_additivity(std::int64_t p, int k, int trials, std::uint64_t seed,
                                        const Rational& cap = Rational(4));

}  // namespace ateich
