#include "ateich/zp_series.hpp"

#include <stdexcept>

namespace ateich {

mpz_class ZpSeries::modulus() const {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(precision));
  return m;
}

std::vector<mpq_class> artin_hasse_rational(std::int64_t p, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  // AH' = AH * sum_k T^{p^k - 1}, so n a_n = sum_{p^k <= n} a_{n - p^k}.
  std::vector<mpq_class> a(static_cast<std::size_t>(max_degree) + 1);
  a[0] = 1;
  for (int n = 1; n <= max_degree; ++n) {
    mpq_class s = 0;
    for (std::int64_t pk = 1; pk <= n; pk *= p) s += a[static_cast<std::size_t>(n - pk)];
    s /= n;
    s.canonicalize();
    a[static_cast<std::size_t>(n)] = s;
  }
  return a;
}

ZpSeries artin_hasse(std::int64_t p, int max_degree, int precision) {
  if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  auto exact = artin_hasse_rational(p, max_degree);
  ZpSeries s;
  s.p = p;
  s.precision = precision;
  const mpz_class m = s.modulus();
  const mpz_class pz = static_cast<unsigned long>(p);
  for (std::size_t n = 0; n < exact.size(); ++n) {
    const mpz_class& den = exact[n].get_den();
    if (den % pz == 0) {
      throw std::logic_error("Artin-Hasse coefficient of degree " + std::to_string(n) + " is not p-integral");
    }
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    mpz_class c = exact[n].get_num() * inv;
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    s.coeffs.push_back(c);
  }
  return s;
}

HahnSeries evaluate_series(const ZpSeries& s, const HahnSeries& a) {
  const FiniteField* F = a.field();
  if (F->p() != s.p) throw std::invalid_argument("series and Hahn input have different primes");
  if (s.coeffs.empty()) return HahnSeries(F, a.cap());
  const Fq c0 = F->from_int(static_cast<std::int64_t>(mpz_class(s.coeffs[0] % s.p).get_si()));
  if (a.is_zero()) return HahnSeries::constant(c0, a.cap());
  const Rational v = a.valuation();
  if (v <= Rational(0)) throw std::domain_error("series evaluation needs positive valuation");
  Rational cap = std::min(a.cap(), v * Rational(s.max_degree() + 1));
  HahnSeries result = HahnSeries::constant(c0, cap);
  HahnSeries power = HahnSeries::constant(F->one(), cap);
  const HahnSeries x = a.truncated(cap);
  for (int n = 1; n <= s.max_degree(); ++n) {
    power = power * x;
    if (power.is_zero()) break;
    long c = mpz_class(s.coeffs[static_cast<std::size_t>(n)] % s.p).get_si();
    if (c != 0) result += power.scaled(F->from_int(c));
  }
  return result.truncated(cap);
}

AdditivityReport artin_hasse_additivity(std::int64_t p, int k, int trials, std::uint64_t seed, const Rational& cap) {
  auto field = FiniteField::get(p, k);
  std::mt19937_64 rng(seed);
  const Rational lo(1, 2);
  // Enough terms that a^n falls below the cap for every n beyond the series.
  const int degree = static_cast<int>((cap / lo).floor()) + 1;
  const ZpSeries ah = artin_hasse(p, degree, 1);
  AdditivityReport r{p, seed, trials, 0, std::nullopt};
  for (int t = 0; t < trials; ++t) {
    auto a = HahnSeries::random(field.get(), rng, 3, lo, Rational(3), 4, cap);
    auto b = HahnSeries::random(field.get(), rng, 3, lo, Rational(3), 4, cap);
    auto diff = evaluate_series(ah, a + b) - evaluate_series(ah, a) * evaluate_series(ah, b);
    if (diff.is_zero()) {
      ++r.holds;
    } else if (!r.worst_defect || diff.valuation() < *r.worst_defect) {
      r.worst_defect = diff.valuation();
    }
  }
  return r;
}

}  // namespace ateich
