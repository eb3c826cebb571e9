#include "ateich/lubin_tate.hpp"

#include <stdexcept>

namespace ateich {

HahnSeries lubin_tate_power(const mpz_class& u, int precision, const HahnSeries& a) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  if (u < 0) throw std::invalid_argument("u must be given as a residue in [0, p^N)");
  const FiniteField* F = a.field();
  const std::int64_t p = F->p();
  if (a.is_zero()) return a;
  const Rational v = a.valuation();
  if (v <= Rational(0)) throw std::domain_error("Lubin-Tate action needs positive valuation");

  Rational cap = a.cap();
  {
    // p^precision * v, guarding against overflow for large precision.
    Rational bound = v;
    for (int i = 0; i < precision && bound < cap; ++i) bound = bound * Rational(p);
    cap = std::min(cap, bound);
  }
  const HahnSeries one = HahnSeries::constant(F->one(), cap);
  HahnSeries result = one;
  HahnSeries ap = a.truncated(cap);  // a^{p^i}
  mpz_class rest = u;
  for (int i = 0; i < precision && rest != 0; ++i) {
    long digit = mpz_class(rest % p).get_si();
    rest /= p;
    if (digit != 0) result = result * (one + ap).pow(static_cast<unsigned>(digit));
    if (rest != 0) ap = ap.frobenius().truncated(cap);
    if (ap.is_zero()) break;
  }
  return (result - one).truncated(cap);
}

HahnSeries lubin_tate_act(const mpz_class& u, int precision, const HahnSeries& a) {
  if (mpz_class(u % a.p()) == 0) throw std::invalid_argument("Lubin-Tate action needs a p-adic unit");
  return lubin_tate_power(u, precision, a);
}

}  // namespace ateich
