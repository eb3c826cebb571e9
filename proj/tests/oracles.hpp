#pragma once

// Independent reference computations shared by the unit tests and the acceptance binary.

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "ateich/adelic.hpp"
#include "ateich/hahn.hpp"
#include "ateich/szpiro.hpp"

namespace ateich::oracle {

// j-coefficients from E4^3 / Delta, recomputed here independently of the data file.
inline std::vector<mpz_class> j_oracle(std::size_t count) {
  const std::size_t n = count + 2;
  auto mul = [n](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  };
  std::vector<mpz_class> e4(n, 0);
  e4[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    mpz_class s = 0;
    for (std::size_t d = 1; d <= k; ++d) {
      if (k % d == 0) s += mpz_class(static_cast<unsigned long>(d * d * d));
    }
    e4[k] = 240 * s;
  }
  auto e43 = mul(mul(e4, e4), e4);
  // eta^24 / q = prod (1 - q^k)^24
  std::vector<mpz_class> prod(n, 0);
  prod[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    for (int t = 0; t < 24; ++t) {
      for (std::size_t i = n - 1; i >= k; --i) prod[i] -= prod[i - k];
    }
  }
  std::vector<mpz_class> inv(n, 0);
  inv[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    mpz_class s = 0;
    for (std::size_t i = 1; i <= m; ++i) s += prod[i] * inv[m - i];
    inv[m] = -s;
  }
  auto jq = mul(e43, inv);
  std::vector<mpz_class> c;
  for (std::size_t m = 1; m <= count; ++m) c.push_back(jq[m + 1]);
  return c;
}

inline int vp(mpq_class x, std::int64_t p) {
  if (x == 0) return 1 << 20;
  int v = 0;
  mpz_class num = x.get_num(), den = x.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}


// exp(L) with L = sum_{p^n <= D} T^{p^n}/p^n, expanded directly as sum L^k / k!.
inline std::vector<mpq_class> exp_oracle(std::int64_t p, int D) {
  std::vector<mpq_class> L(static_cast<std::size_t>(D) + 1, 0);
  for (std::int64_t q = 1; q <= D; q *= p) L[static_cast<std::size_t>(q)] = mpq_class(1, q);
  std::vector<mpq_class> result(L.size(), 0), power(L.size(), 0);
  result[0] = 1;
  power[0] = 1;
  mpz_class fact = 1;
  for (int k = 1; k <= D; ++k) {
    std::vector<mpq_class> next(L.size(), 0);
    for (int i = 0; i <= D; ++i) {
      if (power[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 1; i + j <= D; ++j) {
        next[static_cast<std::size_t>(i + j)] += power[static_cast<std::size_t>(i)] * L[static_cast<std::size_t>(j)];
      }
    }
    power = next;
    fact *= k;
    for (int i = 0; i <= D; ++i) result[static_cast<std::size_t>(i)] += power[static_cast<std::size_t>(i)] / fact;
  }
  return result;
}

// Integer-coefficient series in t^{Q>=0}, truncated at cap: the oracle ring for Witt vectors.
using ZSeries = std::map<Rational, mpz_class>;

inline ZSeries zmul(const ZSeries& a, const ZSeries& b, const Rational& cap) {
  ZSeries r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Rational e = ea + eb;
      if (e >= cap) continue;
      r[e] += ca * cb;
    }
  }
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

inline ZSeries zpow(const ZSeries& a, std::int64_t n, const Rational& cap) {
  ZSeries r{{Rational(0), 1}};
  for (std::int64_t i = 0; i < n; ++i) r = zmul(r, a, cap);
  return r;
}

inline ZSeries zaxpy(ZSeries a, const ZSeries& b, const mpz_class& s) {
  for (const auto& [e, c] : b) a[e] += s * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

inline ZSeries lift(const HahnSeries& h) {
  ZSeries r;
  for (const auto& [e, c] : h.terms()) r[e] = c.coeffs()[0];
  return r;
}

inline HahnSeries reduce(const ZSeries& z, const FiniteField* F, const Rational& cap) {
  HahnSeries h(F, cap);
  for (const auto& [e, c] : z) {
    mpz_class r = c % F->p();
    if (r < 0) r += F->p();
    h.add_term(e, F->from_int(r.get_si()));
  }
  return h;
}

inline mpz_class ipowz(std::int64_t p, int e) {
  mpz_class r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

inline std::vector<ZSeries> ghosts(const std::vector<ZSeries>& x, std::int64_t p, const Rational& cap) {
  std::vector<ZSeries> w;
  for (std::size_t n = 0; n < x.size(); ++n) {
    ZSeries g;
    for (std::size_t i = 0; i <= n; ++i) {
      g = zaxpy(g, zpow(x[i], ipowz(p, static_cast<int>(n - i)).get_si(), cap), ipowz(p, static_cast<int>(i)));
    }
    w.push_back(g);
  }
  return w;
}

inline std::vector<ZSeries> from_ghosts(const std::vector<ZSeries>& w, std::int64_t p, const Rational& cap) {
  std::vector<ZSeries> z;
  for (std::size_t n = 0; n < w.size(); ++n) {
    ZSeries rest = w[n];
    for (std::size_t i = 0; i < n; ++i) {
      rest = zaxpy(rest, zpow(z[i], ipowz(p, static_cast<int>(n - i)).get_si(), cap), -ipowz(p, static_cast<int>(i)));
    }
    mpz_class d = ipowz(p, static_cast<int>(n));
    for (auto& [e, c] : rest) {
      if (c % d != 0) throw std::logic_error("ghost components not integral");
      c /= d;
    }
    z.push_back(rest);
  }
  return z;
}


constexpr double kPi = std::numbers::pi;

// Independent lift: follow the angle of g(cos x, sin x) along a fine path from
// x = 0, unwrapping each increment into (-pi, pi].
inline double path_lift(const UnivCoverElt& e, double x, int steps = 20000) {
  const Mat2& g = e.matrix;
  auto ang = [&](double t) { return std::atan2(g.c * std::cos(t) + g.d * std::sin(t), g.a * std::cos(t) + g.b * std::sin(t)); };
  double v = e.lift0, prev = ang(0.0);
  for (int i = 1; i <= steps; ++i) {
    double a = ang(x * i / steps);
    double d = std::remainder(a - prev, 2 * kPi);
    v += d;
    prev = a;
  }
  return v;
}

// Independent height: dense sampling of the path lift over one period.
inline double dense_height(const UnivCoverElt& e, int samples = 20000) {
  const Mat2& g = e.matrix;
  auto ang = [&](double t) { return std::atan2(g.c * std::cos(t) + g.d * std::sin(t), g.a * std::cos(t) + g.b * std::sin(t)); };
  double v = e.lift0, prev = ang(0.0), best = v;
  for (int i = 1; i < samples; ++i) {
    double x = 2 * kPi * i / samples;
    double a = ang(x);
    v += std::remainder(a - prev, 2 * kPi);
    prev = a;
    best = std::max(best, v - x);
  }
  return best / 2;
}

// Common eigenline search over all ell + 1 points of P^1(F_ell).
inline bool brute_reducible(const std::vector<MatModL>& rep, int ell) {
  for (int k = 0; k <= ell; ++k) {
    long x = k < ell ? 1 : 0, y = k < ell ? k : 1;
    bool ok = true;
    for (const auto& g : rep) {
      long gx = g.a * x + g.b * y, gy = g.c * x + g.d * y;
      if (((x * gy - y * gx) % ell + ell) % ell != 0) ok = false;
    }
    if (ok) return true;
  }
  return false;
}


inline Arithmeticoid random_arithmeticoid(const NumberField& K, std::mt19937_64& rng) {
  Arithmeticoid y(K, "r");
  std::uniform_int_distribution<int> shift(-2, 2), count(0, 4), num(1, 40), den(1, 6);
  auto places = places_up_to(K, 30);
  std::uniform_int_distribution<std::size_t> pick(0, places.size() - 1);
  y.set_frobenius_shift(shift(rng));
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const Place& v = places[pick(rng)];
    Rational e(num(rng), den(rng));
    y.set_point(v.is_archimedean() ? archimedean_point(v, e) : finite_point(v, e));
  }
  return y;
}

}  // namespace ateich::oracle
