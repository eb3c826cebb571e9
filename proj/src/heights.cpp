#include "ateich/heights.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ateich {

namespace {

// a > b for log-values. Finite-place values involve one prime and compare exactly.
bool greater(const LogValue& a, const LogValue& b) {
  LogValue d = a - b;
  if (d.is_exactly_zero()) return false;
  if (d.real() == 0.0 && d.exact().size() == 1) return d.exact().begin()->second.sign() > 0;
  return d.value() > 0.0;
}

std::set<Place> relevant_places(const NumberField& field, const std::vector<FieldElement>& P) {
  std::set<Place> places{Place::archimedean(field)};
  for (const auto& x : P) {
    if (x.is_zero()) continue;
    for (auto p : support_primes(x)) {
      for (const auto& v : places_over(field, p)) places.insert(v);
    }
  }
  return places;
}

mpz_class zpow(std::int64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

int mpz_valuation(const mpz_class& n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  mpz_class m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

// Rational with v_p >= 0 reduced mod m = p^e.
mpz_class residue(const mpq_class& x, const mpz_class& m) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("denominator not invertible mod p^N");
  }
  mpz_class r = x.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

using ZPoly = std::vector<mpz_class>;  // truncated power series, index = degree

ZPoly zmul(const ZPoly& a, const ZPoly& b, std::size_t n) {
  ZPoly r(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

HeightReport height(const Arithmeticoid& y, const std::vector<FieldElement>& P) {
  bool any = false;
  for (const auto& x : P) {
    if (!(x.field() == y.field())) throw std::invalid_argument("coordinate from a different field");
    any = any || !x.is_zero();
  }
  if (!any) throw std::invalid_argument("projective point with all coordinates zero");
  NormalizationCoordinate alpha(y);
  HeightReport rep;
  rep.label = y.label();
  for (const auto& v : relevant_places(y.field(), P)) {
    const LocalPoint pt = y.point(v);
    const Rational a = alpha.alpha(v);
    std::optional<LogValue> best;
    for (const auto& x : P) {
      if (x.is_zero()) continue;
      LogValue c = local_log_abs(x, pt).scaled(a);
      if (!best || greater(c, *best)) best = c;
    }
    if (best->is_exactly_zero()) continue;
    rep.places.push_back({v, a, *best});
    rep.total += *best;
  }
  return rep;
}

HeightReport height(const Arithmeticoid& y, const FieldElement& z) {
  return height(y, std::vector<FieldElement>{FieldElement(y.field(), Rational(1)), z});
}

namespace {

StabilizedHeight reduce_stabilized(const Arithmeticoid& y, const FieldElement& z,
                                   const std::vector<FieldElement>& sample, const std::vector<LogValue>& values) {
  StabilizedHeight r{height(y, z).total, height(y, z).total, FieldElement(y.field(), Rational(1)), false,
                     sample.size()};
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (greater(values[i], r.value)) {
      r.value = values[i];
      r.argmax = sample[i];
    }
  }
  r.strict = greater(r.value, r.base);
  return r;
}

void check_sample(const Arithmeticoid& y, const std::vector<FieldElement>& sample) {
  for (const auto& a : sample) {
    if (a.is_zero()) throw std::invalid_argument("sample contains zero");
    if (!(a.field() == y.field())) throw std::invalid_argument("sample element from a different field");
  }
}

}  // namespace

StabilizedHeight stabilized_height_serial(const Arithmeticoid& y, const FieldElement& z,
                                          const std::vector<FieldElement>& sample) {
  check_sample(y, sample);
  std::vector<LogValue> values(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) values[i] = height(lstar_act(sample[i], y), z).total;
  return reduce_stabilized(y, z, sample, values);
}

StabilizedHeight stabilized_height(const Arithmeticoid& y, const FieldElement& z,
                                   const std::vector<FieldElement>& sample) {
  check_sample(y, sample);
  std::vector<LogValue> values(sample.size());
  const long n = static_cast<long>(sample.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] = height(lstar_act(sample[static_cast<std::size_t>(i)], y), z).total;
  }
  return reduce_stabilized(y, z, sample, values);
}

std::vector<FieldElement> default_stabilizer_sample(const NumberField& field, std::int64_t prime_bound,
                                                    int max_factors) {
  std::vector<Rational> gens;
  for (auto p : primes_up_to(prime_bound)) {
    gens.emplace_back(p);
    gens.emplace_back(1, p);
  }
  std::set<Rational> seen{Rational(1), Rational(-1)};
  std::vector<Rational> frontier{Rational(1)};
  for (int k = 0; k < max_factors; ++k) {
    std::vector<Rational> next;
    for (const auto& f : frontier) {
      for (const auto& g : gens) {
        Rational h = f * g;
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  std::vector<FieldElement> out;
  for (const auto& r : seen) {
    if (r != Rational(1)) out.emplace_back(field, r);
  }
  return out;
}

Ideloid principal_ideloid(const FieldElement& x) {
  Ideloid I;
  for (const auto& [v, o] : divisor(x)) I.orders.emplace(v, Rational(o));
  I.arch_log = standard_abs(x, Place::archimedean(x.field()));
  return I;
}

Ideloid ideloid_mul(const Ideloid& a, const Ideloid& b) {
  Ideloid r = a;
  for (const auto& [v, o] : b.orders) {
    Rational s = r.orders.count(v) ? r.orders.at(v) + o : o;
    if (s.is_zero()) {
      r.orders.erase(v);
    } else {
      r.orders.insert_or_assign(v, s);
    }
  }
  for (const auto& [v, u] : b.unit_tags) {
    auto it = r.unit_tags.find(v);
    if (it == r.unit_tags.end()) {
      r.unit_tags.emplace(v, u);
    } else {
      it->second = it->second * u;
    }
  }
  r.arch_log += b.arch_log;
  return r;
}

LogValue arithmetic_degree(const Arithmeticoid& y, const Ideloid& I) {
  NormalizationCoordinate alpha(y);
  const Place inf = Place::archimedean(y.field());
  LogValue total = I.arch_log.scaled(y.point(inf).exponent * alpha.alpha(inf));
  for (const auto& [v, o] : I.orders) {
    if (!v.is_finite()) throw std::invalid_argument("ideloid orders live at finite places");
    const LocalPoint pt = y.point(v);
    total += LogValue::log_prime(v.p, -pt.exponent * o / Rational(v.e)).scaled(alpha.alpha(v));
  }
  return total;
}

bool Frobenioid::admits(const FrobenioidElement& d) const {
  if (static_cast<int>(d.mode) > static_cast<int>(mode)) return false;
  if (d.signed_group) return false;
  for (const auto& [v, e] : d.exponents) {
    if (e.sign() < 0) return false;
    if (mode == FrobenioidMode::Integer && !e.is_integer()) return false;
  }
  for (const auto& [v, e] : d.real_exponents) {
    if (e < 0.0) return false;
  }
  return true;
}

Frobenioid frobenioid_of(const NumberField& field) { return {field, FrobenioidMode::Integer}; }

Frobenioid frobenioid_of_arithmeticoid(const Arithmeticoid& y) { return {y.field(), FrobenioidMode::Perfection}; }

FrobenioidElement realify(const FrobenioidElement& d) {
  FrobenioidElement r;
  r.mode = FrobenioidMode::Realified;
  r.signed_group = d.signed_group;
  r.real_exponents = d.real_exponents;
  for (const auto& [v, e] : d.exponents) r.real_exponents[v] += e.to_double();
  return r;
}

FrobenioidElement perfection(const FrobenioidElement& d) {
  if (d.mode == FrobenioidMode::Realified) throw std::invalid_argument("realified divisors have no perfection image");
  FrobenioidElement r = d;
  r.mode = FrobenioidMode::Perfection;
  return r;
}

FrobenioidElement frobenioid_add(const FrobenioidElement& a, const FrobenioidElement& b) {
  if (a.mode == FrobenioidMode::Realified || b.mode == FrobenioidMode::Realified) {
    FrobenioidElement ra = realify(a), rb = realify(b);
    for (const auto& [v, e] : rb.real_exponents) ra.real_exponents[v] += e;
    ra.signed_group = a.signed_group || b.signed_group;
    return ra;
  }
  FrobenioidElement r = a;
  r.mode = static_cast<int>(a.mode) >= static_cast<int>(b.mode) ? a.mode : b.mode;
  r.signed_group = a.signed_group || b.signed_group;
  for (const auto& [v, e] : b.exponents) {
    Rational s = r.exponents.count(v) ? r.exponents.at(v) + e : e;
    if (s.is_zero()) {
      r.exponents.erase(v);
    } else {
      r.exponents.insert_or_assign(v, s);
    }
  }
  return r;
}

FrobenioidElement principal_divisor(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("principal divisor of zero");
  FrobenioidElement d;
  d.signed_group = true;
  for (const auto& [v, o] : divisor(x)) d.exponents.emplace(v, Rational(o));
  return d;
}

FrobenioidElement effective_part(const FrobenioidElement& d) {
  FrobenioidElement r = d;
  r.signed_group = false;
  std::erase_if(r.exponents, [](const auto& kv) { return kv.second.sign() <= 0; });
  std::erase_if(r.real_exponents, [](const auto& kv) { return kv.second <= 0.0; });
  return r;
}

FrobenioidElement frobenius_pullback(const FrobenioidElement& d, int m) {
  FrobenioidElement r = d;
  for (auto& [v, e] : r.exponents) {
    e = e * Rational(v.p).pow(-m);
    if (r.mode == FrobenioidMode::Integer && !e.is_integer()) {
      throw std::domain_error("Frobenius pullback leaves Z; pass to the perfection");
    }
  }
  for (auto& [v, e] : r.real_exponents) e *= std::pow(static_cast<double>(v.p), -m);
  return r;
}

JCoefficients load_j_coefficients(const std::string& path) {
  std::string file = path;
  if (file.empty()) {
    const char* env = std::getenv("ATEICH_J_COEFFICIENTS");
    file = env ? env : std::string(ATEICH_DATA_DIR) + "/j_coefficients.txt";
  }
  std::ifstream in(file);
  if (!in) throw std::runtime_error("missing j-coefficient file: " + file);
  JCoefficients out;
  out.source = file;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long n = 0;
    std::string c;
    if (!(ls >> n >> c)) throw std::runtime_error("malformed line in " + file + ": " + line);
    if (n != static_cast<long>(out.c.size()) + 1) throw std::runtime_error("non-consecutive index in " + file);
    out.c.emplace_back(c);
  }
  if (out.c.empty()) throw std::runtime_error("empty j-coefficient file: " + file);
  return out;
}

TateParameter invert_j_series(std::int64_t p, const Rational& j, int M, const JCoefficients& coeffs) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (M < 1) throw std::invalid_argument("precision must be >= 1");
  if (j.is_zero() || padic_valuation(j, p) >= 0) throw std::domain_error("not a Tate curve: v_p(j) >= 0");
  const int k = -padic_valuation(j, p);
  const int qprec = M + 2 * k;
  // Terms b_n w^n with n k >= qprec vanish mod p^qprec.
  const std::size_t D = static_cast<std::size_t>((qprec - 1) / k);
  if (D > coeffs.c.size() + 1) throw std::runtime_error("j-coefficient file too short for this precision");

  // w = 1/j = f(q) = q / J(q) with J = 1 + 744 q + sum c_n q^{n+1}.
  ZPoly J(D + 1, 0);
  J[0] = 1;
  if (D >= 1) J[1] = 744;
  for (std::size_t n = 1; n + 1 <= D; ++n) J[n + 1] = coeffs.c[n - 1];
  ZPoly Jinv(D + 1, 0);
  Jinv[0] = 1;
  for (std::size_t m = 1; m <= D; ++m) {
    mpz_class s = 0;
    for (std::size_t i = 1; i <= m; ++i) s += J[i] * Jinv[m - i];
    Jinv[m] = -s;
  }
  ZPoly f(D + 1, 0);  // f[i] = coefficient of q^i
  for (std::size_t i = 1; i <= D; ++i) f[i] = Jinv[i - 1];
  // Reversion g = w - sum_{i>=2} f_i g^i, one new coefficient per pass.
  ZPoly g(D + 1, 0);
  if (D >= 1) g[1] = 1;
  for (std::size_t pass = 1; pass < D; ++pass) {
    ZPoly next(D + 1, 0);
    next[1] = 1;
    ZPoly power = g;
    for (std::size_t i = 2; i <= D; ++i) {
      power = zmul(power, g, D + 1);
      for (std::size_t n = 0; n <= D; ++n) next[n] -= f[i] * power[n];
    }
    g = std::move(next);
  }

  const mpz_class mod = zpow(p, qprec);
  const mpq_class jq(mpz_class(static_cast<long>(j.num())), mpz_class(static_cast<long>(j.den())));
  const mpq_class wq = 1 / jq;
  const mpz_class w = residue(wq, mod);
  mpz_class q = 0, wn = 1;
  for (std::size_t n = 1; n <= D; ++n) {
    wn = wn * w % mod;
    q += g[n] * wn;
  }
  mpz_mod(q.get_mpz_t(), q.get_mpz_t(), mod.get_mpz_t());
  if (q == 0 || mpz_valuation(q, p) != k) throw std::logic_error("reverted q has the wrong valuation");

  TateParameter t;
  t.p = p;
  t.valuation = k;
  t.precision = qprec;
  t.j_precision = M;
  t.residue = q;
  return t;
}

mpq_class evaluate_j(const mpz_class& q, std::int64_t p, int precision, const JCoefficients& coeffs) {
  const int k = mpz_valuation(q, p);
  if (k <= 0) throw std::domain_error("q must have positive valuation");
  mpq_class j = mpq_class(1) / mpq_class(q) + 744;
  mpz_class qn = 1;
  for (std::size_t n = 1; static_cast<int>(n) * k < precision; ++n) {
    if (n > coeffs.c.size()) throw std::runtime_error("j-coefficient file too short for this precision");
    qn *= q;
    j += mpq_class(coeffs.c[n - 1] * qn);
  }
  j.canonicalize();
  return j;
}

TeichmuellerComparison compare_teichmueller_lifts(const Rational& x_valuation, const LocalPoint& y1,
                                                  const LocalPoint& y2) {
  if (!(y1.place == y2.place) || !y1.place.is_finite()) {
    throw std::invalid_argument("Teichmueller comparison needs two points over one finite place");
  }
  TeichmuellerComparison c;
  c.norm1 = LogValue::log_prime(y1.place.p, -y1.exponent * x_valuation);
  c.norm2 = LogValue::log_prime(y2.place.p, -y2.exponent * x_valuation);
  c.equal = c.norm1 == c.norm2;
  return c;
}

AbcRow abc_row(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("abc_row needs positive a, b");
  AbcRow r;
  r.a = a;
  r.b = b;
  r.c = a + b;
  const auto Q = NumberField::rationals();
  const FieldElement z(Q, Rational(a) * Rational(b) * Rational(r.c));
  const auto y0 = Arithmeticoid::standard(Q);
  r.h_standard = height(y0, z).value();
  r.h_moved = height(lstar_act(z, y0), z).value();
  std::set<std::int64_t> primes;
  for (auto n : {a, b, r.c}) {
    for (auto q : prime_divisors(n)) primes.insert(q);
  }
  for (auto q : primes) r.log_radical += std::log(static_cast<double>(q));
  r.log_c = std::log(static_cast<double>(r.c));
  return r;
}

}  // namespace ateich
