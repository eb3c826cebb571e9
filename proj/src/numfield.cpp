#include "ateich/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ateich {

namespace {

bool squarefree(std::int64_t d) {
  for (std::int64_t q = 2; q * q <= d; ++q) {
    if (d % (q * q) == 0) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  __int128 r = 1;
  __int128 x = mod(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

int valuation128(__int128 n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Roots of X^2 - tX + n modulo p, ascending.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  for (a %= m; e; e >>= 1, a = mulmod(a, a, m))
    if (e & 1) r = mulmod(r, a, m);
  return r;
}

// Tonelli-Shanks; p is an odd prime and a is a square mod p.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  if (a == 0) return 0;
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) q >>= 1, ++s;
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod(z, q, p), x = powmod(a, (q + 1) / 2, p), t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    for (std::uint64_t u = t; u != 1; u = mulmod(u, u, p)) ++i;
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return x;
}

// Roots of r^2 - t r + n mod p in increasing order; empty when p is inert.
std::vector<std::int64_t> minpoly_roots(const NumberField& K, std::int64_t p) {
  std::vector<std::int64_t> roots;
  const auto up = static_cast<std::uint64_t>(p);
  const auto t = static_cast<std::uint64_t>(mod(K.trace_w(), p));
  const auto n = static_cast<std::uint64_t>(mod(K.norm_w(), p));
  if (p == 2) {
    for (std::uint64_t r = 0; r < 2; ++r)
      if ((r * r + t * r + n) % 2 == 0) roots.push_back(static_cast<std::int64_t>(r));
    return roots;
  }
  std::uint64_t disc = (mulmod(t, t, up) + up - mulmod(4 % up, n, up)) % up;
  if (disc != 0 && powmod(disc, (up - 1) / 2, up) != 1) return roots;
  std::uint64_t sq = sqrt_mod(disc, up), half = (up + 1) / 2;
  std::uint64_t r1 = mulmod((t + sq) % up, half, up), r2 = mulmod((t + up - sq) % up, half, up);
  roots.push_back(static_cast<std::int64_t>(std::min(r1, r2)));
  if (r1 != r2) roots.push_back(static_cast<std::int64_t>(std::max(r1, r2)));
  return roots;
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(std::int64_t d) : d_(d) {
  if (d == 0) return;
  if (d < 0 || !squarefree(d)) throw std::invalid_argument("d must be squarefree and positive");
  if (mod(-d, 4) == 1) {
    t_ = 1;
    n_ = (1 + d) / 4;
  } else {
    t_ = 0;
    n_ = d;
  }
}

NumberField NumberField::imaginary_quadratic(std::int64_t d) {
  if (d <= 0) throw std::invalid_argument("imaginary quadratic field needs d > 0");
  return NumberField(d);
}

NumberField NumberField::parse(std::string_view spec) {
  std::string s;
  for (char c : spec) {
    if (c != ' ') s.push_back(c);
  }
  if (s == "Q" || s == "QQ") return rationals();
  if (s == "Q(i)") return imaginary_quadratic(1);
  const std::string prefix = "Q(sqrt(-";
  if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size() + 2 && s.substr(s.size() - 2) == "))") {
    std::string digits = s.substr(prefix.size(), s.size() - prefix.size() - 2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw std::invalid_argument("unsupported field '" + std::string(spec) + "'");
    }
    return imaginary_quadratic(std::stoll(digits));
  }
  throw std::invalid_argument("unsupported field '" + std::string(spec) + "'");
}

std::int64_t NumberField::discriminant() const {
  if (is_rationals()) return 1;
  return t_ == 1 ? -d_ : -4 * d_;
}

std::complex<double> NumberField::embed_w() const {
  if (is_rationals()) return {0.0, 0.0};
  double im = std::sqrt(static_cast<double>(4 * n_ - t_ * t_)) / 2.0;
  return {static_cast<double>(t_) / 2.0, im};
}

std::string NumberField::spec() const {
  if (is_rationals()) return "Q";
  return "Q(sqrt(-" + std::to_string(d_) + "))";
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(NumberField field, Rational a, Rational b)
    : field_(field), a_(a), b_(b) {
  if (field_.is_rationals() && !b_.is_zero()) {
    throw std::invalid_argument("element of Q with nonzero w-coordinate");
  }
}

void FieldElement::check_same_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) throw std::invalid_argument("field mismatch");
}

Rational FieldElement::norm() const {
  if (field_.is_rationals()) return a_;
  return a_ * a_ + Rational(field_.trace_w()) * a_ * b_ + Rational(field_.norm_w()) * b_ * b_;
}

FieldElement FieldElement::conjugate() const {
  if (field_.is_rationals()) return *this;
  return {field_, a_ + b_ * Rational(field_.trace_w()), -b_};
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero field element");
  Rational n = norm();
  if (field_.is_rationals()) return {field_, a_.inverse()};
  FieldElement c = conjugate();
  return {field_, c.a_ / n, c.b_ / n};
}

FieldElement FieldElement::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r(field_, Rational(1));
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::complex<double> FieldElement::embed() const {
  return a_.to_double() + b_.to_double() * field_.embed_w();
}

FieldElement FieldElement::operator-() const { return {field_, -a_, -b_}; }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same_field(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same_field(o);
  // w^2 = t w - n
  Rational t(field_.trace_w());
  Rational n(field_.norm_w());
  Rational bd = b_ * o.b_;
  Rational na = a_ * o.a_ - n * bd;
  Rational nb = a_ * o.b_ + b_ * o.a_ + t * bd;
  a_ = na;
  b_ = nb;
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

std::string FieldElement::str() const {
  if (b_.is_zero()) return a_.str();
  std::string sym = field_.trace_w() == 0 ? (field_.d() == 1 ? "i" : "sqrt(-" + std::to_string(field_.d()) + ")") : "w";
  std::ostringstream os;
  if (!a_.is_zero()) os << a_ << (b_.sign() > 0 ? "+" : "-");
  else if (b_.sign() < 0) os << "-";
  Rational ab = b_.abs();
  if (ab != Rational(1)) os << ab << "*";
  os << sym;
  return os.str();
}

FieldElement FieldElement::parse(const NumberField& field, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty field element");
  // Split into signed terms at top-level '+'/'-'.
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    bool after_slash = i > 0 && (s[i - 1] == '/' || s[i - 1] == '*');
    if ((c == '+' || c == '-') && depth == 0 && i > 0 && !after_slash) {
      terms.push_back(cur);
      cur.clear();
    }
    cur.push_back(c);
  }
  terms.push_back(cur);

  FieldElement total(field, Rational(0));
  for (std::string term : terms) {
    int sign = 1;
    while (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      if (term[0] == '-') sign = -sign;
      term.erase(term.begin());
    }
    if (term.empty()) throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
    FieldElement symbol(field, Rational(1));
    std::string coeff = term;
    auto take_symbol = [&](const std::string& sym, const FieldElement& value) {
      if (coeff.size() >= sym.size() && coeff.compare(coeff.size() - sym.size(), sym.size(), sym) == 0) {
        coeff.erase(coeff.size() - sym.size());
        if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
        symbol = value;
        return true;
      }
      return false;
    };
    bool has_symbol = false;
    if (!field.is_rationals()) {
      FieldElement sqrt_minus_d = field.trace_w() == 0 ? FieldElement(field, Rational(0), Rational(1))
                                                       : FieldElement(field, Rational(-1), Rational(2));
      has_symbol = take_symbol("sqrt(-" + std::to_string(field.d()) + ")", sqrt_minus_d) ||
                   take_symbol("w", FieldElement(field, Rational(0), Rational(1)));
      if (!has_symbol && field.d() == 1) has_symbol = take_symbol("i", sqrt_minus_d);
    }
    Rational c = coeff.empty() ? Rational(1) : Rational::parse(coeff);
    if (!has_symbol && coeff.empty()) throw std::invalid_argument("malformed term in '" + std::string(text) + "'");
    total += symbol * FieldElement(field, c * Rational(sign));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Places

int kronecker_symbol(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    if (mod(D, 2) == 0) return 0;
    std::int64_t r = mod(D, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  std::int64_t r = mod(D, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Place Place::archimedean(const NumberField& field) {
  Place v;
  v.kind = PlaceKind::Archimedean;
  v.f = field.degree();
  v.splitting = Splitting::Archimedean;
  return v;
}

std::string Place::str() const {
  if (is_archimedean()) return "inf";
  if (splitting == Splitting::Split) return std::to_string(p) + ":" + std::to_string(conjugate_index);
  return std::to_string(p);
}

std::vector<Place> places_over(const NumberField& field, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("places_over needs a prime");
  Place base;
  base.kind = PlaceKind::Finite;
  base.p = p;
  if (field.is_rationals()) {
    base.splitting = Splitting::Rational;
    return {base};
  }
  int k = kronecker_symbol(field.discriminant(), p);
  auto roots = minpoly_roots(field, p);
  if (k == 0) {
    base.e = 2;
    base.splitting = Splitting::Ramified;
    if (roots.size() != 1) throw std::logic_error("ramified prime without a double root");
    base.root = roots.front();
    return {base};
  }
  if (k < 0) {
    base.f = 2;
    base.splitting = Splitting::Inert;
    return {base};
  }
  if (roots.size() != 2) throw std::logic_error("split prime without two roots");
  std::vector<Place> out;
  for (int i = 0; i < 2; ++i) {
    Place v = base;
    v.splitting = Splitting::Split;
    v.conjugate_index = i;
    v.root = roots[i];
    out.push_back(v);
  }
  return out;
}

std::vector<Place> places_up_to(const NumberField& field, std::int64_t bound) {
  if (bound < 2) throw std::invalid_argument("places_up_to needs bound >= 2");
  std::vector<Place> out{Place::archimedean(field)};
  for (auto p : primes_up_to(bound)) {
    auto over = places_over(field, p);
    out.insert(out.end(), over.begin(), over.end());
  }
  return out;
}

std::vector<Place> first_places(const NumberField& field, std::size_t count) {
  std::vector<Place> out{Place::archimedean(field)};
  std::int64_t p = 2;
  while (out.size() < count) {
    if (is_prime(p)) {
      for (const auto& v : places_over(field, p)) {
        if (out.size() < count) out.push_back(v);
      }
    }
    ++p;
  }
  out.resize(std::min(out.size(), count));
  return out;
}

Place parse_place(const NumberField& field, std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "oo" || s == "infinity") return Place::archimedean(field);
  int conj = 0;
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    conj = std::stoi(s.substr(colon + 1));
    s = s.substr(0, colon);
  }
  std::int64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed place '" + std::string(text) + "'");
  }
  for (const auto& v : places_over(field, p)) {
    if (v.conjugate_index == conj) return v;
  }
  throw std::invalid_argument("no place '" + std::string(text) + "' in " + field.spec());
}

// ---------------------------------------------------------------------------
// Valuations

int ord(const FieldElement& x, const Place& v) {
  if (x.is_zero()) throw std::domain_error("ord of zero is infinite");
  if (!v.is_finite()) throw std::invalid_argument("ord needs a finite place");
  const auto& K = x.field();
  const std::int64_t p = v.p;
  switch (v.splitting) {
    case Splitting::Rational:
      return padic_valuation(x.a(), p);
    case Splitting::Ramified:
      return padic_valuation(x.norm(), p);
    case Splitting::Inert: {
      int n = padic_valuation(x.norm(), p);
      if (n % 2 != 0) throw std::logic_error("odd norm valuation at an inert prime");
      return n / 2;
    }
    case Splitting::Split: {
      std::int64_t D = std::lcm(x.a().den(), x.b().den());
      __int128 A = static_cast<__int128>(x.a().num()) * (D / x.a().den());
      __int128 B = static_cast<__int128>(x.b().num()) * (D / x.b().den());
      int k = std::numeric_limits<int>::max();
      if (A != 0) k = std::min(k, valuation128(A, p));
      if (B != 0) k = std::min(k, valuation128(B, p));
      for (int i = 0; i < k; ++i) {
        A /= p;
        B /= p;
      }
      int result = k - padic_valuation(D, p);
      __int128 t = K.trace_w();
      __int128 n = K.norm_w();
      __int128 test = (A + B * v.root) % p;
      if (test == 0) result += valuation128(A * A + t * A * B + n * B * B, p);
      return result;
    }
    case Splitting::Archimedean:
      break;
  }
  throw std::logic_error("unreachable place kind");
}

std::vector<std::int64_t> support_primes(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("support of zero");
  std::vector<std::int64_t> ps;
  Rational n = x.norm();
  for (auto q : prime_divisors(n.num())) ps.push_back(q);
  for (auto q : prime_divisors(n.den())) ps.push_back(q);
  for (auto q : prime_divisors(std::lcm(x.a().den(), x.b().den()))) ps.push_back(q);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

std::map<Place, int> divisor(const FieldElement& x) {
  std::map<Place, int> out;
  for (auto p : support_primes(x)) {
    for (const auto& v : places_over(x.field(), p)) {
      int o = ord(x, v);
      if (o != 0) out.emplace(v, o);
    }
  }
  return out;
}

FieldElement uniformizer(const NumberField& field, const Place& v) {
  if (!v.is_finite()) throw std::invalid_argument("uniformizer needs a finite place");
  if (v.splitting == Splitting::Rational || v.splitting == Splitting::Inert) {
    return FieldElement(field, Rational(v.p));
  }
  for (std::int64_t k = 0; k < v.p; ++k) {
    std::int64_t a = -v.root + k * v.p;
    FieldElement cand(field, Rational(a), Rational(1));
    if (ord(cand, v) == 1) return cand;
  }
  throw std::logic_error("no uniformizer found at " + v.str());
}

LogValue standard_abs(const FieldElement& x, const Place& v) {
  if (x.is_zero()) throw std::domain_error("absolute value of zero");
  if (v.is_finite()) return LogValue::log_prime(v.p, Rational(-v.f) * Rational(ord(x, v)));
  return log_abs_rational(x.norm().abs());
}

double archimedean_log_abs(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("absolute value of zero");
  double m = std::abs(x.embed());
  return x.field().is_rationals() ? std::log(m) : 2.0 * std::log(m);
}

ProductFormulaReport product_formula_check(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("product formula for zero");
  ProductFormulaReport rep;
  double finite_total = 0.0;
  for (auto p : support_primes(x)) {
    Rational sum(0);
    for (const auto& v : places_over(x.field(), p)) {
      sum += standard_abs(x, v).coeff(p);
    }
    rep.finite_exponent_sum[p] = sum;
    finite_total += sum.to_double() * std::log(static_cast<double>(p));
  }
  LogValue arch = standard_abs(x, Place::archimedean(x.field()));
  for (const auto& [p, c] : arch.exact()) rep.archimedean_coeff[p] = c;
  rep.archimedean_log = archimedean_log_abs(x);
  rep.residual = std::abs(finite_total + rep.archimedean_log);
  bool exact = true;
  std::map<std::int64_t, Rational> all = rep.finite_exponent_sum;
  for (const auto& [p, c] : rep.archimedean_coeff) all[p] += c;
  for (const auto& [p, c] : all) exact = exact && c.is_zero();
  rep.exact_cancellation = exact;
  return rep;
}

std::vector<FieldElement> roots_of_unity(const NumberField& field) {
  std::vector<FieldElement> out;
  if (field.is_rationals()) {
    out.emplace_back(field, Rational(1));
    out.emplace_back(field, Rational(-1));
    return out;
  }
  // The norm form is positive definite with N(a + b w) >= b^2 * (4n - t^2)/4 >= 3/4 b^2,
  // so norm-one elements have |a|, |b| <= 2.
  for (std::int64_t a = -2; a <= 2; ++a) {
    for (std::int64_t b = -2; b <= 2; ++b) {
      FieldElement x(field, Rational(a), Rational(b));
      if (!x.is_zero() && x.norm() == Rational(1)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& l, const FieldElement& r) {
    auto al = std::arg(l.embed());
    auto ar = std::arg(r.embed());
    if (al < -1e-12) al += 2 * M_PI;
    if (ar < -1e-12) ar += 2 * M_PI;
    return al < ar;
  });
  return out;
}

std::vector<FieldElement> random_elements(const NumberField& field, std::size_t count, std::uint64_t seed,
                                          std::int64_t height) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> num(-height, height), den(1, height);
  std::vector<FieldElement> out;
  while (out.size() < count) {
    Rational a(num(rng), den(rng));
    Rational b = field.is_rationals() ? Rational(0) : Rational(num(rng), den(rng));
    FieldElement x(field, a, b);
    if (!x.is_zero()) out.push_back(x);
  }
  return out;
}

namespace {

void fold(ProductFormulaBatch& acc, const ProductFormulaReport& r) {
  ++acc.count;
  if (r.exact_cancellation) ++acc.exact;
  acc.max_residual = std::max(acc.max_residual, r.residual);
}

}  // namespace

ProductFormulaBatch product_formula_batch(const NumberField& field, std::size_t count, std::uint64_t seed,
                                          std::int64_t height) {
  auto xs = random_elements(field, count, seed, height);
  std::vector<ProductFormulaReport> reports(xs.size());
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i)
    reports[static_cast<std::size_t>(i)] = product_formula_check(xs[static_cast<std::size_t>(i)]);
  ProductFormulaBatch acc;
  for (const auto& r : reports) fold(acc, r);
  return acc;
}

ProductFormulaBatch product_formula_batch_serial(const NumberField& field, std::size_t count, std::uint64_t seed,
                                                 std::int64_t height) {
  ProductFormulaBatch acc;
  for (const auto& x : random_elements(field, count, seed, height)) fold(acc, product_formula_check(x));
  return acc;
}

}  // namespace ateich
