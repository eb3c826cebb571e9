#include "ateich/finite_field.hpp"

#include <map>
#include <tuple>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ateich/rational.hpp"

namespace ateich {

namespace {

using Poly = std::vector<std::int64_t>;

std::int64_t md(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = md(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return md(t, p);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, std::int64_t p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  const std::int64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > n) {
    std::int64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i) a[shift + i] = md(a[shift + i] - c * f[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::int64_t p) {
  Poly r{1};
  base = poly_mod(base, f, p);
  while (e > 0) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
    e >>= 1;
    if (e) base = poly_mod(poly_mul(base, base, p), f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = md(a[i] - b[i], p);
  trim(a);
  return a;
}

// x^(p^j) mod f
Poly frobenius_power_of_x(const Poly& f, std::int64_t p, int j) {
  Poly x = poly_mod(Poly{0, 1}, f, p);
  for (int i = 0; i < j; ++i) x = poly_powmod(x, static_cast<std::uint64_t>(p), f, p);
  return x;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k < 1 || f.back() != 1) throw std::invalid_argument("expected a monic polynomial of degree >= 1");
  if (k == 1) return true;
  Poly x = poly_mod(Poly{0, 1}, f, p);
  if (poly_sub(frobenius_power_of_x(f, p, k), x, p).size() != 0) return false;
  for (auto q : prime_divisors(k)) {
    Poly g = poly_gcd(f, poly_sub(frobenius_power_of_x(f, p, static_cast<int>(k / q)), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FiniteField::FiniteField(std::int64_t p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("finite field characteristic must be prime");
  if (k < 1 || k > 64) throw std::invalid_argument("extension degree out of range [1, 64]");
  // Enumerate monic polynomials of degree k in lexicographic order of (c_{k-1}, ..., c_0).
  Poly f(static_cast<std::size_t>(k) + 1, 0);
  f[static_cast<std::size_t>(k)] = 1;
  for (;;) {
    if (is_irreducible_mod_p(f, p)) break;
    int i = 0;
    while (i < k) {
      if (++f[static_cast<std::size_t>(i)] < p) break;
      f[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == k) throw std::logic_error("no irreducible polynomial found");
  }
  modulus_ = f;
}

std::shared_ptr<const FiniteField> FiniteField::get(std::int64_t p, int k) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const FiniteField>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, k}];
  if (!slot) slot = std::make_shared<const FiniteField>(p, k);
  return slot;
}

Fq FiniteField::zero() const { return Fq(this, std::vector<std::int64_t>(static_cast<std::size_t>(k_), 0)); }

Fq FiniteField::one() const { return from_int(1); }

Fq FiniteField::from_int(std::int64_t n) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(k_), 0);
  c[0] = md(n, p_);
  return Fq(this, std::move(c));
}

Fq FiniteField::from_coeffs(std::vector<std::int64_t> c) const {
  Poly r = poly_mod(std::move(c), modulus_, p_);
  r.resize(static_cast<std::size_t>(k_), 0);
  for (auto& x : r) x = md(x, p_);
  return Fq(this, std::move(r));
}

Fq FiniteField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::int64_t> d(0, p_ - 1);
  std::vector<std::int64_t> c(static_cast<std::size_t>(k_));
  for (auto& x : c) x = d(rng);
  return Fq(this, std::move(c));
}

Fq FiniteField::random_prime_field(std::mt19937_64& rng, bool nonzero) const {
  std::uniform_int_distribution<std::int64_t> d(nonzero ? 1 : 0, p_ - 1);
  return from_int(d(rng));
}

bool Fq::is_zero() const {
  for (auto x : c_) {
    if (x != 0) return false;
  }
  return true;
}

bool Fq::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

bool Fq::in_prime_field() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

Fq Fq::operator-() const {
  Fq r = *this;
  for (auto& x : r.c_) x = md(-x, field_->p());
  return r;
}

Fq& Fq::operator+=(const Fq& o) {
  if (field_ != o.field_) throw std::invalid_argument("finite field mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % field_->p();
  return *this;
}

Fq& Fq::operator-=(const Fq& o) { return *this += -o; }

Fq& Fq::operator*=(const Fq& o) {
  if (field_ != o.field_) throw std::invalid_argument("finite field mismatch");
  const std::int64_t p = field_->p();
  const auto& f = field_->modulus();
  const std::size_t k = c_.size();
  std::vector<std::int64_t> r(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p;
  }
  for (std::size_t d = 2 * k - 2; d >= k; --d) {
    std::int64_t c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    for (std::size_t i = 0; i < k; ++i) r[d - k + i] = md(r[d - k + i] - c * f[i], p);
  }
  r.resize(k);
  c_ = std::move(r);
  return *this;
}

Fq Fq::scaled(std::int64_t n) const {
  Fq r = *this;
  const std::int64_t p = field_->p();
  const std::int64_t m = md(n, p);
  for (auto& x : r.c_) x = x * m % p;
  return r;
}

Fq Fq::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in F_q");
  const std::int64_t p = field_->p();
  // Extended Euclid on (a, m): track s with s*a = r (mod m).
  Poly r0 = field_->modulus(), r1 = c_;
  trim(r1);
  Poly s0{}, s1{1};
  while (!(r1.size() == 1)) {
    // polynomial division r0 = q r1 + rem
    Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    Poly rem = r0;
    std::int64_t li = inv_mod(r1.back(), p);
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::size_t shift = rem.size() - r1.size();
      std::int64_t c = rem.back() * li % p;
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] = md(rem[shift + i] - c * r1[i], p);
      trim(rem);
    }
    Poly s2 = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  std::int64_t ci = inv_mod(r1[0], p);
  for (auto& x : s1) x = x * ci % p;
  return field_->from_coeffs(s1);
}

Fq Fq::pow(std::uint64_t e) const {
  Fq r = field_->one();
  Fq b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Fq Fq::inverse_frobenius() const {
  Fq r = *this;
  for (int i = 1; i < field_->k(); ++i) r = r.frobenius();
  return r;
}

std::string Fq::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

}  // namespace ateich
