#include "ateich/witt.hpp"

#include <mutex>
#include <stdexcept>

namespace ateich {

namespace {

constexpr int kMaxLength = 3;

void add_into(WittPoly& acc, const WittPoly& b, const mpz_class& scale) {
  for (const auto& [m, c] : b) {
    auto& slot = acc[m];
    slot += scale * c;
    if (slot == 0) acc.erase(m);
  }
}

WittPoly mul(const WittPoly& a, const WittPoly& b) {
  WittPoly r;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      WittMonomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      auto& slot = r[m];
      slot += ca * cb;
      if (slot == 0) r.erase(m);
    }
  }
  return r;
}

WittPoly power(const WittPoly& a, std::int64_t e) {
  WittPoly r;
  r[WittMonomial(a.begin()->first.size(), 0)] = 1;
  for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

WittPoly divide_exact(const WittPoly& a, const mpz_class& d) {
  WittPoly r;
  for (const auto& [m, c] : a) {
    if (c % d != 0) throw std::logic_error("Witt polynomial is not integral");
    r[m] = c / d;
  }
  return r;
}

mpz_class zpow(std::int64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

// Solves w_n(Z) = target_n for Z_n given Z_0..Z_{n-1}.
std::vector<WittPoly> invert_ghost(std::int64_t p, const std::vector<WittPoly>& target) {
  std::vector<WittPoly> z;
  for (std::size_t n = 0; n < target.size(); ++n) {
    WittPoly rest = target[n];
    for (std::size_t i = 0; i < n; ++i) {
      add_into(rest, power(z[i], zpow(p, static_cast<int>(n - i)).get_si()), -zpow(p, static_cast<int>(i)));
    }
    z.push_back(divide_exact(rest, zpow(p, static_cast<int>(n))));
  }
  return z;
}

class Evaluator {
 public:
  Evaluator(const std::vector<const HahnSeries*>& vars, std::int64_t p) : vars_(vars), p_(p) {
    powers_.resize(vars.size());
  }

  HahnSeries eval(const WittPoly& poly) {
    const HahnSeries& ref = *vars_.front();
    Rational cap = ref.cap();
    for (auto* v : vars_) cap = std::min(cap, v->cap());
    HahnSeries acc(ref.field(), cap);
    for (const auto& [m, c] : poly) {
      long r = mpz_class(c % p_).get_si();
      if (r < 0) r += p_;
      if (r == 0) continue;
      HahnSeries term = HahnSeries::constant(ref.field()->from_int(r), cap);
      bool zero = false;
      for (std::size_t i = 0; i < m.size() && !zero; ++i) {
        if (m[i] == 0) continue;
        const HahnSeries& pw = pow(i, m[i]);
        term = term * pw;
        zero = term.is_zero();
      }
      if (!zero) acc += term;
    }
    return acc;
  }

 private:
  const HahnSeries& pow(std::size_t var, int e) {
    auto& table = powers_[var];
    if (table.empty()) table.push_back(HahnSeries::constant(vars_[var]->field()->one(), vars_[var]->cap()));
    while (static_cast<int>(table.size()) <= e) table.push_back(table.back() * *vars_[var]);
    return table[static_cast<std::size_t>(e)];
  }

  std::vector<const HahnSeries*> vars_;
  std::int64_t p_;
  std::vector<std::vector<HahnSeries>> powers_;
};

void check_pair(const WittVector& x, const WittVector& y) {
  if (x.p() != y.p()) throw std::invalid_argument("Witt vectors over different primes");
  if (x.length() != y.length()) throw std::invalid_argument("Witt vectors of different lengths");
}

}  // namespace

WittPoly witt_ghost(std::int64_t p, int length, int n, int offset) {
  WittPoly w;
  for (int i = 0; i <= n; ++i) {
    WittMonomial m(static_cast<std::size_t>(2 * length), 0);
    m[static_cast<std::size_t>(offset + i)] = static_cast<int>(zpow(p, n - i).get_si());
    w[m] = zpow(p, i);
  }
  return w;
}

const WittPolynomials& WittPolynomials::get(std::int64_t p, int length) {
  if (length < 1 || length > kMaxLength) throw std::invalid_argument("Witt length must be 1..3");
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::unique_ptr<WittPolynomials>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, length}];
  if (slot) return *slot;
  auto w = std::make_unique<WittPolynomials>();
  w->p = p;
  w->length = length;
  std::vector<WittPoly> gsum, gprod, gneg;
  for (int n = 0; n < length; ++n) {
    WittPoly gx = witt_ghost(p, length, n, 0);
    WittPoly gy = witt_ghost(p, length, n, length);
    WittPoly s = gx;
    add_into(s, gy, 1);
    gsum.push_back(s);
    gprod.push_back(mul(gx, gy));
    WittPoly ng;
    add_into(ng, gx, -1);
    gneg.push_back(ng);
  }
  w->sum = invert_ghost(p, gsum);
  w->product = invert_ghost(p, gprod);
  w->negation = invert_ghost(p, gneg);
  slot = std::move(w);
  return *slot;
}

WittVector::WittVector(std::vector<HahnSeries> components) : components_(std::move(components)) {
  if (components_.empty() || static_cast<int>(components_.size()) > kMaxLength) {
    throw std::invalid_argument("Witt length must be 1..3");
  }
  for (const auto& c : components_) {
    if (c.field() != components_.front().field()) throw std::invalid_argument("mixed coefficient fields");
  }
}

namespace {

WittVector apply(const std::vector<WittPoly>& polys, const WittVector& x, const WittVector* y) {
  std::vector<const HahnSeries*> vars;
  for (const auto& c : x.components()) vars.push_back(&c);
  if (y) {
    for (const auto& c : y->components()) vars.push_back(&c);
  } else {
    for (const auto& c : x.components()) vars.push_back(&c);  // unused Y slots
  }
  Evaluator ev(vars, x.p());
  std::vector<HahnSeries> out;
  for (const auto& poly : polys) out.push_back(ev.eval(poly));
  return WittVector(std::move(out));
}

}  // namespace

WittVector witt_add(const WittVector& x, const WittVector& y) {
  check_pair(x, y);
  return apply(WittPolynomials::get(x.p(), x.length()).sum, x, &y);
}

WittVector witt_mul(const WittVector& x, const WittVector& y) {
  check_pair(x, y);
  return apply(WittPolynomials::get(x.p(), x.length()).product, x, &y);
}

WittVector witt_neg(const WittVector& x) { return apply(WittPolynomials::get(x.p(), x.length()).negation, x, nullptr); }

WittVector witt_sub(const WittVector& x, const WittVector& y) { return witt_add(x, witt_neg(y)); }

WittVector teichmueller_lift(const HahnSeries& a, int length) {
  if (!a.is_zero() && a.valuation() < Rational(0)) {
    throw std::domain_error("Teichmueller lift needs an element of the valuation ring");
  }
  std::vector<HahnSeries> c{a};
  for (int i = 1; i < length; ++i) c.emplace_back(a.field(), a.cap());
  return WittVector(std::move(c));
}

WittVector witt_p(const FiniteField* field, int length, const Rational& cap) {
  std::vector<HahnSeries> c;
  for (int i = 0; i < length; ++i) {
    c.push_back(i == 1 ? HahnSeries::constant(field->one(), cap) : HahnSeries(field, cap));
  }
  return WittVector(std::move(c));
}

WittVector primitive_element(const HahnSeries& a, int length) {
  return witt_sub(teichmueller_lift(a, length), witt_p(a.field(), length, a.cap()));
}

}  // namespace ateich
