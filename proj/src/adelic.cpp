#include "ateich/adelic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ateich/lubin_tate.hpp"

namespace ateich {

Arithmeticoid::Arithmeticoid(NumberField field, std::string label) : field_(field), label_(std::move(label)) {}

LocalPoint Arithmeticoid::base(const Place& v) const {
  auto it = deviations_.find(v);
  return it == deviations_.end() ? standard_point(v) : it->second;
}

LocalPoint Arithmeticoid::point(const Place& v) const { return frobenius_point(base(v), shift_); }

void Arithmeticoid::set_point(const LocalPoint& y) {
  LocalPoint b = frobenius_point(y, -shift_);
  LocalPoint s = standard_point(y.place);
  if (b == s && !b.concrete) {
    deviations_.erase(y.place);
  } else {
    deviations_.insert_or_assign(y.place, b);
  }
}

bool operator==(const Arithmeticoid& a, const Arithmeticoid& b) {
  return a.field_ == b.field_ && a.shift_ == b.shift_ && a.deviations_ == b.deviations_;
}

Arithmeticoid global_frobenius(const Arithmeticoid& y, int m) {
  Arithmeticoid r = y;
  r.set_frobenius_shift(y.frobenius_shift() + m);
  return r;
}

Arithmeticoid lstar_act(const FieldElement& x, const Arithmeticoid& y) {
  if (x.is_zero()) throw std::domain_error("L^* action of zero");
  if (!(x.field() == y.field())) throw std::invalid_argument("field mismatch");
  Arithmeticoid r = y;
  for (const auto& [v, o] : divisor(x)) r.set_point(frobenius_point(y.point(v), o));
  const Place inf = Place::archimedean(y.field());
  const Rational modulus = x.field().is_rationals() ? x.a().abs() : x.norm();
  if (modulus != Rational(1)) r.set_point(arch_act(modulus, y.point(inf)));
  return r;
}

bool stabilizer_check(const FieldElement& x, const Arithmeticoid& y) {
  if (x.is_zero()) throw std::domain_error("L^* action of zero");
  if (!(x.field() == y.field())) throw std::invalid_argument("field mismatch");
  const Rational modulus = x.field().is_rationals() ? x.a().abs() : x.norm();
  return divisor(x).empty() && modulus == Rational(1);
}

namespace {

std::vector<FieldElement> scan_candidates(const NumberField& K, std::int64_t bound) {
  std::vector<FieldElement> out;
  const std::int64_t bmax = K.is_rationals() ? 0 : bound;
  for (std::int64_t a = -bound; a <= bound; ++a)
    for (std::int64_t b = -bmax; b <= bmax; ++b)
      if (a != 0 || b != 0) out.emplace_back(K, Rational(a), Rational(b));
  return out;
}

}  // namespace

std::vector<FieldElement> stabilizer_scan(const Arithmeticoid& y, std::int64_t bound) {
  auto cand = scan_candidates(y.field(), bound);
  std::vector<char> keep(cand.size(), 0);
  const auto n = static_cast<std::int64_t>(cand.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i)
    keep[static_cast<std::size_t>(i)] = stabilizer_check(cand[static_cast<std::size_t>(i)], y) ? 1 : 0;
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (keep[i]) out.push_back(cand[i]);
  return out;
}

std::vector<FieldElement> stabilizer_scan_serial(const Arithmeticoid& y, std::int64_t bound) {
  std::vector<FieldElement> out;
  for (const auto& x : scan_candidates(y.field(), bound))
    if (stabilizer_check(x, y)) out.push_back(x);
  return out;
}

Arithmeticoid aut_act(const std::map<Place, mpz_class>& units, int precision, const Arithmeticoid& y) {
  Arithmeticoid r = y;
  for (const auto& [v, u] : units) {
    LocalPoint pt = y.point(v);
    if (!pt.concrete) throw std::invalid_argument("no concrete layer at place " + v.str());
    pt.concrete = lubin_tate_act(u, precision, *pt.concrete);
    r.set_point(pt);
  }
  return r;
}

std::size_t canonical_index(const NumberField& field, const Place& v) {
  if (v.is_archimedean()) return 1;
  std::size_t idx = 1;
  if (v.p > 2) {
    for (auto q : primes_up_to(v.p - 1)) idx += places_over(field, q).size();
  }
  return idx + 1 + static_cast<std::size_t>(v.conjugate_index);
}

namespace {

double term(const Arithmeticoid& a, const Arithmeticoid& b, const Place& v) {
  double d = local_distance(a.point(v), b.point(v));
  return d / (1.0 + d);
}

}  // namespace

double distance(const Arithmeticoid& y1, const Arithmeticoid& y2, std::size_t terms) {
  if (!(y1.field() == y2.field())) throw std::invalid_argument("distance needs arithmeticoids of the same field");
  std::set<Place> places;
  if (y1.frobenius_shift() != y2.frobenius_shift()) {
    for (const auto& v : first_places(y1.field(), terms)) places.insert(v);
  }
  places.insert(Place::archimedean(y1.field()));
  for (const auto& [v, _] : y1.deviations()) places.insert(v);
  for (const auto& [v, _] : y2.deviations()) places.insert(v);
  double total = 0.0;
  for (const auto& v : places) {
    double t = term(y1, y2, v);
    if (t == 0.0) continue;
    total += std::ldexp(t, -static_cast<int>(std::min<std::size_t>(canonical_index(y1.field(), v), 1060)));
  }
  return total;
}

NormalizationCoordinate::NormalizationCoordinate(const Arithmeticoid& y)
    : field_(y.field()), shift_(y.frobenius_shift()) {
  const Place inf = Place::archimedean(field_);
  Rational a_inf = y.point(inf).exponent.inverse();
  if (a_inf != Rational(1)) special_.emplace(inf, a_inf);
  for (const auto& [v, _] : y.deviations()) {
    if (v.is_archimedean()) continue;
    LocalPoint pt = y.point(v);
    Rational a = Rational(v.local_degree()) / pt.exponent;
    if (a != Rational(v.p).pow(-shift_)) special_.emplace(v, a);
  }
}

Rational NormalizationCoordinate::alpha(const Place& v) const {
  auto it = special_.find(v);
  if (it != special_.end()) return it->second;
  if (v.is_archimedean()) return Rational(1);
  return Rational(v.p).pow(-shift_);
}

bool operator==(const HyperplanePoint& a, const HyperplanePoint& b) {
  const auto& x = a.alpha_;
  const auto& y = b.alpha_;
  if (!(x.field() == y.field())) return false;
  // At places outside both special sets the ratio is p^{shift_y - shift_x},
  // which is a single scalar only when the shifts agree; the scalar is then 1.
  if (x.frobenius_shift() != y.frobenius_shift()) return false;
  std::set<Place> places;
  for (const auto& [v, _] : x.special()) places.insert(v);
  for (const auto& [v, _] : y.special()) places.insert(v);
  places.insert(Place::archimedean(x.field()));
  for (const auto& v : places) {
    if (x.alpha(v) != y.alpha(v)) return false;
  }
  return true;
}

HyperplanePoint period_map(const Arithmeticoid& y) { return HyperplanePoint(NormalizationCoordinate(y)); }

LogValue hyperplane_pairing(const Arithmeticoid& y, const FieldElement& x) {
  NormalizationCoordinate alpha(y);
  const Place inf = Place::archimedean(y.field());
  LogValue total = local_log_abs(x, y.point(inf)).scaled(alpha.alpha(inf));
  for (const auto& [v, _] : divisor(x)) total += local_log_abs(x, y.point(v)).scaled(alpha.alpha(v));
  return total;
}

MutationReport mutate_tate_parameters(const std::vector<TateSymbol>& params, int r) {
  if (r < 0 || r > static_cast<int>(params.size())) throw std::invalid_argument("r out of range");
  MutationReport rep;
  for (std::size_t j = 0; j < params.size(); ++j) {
    const auto& q = params[j];
    if (q.abs_value <= Rational(0) || q.abs_value >= Rational(1)) {
      throw std::invalid_argument("Tate parameter " + q.name + " needs 0 < |q| < 1");
    }
    MutationEntry e;
    e.name = q.name;
    e.abs_before = q.abs_value;
    e.mutated = static_cast<int>(j) < r;
    e.abs_after = e.mutated ? q.abs_value.inverse() : q.abs_value;
    e.admissible_after = e.abs_after < Rational(1);
    if (!e.admissible_after) ++rep.flagged;
    rep.entries.push_back(e);
  }
  rep.requires_fresh_parameters = rep.flagged > 0;
  return rep;
}

}  // namespace ateich
