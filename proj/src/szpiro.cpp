#include "ateich/szpiro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ateich {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("SL2(Z) entry exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

std::complex<double> coeff_a(const Mat2& g) { return {(g.a + g.d) / 2, (g.c - g.b) / 2}; }
std::complex<double> coeff_b(const Mat2& g) { return {(g.a - g.d) / 2, (g.c + g.b) / 2}; }

// arg(1 + w e^{-2ix}) in [-pi/2, pi/2]; |w| < 1 up to rounding.
double bounded_arg(std::complex<double> w, double x) {
  std::complex<double> u = 1.0 + w * std::polar(1.0, -2.0 * x);
  double phi = std::atan2(u.imag(), u.real());
  return std::clamp(phi, -kPi / 2, kPi / 2);
}

double principal_angle(double x, double y) {
  double t = std::atan2(y, x);
  return t < 0 ? t + kTwoPi : t;
}

// g~(x) - x, with period pi.
double displacement(std::complex<double> w, double c, double x) { return c + bounded_arg(w, x); }

HeightEstimate refine(const UnivCoverElt& e, const std::vector<double>& samples, int grid) {
  const double h = kPi / grid;
  const std::complex<double> w = coeff_b(e.matrix) / coeff_a(e.matrix);
  const double c = e.rotation_offset();
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i] > samples[best]) best = i;
  double bx = best * h, bv = samples[best];
  double lo = bx - h, hi = bx + h;
  for (int it = 0; it < 80; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    double f1 = displacement(w, c, m1), f2 = displacement(w, c, m2);
    if (f1 > bv) bv = f1, bx = m1;
    if (f2 > bv) bv = f2, bx = m2;
    if (f1 < f2)
      lo = m1;
    else
      hi = m2;
  }
  // Half of (step + rounding slack), matching the factor 1/2 in h.
  return {bv / 2, (h + 1e-12) / 2, bx < 0 ? bx + kPi : bx};
}

}  // namespace

Mat2i Mat2i::operator*(const Mat2i& o) const {
  using I = __int128;
  return {checked(I(a) * o.a + I(b) * o.c), checked(I(a) * o.b + I(b) * o.d), checked(I(c) * o.a + I(d) * o.c),
          checked(I(c) * o.b + I(d) * o.d)};
}

Mat2i Mat2i::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Mat2i r, base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

std::int64_t Mat2i::det() const { return checked(static_cast<__int128>(a) * d - static_cast<__int128>(b) * c); }

double UnivCoverElt::rotation_offset() const {
  std::complex<double> w = coeff_b(matrix) / coeff_a(matrix);
  return lift0 - bounded_arg(w, 0.0);
}

double UnivCoverElt::shear() const { return std::abs(coeff_b(matrix)); }

double UnivCoverElt::evaluate(double x) const {
  std::complex<double> w = coeff_b(matrix) / coeff_a(matrix);
  return x + rotation_offset() + bounded_arg(w, x);
}

UnivCoverElt lift(const Mat2& g, int winding) {
  double scale = std::max({1.0, g.a * g.a, g.b * g.b, g.c * g.c, g.d * g.d});
  if (std::abs(g.det() - 1.0) > 1e-12 * scale) throw std::invalid_argument("lift: determinant is not 1");
  return {g, principal_angle(g.a, g.c) + kTwoPi * winding};
}

UnivCoverElt identity_lift() { return {}; }
UnivCoverElt z_element() { return {Mat2{-1, 0, 0, -1}, kPi}; }
UnivCoverElt phi_infinity(int m) { return {Mat2{}, kTwoPi * m}; }

UnivCoverElt rotation(double theta) {
  return {Mat2{std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)}, theta};
}

UnivCoverElt compose(const UnivCoverElt& e1, const UnivCoverElt& e2) {
  return {e1.matrix * e2.matrix, e1.evaluate(e2.lift0)};
}

UnivCoverElt inverse(const UnivCoverElt& e) {
  const Mat2& g = e.matrix;
  Mat2 gi{g.d, -g.b, -g.c, g.a};
  // g~^{-1}(0) is the y with g~(y) = 0; y is congruent to the angle of g^{-1}(1,0).
  double y = principal_angle(gi.a, gi.c);
  y -= kTwoPi * std::round(e.evaluate(y) / kTwoPi);
  return {gi, y};
}

UnivCoverElt power(const UnivCoverElt& e, int n) {
  UnivCoverElt base = n < 0 ? inverse(e) : e;
  UnivCoverElt r = identity_lift();
  for (int i = 0; i < std::abs(n); ++i) r = compose(r, base);
  return r;
}

HeightEstimate height_q(const UnivCoverElt& e, int grid) {
  if (grid < 64) throw std::invalid_argument("height_q: grid must be >= 64");
  const std::complex<double> w = coeff_b(e.matrix) / coeff_a(e.matrix);
  const double c = e.rotation_offset();
  const double h = kPi / grid;
  std::vector<double> samples(static_cast<std::size_t>(grid));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid; ++i) samples[static_cast<std::size_t>(i)] = displacement(w, c, i * h);
  return refine(e, samples, grid);
}

HeightEstimate height_q_serial(const UnivCoverElt& e, int grid) {
  if (grid < 64) throw std::invalid_argument("height_q: grid must be >= 64");
  const std::complex<double> w = coeff_b(e.matrix) / coeff_a(e.matrix);
  const double c = e.rotation_offset();
  const double h = kPi / grid;
  std::vector<double> samples(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) samples[static_cast<std::size_t>(i)] = displacement(w, c, i * h);
  return refine(e, samples, grid);
}

std::vector<UnivCoverElt> log_link_chain(const UnivCoverElt& e, int range) {
  if (range < 0) throw std::invalid_argument("log_link_chain: range must be >= 0");
  std::vector<UnivCoverElt> out;
  for (int n = -range; n <= range; ++n) out.push_back(compose(e, phi_infinity(n)));
  return out;
}

namespace {

void check_theta_args(std::complex<double> tau, int ell) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("tau must lie in the upper half plane");
  if (ell < 5 || !is_prime(ell)) throw std::invalid_argument("ell must be a prime >= 5");
}

}  // namespace

ThetaLink theta_link(std::complex<double> tau, int ell) {
  check_theta_args(tau, ell);
  ThetaLink t{tau, ell, (ell - 1) / 2, {}};
  for (int j = 1; j <= t.lstar; ++j) t.alpha.push_back(Mat2{double(j), 0, 0, 1.0 / j});
  return t;
}

std::complex<double> mobius(const Mat2& g, std::complex<double> tau) { return (g.a * tau + g.b) / (g.c * tau + g.d); }

std::complex<double> schottky(std::complex<double> tau) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("tau must lie in the upper half plane");
  return std::exp(std::complex<double>(0, kTwoPi) * tau);
}

std::vector<std::complex<double>> theta_values(std::complex<double> tau, int ell) {
  check_theta_args(tau, ell);
  std::vector<std::complex<double>> out;
  for (const auto& r : theta_exponents(ell))
    out.push_back(std::exp(std::complex<double>(0, kTwoPi) * tau * r.to_double()));
  return out;
}

std::vector<Rational> theta_exponents(int ell) {
  if (ell < 5 || !is_prime(ell)) throw std::invalid_argument("ell must be a prime >= 5");
  std::vector<Rational> out;
  for (int j = 1; j <= (ell - 1) / 2; ++j) out.emplace_back(j * j, 2 * ell);
  return out;
}

bool MonodromyDatum::relation_holds() const {
  Mat2i r;
  for (int j = 0; j < genus; ++j) r = r * a[j] * b[j] * a[j].inverse() * b[j].inverse();
  for (const auto& g : punctures) r = r * g;
  return r == Mat2i{};
}

std::vector<Mat2i> MonodromyDatum::generators() const {
  std::vector<Mat2i> out;
  for (int j = 0; j < genus; ++j) {
    out.push_back(a[j]);
    out.push_back(b[j]);
  }
  out.insert(out.end(), punctures.begin(), punctures.end());
  return out;
}

MonodromyDatum monodromy_generate(int genus, int punctures, std::uint64_t seed, std::int64_t entry_bound) {
  if (genus < 0 || punctures < 1) throw std::invalid_argument("monodromy_generate: need genus >= 0, punctures >= 1");
  static const Mat2i letters[] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 1, 1}, {1, 0, -1, 1}, {0, -1, 1, 0}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, 3), letter(0, 4);
  auto word = [&] {
    Mat2i g;
    for (int n = len(rng); n > 0; --n) g = g * letters[letter(rng)];
    return g;
  };
  for (int attempt = 0; attempt < 100000; ++attempt) {
    MonodromyDatum d;
    d.genus = genus;
    Mat2i r;
    for (int j = 0; j < genus; ++j) {
      d.a.push_back(word());
      d.b.push_back(word());
      r = r * d.a[j] * d.b[j] * d.a[j].inverse() * d.b[j].inverse();
    }
    for (int s = 0; s + 1 < punctures; ++s) {
      d.punctures.push_back(word());
      r = r * d.punctures.back();
    }
    Mat2i last = r.inverse();
    if (std::max({std::abs(last.a), std::abs(last.b), std::abs(last.c), std::abs(last.d)}) > entry_bound) continue;
    d.punctures.push_back(last);
    return d;
  }
  throw std::runtime_error("monodromy_generate: entry bound not met");
}

MatModL reduce_mod(const Mat2i& g, int ell) {
  auto m = [ell](std::int64_t x) { return static_cast<int>(((x % ell) + ell) % ell); };
  return {m(g.a), m(g.b), m(g.c), m(g.d)};
}

std::vector<MatModL> reduce_mod(const MonodromyDatum& datum, int ell) {
  if (!is_prime(ell)) throw std::invalid_argument("reduce_mod: ell must be prime");
  std::vector<MatModL> out;
  for (const auto& g : datum.generators()) out.push_back(reduce_mod(g, ell));
  return out;
}

bool irreducible(const std::vector<MatModL>& rep, int ell) {
  using Line = std::pair<int, int>;  // (x, y) with x = 1, or (0, 1)
  auto normalize = [ell](long x, long y) -> Line {
    x = ((x % ell) + ell) % ell;
    y = ((y % ell) + ell) % ell;
    if (x == 0) return {0, 1};
    long inv = 1;
    for (long e = ell - 2, b = x; e > 0; e >>= 1, b = b * b % ell)
      if (e & 1) inv = inv * b % ell;
    return {1, static_cast<int>(y * inv % ell)};
  };
  auto fixes = [ell](const MatModL& g, const Line& l) {
    long x = l.first, y = l.second;
    long gx = (g.a * x + g.b * y) % ell, gy = (g.c * x + g.d * y) % ell;
    return (x * gy - y * gx) % ell == 0;
  };
  std::vector<Line> candidates;
  bool have = false;
  for (const auto& g : rep) {
    if (g.b == 0 && g.c == 0 && g.a == g.d) continue;  // scalar
    if (!have) {
      long t = g.a + g.d, n = static_cast<long>(g.a) * g.d - static_cast<long>(g.b) * g.c;
      for (long lam = 0; lam < ell; ++lam) {
        if (((lam * lam - t * lam + n) % ell + ell) % ell != 0) continue;
        // Kernel of g - lam is a single line since g is not scalar.
        long r0 = g.a - lam, r1 = g.b;
        Line l = (((r0 % ell) + ell) % ell != 0 || r1 % ell != 0) ? normalize(r1, -r0) : normalize(g.d - lam, -g.c);
        if (std::find(candidates.begin(), candidates.end(), l) == candidates.end()) candidates.push_back(l);
      }
      have = true;
    } else {
      std::erase_if(candidates, [&](const Line& l) { return !fixes(g, l); });
    }
    if (candidates.empty()) return true;
  }
  return false;
}

LocusSup theta_locus_sup(const std::vector<LinkTuple>& links, int grid) {
  if (links.empty()) throw std::invalid_argument("theta_locus_sup: empty set");
  LocusSup best;
  for (std::size_t i = 0; i < links.size(); ++i) {
    double v = 0, err = 0;
    for (const auto& row : links[i])
      for (const auto& e : row) {
        auto h = height_q_serial(e, grid);
        v += h.value;
        err += h.error;
      }
    if (i == 0 || v > best.value) best = {v, err, i};
  }
  return best;
}

namespace {

Mat2 real_power(const Mat2i& g, int e) {
  try {
    return g.pow(e).to_real();
  } catch (const std::overflow_error&) {
    Mat2 r, b = g.to_real();
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  }
}

LinkTuple build_tuple(const MonodromyDatum& datum, int lstar, const std::vector<std::vector<int>>& windings) {
  LinkTuple t;
  for (std::size_t s = 0; s < datum.punctures.size(); ++s) {
    std::vector<UnivCoverElt> row;
    for (int j = 1; j <= lstar; ++j) {
      int w = windings.empty() ? 0 : windings.at(s).at(static_cast<std::size_t>(j - 1));
      row.push_back(lift(real_power(datum.punctures[s], j * j), w));
    }
    t.push_back(std::move(row));
  }
  return t;
}

}  // namespace

Cor312Report corollary312_check(const MonodromyDatum& datum, int ell, const std::vector<std::vector<int>>& windings,
                                int grid) {
  if (ell < 5 || !is_prime(ell)) throw std::invalid_argument("corollary312_check: ell must be a prime >= 5");
  if (!windings.empty() && windings.size() != datum.punctures.size())
    throw std::invalid_argument("corollary312_check: one winding row per puncture");
  const int lstar = (ell - 1) / 2;
  LinkTuple tuple = build_tuple(datum, lstar, windings);
  Cor312Report r;
  double err = 0;
  UnivCoverElt prod = identity_lift();
  for (const auto& row : tuple)
    for (const auto& e : row) {
      auto h = height_q_serial(e, grid);
      r.mid += h.value;
      err += h.error;
      prod = compose(prod, e);
    }
  r.rhs = height_q_serial(prod, grid).value;
  std::vector<LinkTuple> locus{tuple};
  if (!windings.empty()) locus.push_back(build_tuple(datum, lstar, {}));
  r.lhs = theta_locus_sup(locus, grid).value;
  r.tolerance = err;
  r.pass = r.lhs >= r.mid && r.mid + r.tolerance >= r.rhs;
  return r;
}

namespace {

Cor312Row suite_row(std::uint64_t seed, int ell, int max_punctures, int grid) {
  Cor312Row row;
  row.seed = seed;
  row.ell = ell;
  row.genus = static_cast<int>(seed % 3);
  row.punctures = 1 + static_cast<int>((seed / 3) % static_cast<std::uint64_t>(max_punctures));
  auto datum = monodromy_generate(row.genus, row.punctures, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> w(-1, 1);
  std::vector<std::vector<int>> windings(static_cast<std::size_t>(row.punctures));
  for (auto& v : windings)
    for (int j = 0; j < (ell - 1) / 2; ++j) v.push_back(w(rng));
  row.report = corollary312_check(datum, ell, windings, grid);
  return row;
}

}  // namespace

std::vector<Cor312Row> cor312_suite(std::uint64_t base_seed, int count, int ell, int max_punctures, int grid) {
  std::vector<Cor312Row> rows(static_cast<std::size_t>(std::max(count, 0)));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i)
    rows[static_cast<std::size_t>(i)] = suite_row(base_seed + static_cast<std::uint64_t>(i), ell, max_punctures, grid);
  return rows;
}

std::vector<Cor312Row> cor312_suite_serial(std::uint64_t base_seed, int count, int ell, int max_punctures,
                                           int grid) {
  std::vector<Cor312Row> rows;
  for (int i = 0; i < count; ++i)
    rows.push_back(suite_row(base_seed + static_cast<std::uint64_t>(i), ell, max_punctures, grid));
  return rows;
}

const LatticeEntry& LogThetaLattice::at(int n, int m) const {
  auto in = std::find(n_values.begin(), n_values.end(), n);
  auto im = std::find(m_values.begin(), m_values.end(), m);
  if (in == n_values.end() || im == m_values.end()) throw std::out_of_range("log_theta_lattice: no such vertex");
  return entries[static_cast<std::size_t>((in - n_values.begin()) * std::ssize(m_values) + (im - m_values.begin()))];
}

std::vector<LatticeEntry> LogThetaLattice::fiber(int n) const {
  std::vector<LatticeEntry> out;
  for (const auto& e : entries)
    if (e.n == n) out.push_back(e);
  return out;
}

LogThetaLattice log_theta_lattice(int n_min, int n_max, int m_min, int m_max, std::uint64_t seed, int grid) {
  if (n_min > n_max || m_min > m_max) throw std::invalid_argument("log_theta_lattice: empty range");
  LogThetaLattice L;
  std::mt19937_64 rng(seed);
  for (int m = m_min; m <= m_max; ++m) L.m_values.push_back(m);
  for (int n = n_min; n <= n_max; ++n) {
    L.n_values.push_back(n);
    UnivCoverElt g = random_cover_element(rng);
    for (int m = m_min; m <= m_max; ++m) {
      UnivCoverElt e = compose(g, phi_infinity(m));
      L.entries.push_back({n, m, e, height_q(e, grid).value});
    }
  }
  return L;
}

UnivCoverElt random_cover_element(std::mt19937_64& rng, double max_stretch) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi), stretch(0.0, max_stretch);
  std::uniform_int_distribution<int> winding(-2, 2);
  double t1 = angle(rng), s = stretch(rng), t2 = angle(rng);
  int w = winding(rng);
  Mat2 k1{std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1)};
  Mat2 k2{std::cos(t2), -std::sin(t2), std::sin(t2), std::cos(t2)};
  Mat2 g = k1 * Mat2{std::exp(s), 0, 0, std::exp(-s)} * k2;
  return lift(g, w);
}

}  // namespace ateich
