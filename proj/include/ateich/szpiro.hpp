#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ateich/rational.hpp"

namespace ateich {

struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

struct Mat2i {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  /// Exact product; throws std::overflow_error outside 64 bits.
  Mat2i operator*(const Mat2i& o) const;
  Mat2i inverse() const { return {d, -b, -c, a}; }  // det = 1
  Mat2i pow(int e) const;
  std::int64_t det() const;
  Mat2 to_real() const {
    return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), static_cast<double>(d)};
  }
  friend bool operator==(const Mat2i&, const Mat2i&) = default;
};

/// Element of the universal cover of SL2(R), acting on angles by the lift of
/// the vector action on R^2 \ {0}. `lift0` = g~(0).
///
/// Writing g(z) = A z + B conj(z) on C, |A|^2 - |B|^2 = 1 and
/// g~(x) = x + c + arg(1 + (B/A) e^{-2ix}) with the argument in (-pi/2, pi/2).
struct UnivCoverElt {
  Mat2 matrix;
  double lift0 = 0.0;

  double evaluate(double x) const;
  /// The constant c above.
  double rotation_offset() const;
  /// |B| in the decomposition above.
  double shear() const;
};

/// lift0 = principal angle of g(1,0) in [0, 2pi) plus 2pi winding.
/// Throws std::invalid_argument if |det - 1| > 1e-12 max(1, |g|^2).
UnivCoverElt lift(const Mat2& g, int winding = 0);
UnivCoverElt identity_lift();
/// z: the lift of -I with lift0 = pi.
UnivCoverElt z_element();
/// phi_infinity^m = z^{2m}.
UnivCoverElt phi_infinity(int m = 1);
/// Rotation by theta lifted with lift0 = theta.
UnivCoverElt rotation(double theta);
UnivCoverElt compose(const UnivCoverElt& e1, const UnivCoverElt& e2);
UnivCoverElt inverse(const UnivCoverElt& e);
UnivCoverElt power(const UnivCoverElt& e, int n);

struct HeightEstimate {
  double value = 0.0;
  double error = 0.0;   // value <= h <= value + error
  double argmax = 0.0;
};

/// h(g~) = (1/2) sup_x (g~(x) - x). The displacement has period pi; it is
/// sampled on a uniform grid of [0, pi) and refined by ternary search around
/// the grid argmax. Since g~ is increasing, the displacement falls with slope
/// at most 1, so the grid step bounds the underestimate. OpenMP over the grid.
HeightEstimate height_q(const UnivCoverElt& e, int grid = 4096);
HeightEstimate height_q_serial(const UnivCoverElt& e, int grid = 4096);

/// {e phi_infinity^n : |n| <= range}, ordered by n.
std::vector<UnivCoverElt> log_link_chain(const UnivCoverElt& e, int range);

struct ThetaLink {
  std::complex<double> tau;
  int ell = 5;
  int lstar = 2;
  std::vector<Mat2> alpha;  // diag(j, 1/j), j = 1..lstar
};

ThetaLink theta_link(std::complex<double> tau, int ell);
std::complex<double> mobius(const Mat2& g, std::complex<double> tau);
/// q = exp(2 pi i tau).
std::complex<double> schottky(std::complex<double> tau);
/// (q^{j^2 / 2 ell})_{j=1..lstar} evaluated as exp(2 pi i tau j^2 / (2 ell)).
std::vector<std::complex<double>> theta_values(std::complex<double> tau, int ell);
/// The exponents j^2 / (2 ell) of 2 pi i tau.
std::vector<Rational> theta_exponents(int ell);

/// Surface-group monodromy: prod_j [a_j, b_j] prod_s gamma_s = 1.
struct MonodromyDatum {
  int genus = 0;
  std::vector<Mat2i> a, b;
  std::vector<Mat2i> punctures;

  bool relation_holds() const;
  /// Handles a_1, b_1, ..., then punctures.
  std::vector<Mat2i> generators() const;
};

/// Random words of length <= 3 in the elementary parabolics and S for all
/// generators but the last puncture, which is solved from the relation.
/// Redraws until every entry of the solved puncture is at most `entry_bound`.
MonodromyDatum monodromy_generate(int genus, int punctures, std::uint64_t seed, std::int64_t entry_bound = 1000);

struct MatModL {
  int a = 1, b = 0, c = 0, d = 1;
};

std::vector<MatModL> reduce_mod(const MonodromyDatum& datum, int ell);
MatModL reduce_mod(const Mat2i& g, int ell);
/// Irreducible over F_ell: no common eigenline. Eigenlines come from the
/// roots of the characteristic polynomial.
bool irreducible(const std::vector<MatModL>& rep, int ell);

/// A Theta-link tuple: tuple[s][j] = lift of gamma_s^{(j+1)^2}.
using LinkTuple = std::vector<std::vector<UnivCoverElt>>;

struct LocusSup {
  double value = 0.0;
  double error = 0.0;
  std::size_t argmax = 0;
};

/// max over the supplied tuples of sum_s sum_j h(g~_{s,j}). Throws for an empty set.
LocusSup theta_locus_sup(const std::vector<LinkTuple>& links, int grid = 4096);

struct Cor312Report {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// windings[s][j] selects the lift of gamma_s^{(j+1)^2}; empty means all 0.
Cor312Report corollary312_check(const MonodromyDatum& datum, int ell,
                                const std::vector<std::vector<int>>& windings = {}, int grid = 4096);

struct Cor312Row {
  std::uint64_t seed = 0;
  int genus = 0;
  int punctures = 0;
  int ell = 5;
  Cor312Report report;
};

/// Monte-Carlo over seeds base_seed, ..., base_seed + count - 1; genus = seed mod 3,
/// punctures = 1 + (seed / 3) mod max_punctures, windings drawn from {-1, 0, 1}.
/// OpenMP over seeds; rows in seed order.
std::vector<Cor312Row> cor312_suite(std::uint64_t base_seed, int count, int ell, int max_punctures = 5,
                                    int grid = 1024);
std::vector<Cor312Row> cor312_suite_serial(std::uint64_t base_seed, int count, int ell, int max_punctures = 5,
                                           int grid = 1024);

struct LatticeEntry {
  int n = 0;
  int m = 0;
  UnivCoverElt elt;
  double height = 0.0;
};

/// Vertical fibers are log-link chains g_n phi_infinity^m over a seeded base
/// element g_n per column.
struct LogThetaLattice {
  std::vector<int> n_values;
  std::vector<int> m_values;
  std::vector<LatticeEntry> entries;  // row-major in n, then m

  const LatticeEntry& at(int n, int m) const;
  /// theta_{n,m} -> theta_n.
  static int project(const LatticeEntry& e) { return e.n; }
  std::vector<LatticeEntry> fiber(int n) const;
};

LogThetaLattice log_theta_lattice(int n_min, int n_max, int m_min, int m_max, std::uint64_t seed, int grid = 1024);

/// Random element k(t1) diag(e^s, e^-s) k(t2), s in [0, max_stretch), lifted with a winding in [-2, 2].
UnivCoverElt random_cover_element(std::mt19937_64& rng, double max_stretch = 2.0);

}  // namespace ateich
