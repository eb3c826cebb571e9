#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "ateich/ffcurve.hpp"

namespace ateich {

/// A point of the adelic curve: one local point per place.
///
/// Stored sparsely: `base(v)` is the recorded deviation or the standard point,
/// and the global Frobenius is kept as a lazy shift, point(v) = phi^shift(base(v))
/// at every finite place.
class Arithmeticoid {
 public:
  explicit Arithmeticoid(NumberField field, std::string label = "y0");
  static Arithmeticoid standard(const NumberField& field) { return Arithmeticoid(field, "y0"); }

  const NumberField& field() const { return field_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  int frobenius_shift() const { return shift_; }
  const std::map<Place, LocalPoint>& deviations() const { return deviations_; }

  LocalPoint base(const Place& v) const;
  /// Materialized local point at v.
  LocalPoint point(const Place& v) const;
  /// Overrides the materialized point at v.
  void set_point(const LocalPoint& y);
  void set_frobenius_shift(int m) { shift_ = m; }

  friend bool operator==(const Arithmeticoid& a, const Arithmeticoid& b);

 private:
  NumberField field_;
  std::string label_;
  int shift_ = 0;
  std::map<Place, LocalPoint> deviations_;
};

Arithmeticoid global_frobenius(const Arithmeticoid& y, int m);
/// Frobenius^{ord_v(x)} at finite places, s -> |x|_inf s at infinity.
Arithmeticoid lstar_act(const FieldElement& x, const Arithmeticoid& y);
/// Exact decision of x.y == y: every ord_v(x) = 0 and |x|_inf = 1.
bool stabilizer_check(const FieldElement& x, const Arithmeticoid& y);
/// Elements a + b w with integers |a|, |b| <= bound (b = 0 over Q), x != 0,
/// that act trivially on y, in scan order. OpenMP over the scan.
std::vector<FieldElement> stabilizer_scan(const Arithmeticoid& y, std::int64_t bound);
std::vector<FieldElement> stabilizer_scan_serial(const Arithmeticoid& y, std::int64_t bound);
/// Lubin-Tate action of p-adic units (residues mod p^precision) on the concrete layers.
Arithmeticoid aut_act(const std::map<Place, mpz_class>& units, int precision, const Arithmeticoid& y);

/// Position of v in the canonical enumeration (archimedean place = 1).
std::size_t canonical_index(const NumberField& field, const Place& v);

/// sum_n 2^{-n} d_n / (1 + d_n) over the canonical enumeration. Places beyond
/// index `terms` are included only where a deviation is stored; the remaining
/// tail is below 2^{-terms}.
double distance(const Arithmeticoid& y1, const Arithmeticoid& y2, std::size_t terms = 64);

/// alpha_v with (L_v, |.|_v) = (L_v, |.|_{K_y}^{alpha_v}): [L_v:Q_p]/e at finite
/// places and 1/s at infinity.
class NormalizationCoordinate {
 public:
  explicit NormalizationCoordinate(const Arithmeticoid& y);

  Rational alpha(const Place& v) const;
  /// Entries differing from the generic value p^{-shift}.
  const std::map<Place, Rational>& special() const { return special_; }
  int frobenius_shift() const { return shift_; }
  const NumberField& field() const { return field_; }

 private:
  NumberField field_;
  int shift_ = 0;
  std::map<Place, Rational> special_;
};

/// Projective class of an alpha-vector.
class HyperplanePoint {
 public:
  explicit HyperplanePoint(NormalizationCoordinate alpha) : alpha_(std::move(alpha)) {}
  const NormalizationCoordinate& alpha() const { return alpha_; }

  /// Equality up to one global positive scalar. Almost all coordinates take
  /// the generic value, which pins the scalar.
  friend bool operator==(const HyperplanePoint& a, const HyperplanePoint& b);

 private:
  NormalizationCoordinate alpha_;
};

HyperplanePoint period_map(const Arithmeticoid& y);

/// sum_v alpha_v log|x|_{K_{y_v}}, exact; zero for every x in L^*.
LogValue hyperplane_pairing(const Arithmeticoid& y, const FieldElement& x);

struct TateSymbol {
  std::string name;
  Rational abs_value;  // |q_j| at the reference place
};

struct MutationEntry {
  std::string name;
  Rational abs_before;
  Rational abs_after;
  bool mutated = false;
  bool admissible_after = true;
};

struct MutationReport {
  std::vector<MutationEntry> entries;
  int flagged = 0;
  bool requires_fresh_parameters = false;
};

/// sigma(q_j) = q_j^{-1} for j <= r; 0 <= r <= n.
MutationReport mutate_tate_parameters(const std::vector<TateSymbol>& params, int r);

}  // namespace ateich
