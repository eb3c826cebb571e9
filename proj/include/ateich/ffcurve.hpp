#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "ateich/hahn.hpp"
#include "ateich/log_value.hpp"
#include "ateich/numfield.hpp"

namespace ateich {

/// A closed classical point of the local curve at a place.
///
/// Finite place: `exponent` is the Beltrami exponent e, |p|_{K_y} = p^{-e}, and
/// `concrete` optionally carries a Hahn representative a with val(a) = e.
/// Archimedean place: `exponent` is s, the untilt (C, |.|^s).
struct LocalPoint {
  Place place;
  Rational exponent{1};
  std::optional<HahnSeries> concrete;

  bool is_archimedean() const { return place.is_archimedean(); }

  /// Compares place and Beltrami data; concrete layers must agree when both exist.
  friend bool operator==(const LocalPoint& a, const LocalPoint& b);
};

/// e = [L_v : Q_p] at finite places (Artin normalization), s = 1 at infinity.
LocalPoint standard_point(const Place& v);
/// Finite point with explicit Beltrami exponent e > 0.
LocalPoint finite_point(const Place& v, const Rational& e);
/// Finite point from a Hahn representative; e = val(a).
LocalPoint concrete_point(const Place& v, const HahnSeries& a);
/// Archimedean point (C, |.|^s), s > 0.
LocalPoint archimedean_point(const Place& v, const Rational& s);

/// e -> p^m e, a -> Frobenius^m(a); the archimedean Frobenius is the identity.
LocalPoint frobenius_point(const LocalPoint& y, int m);

/// log|p|_{K_y} = -e log p at finite places; at infinity the exponent s is returned as log-value s.
LogValue beltrami(const LocalPoint& y);

/// log|x|_{K_y} for x in L: -e ord_v(x)/e_v log p at finite v, s log|x|_v at infinity.
LogValue local_log_abs(const FieldElement& x, const LocalPoint& y);

/// Action of a complex modulus on the archimedean curve R^{>0}: s -> |z| s.
LocalPoint arch_act(const Rational& z_modulus, const LocalPoint& y);

/// |log e1 - log e2| (finite) or |log s1 - log s2| (archimedean).
double local_distance(const LocalPoint& y1, const LocalPoint& y2);

/// AH(a) in 1 + m_F; the series length is chosen from the cap of a.
HahnSeries switch_description(const HahnSeries& a);

/// Canonical representative of the class of a under the Z_p^* Lubin-Tate
/// action at working precision N: the least element of the orbit over
/// (Z/p^N)^*. Throws when p^N exceeds `max_units`.
HahnSeries canonical_representative(const HahnSeries& a, int precision, std::int64_t max_units = 4096);
bool same_point_class(const HahnSeries& a, const HahnSeries& b, int precision, std::int64_t max_units = 4096);

/// Fiber of prod_{v|p} Y_{L_v} -> Y_{Q_p} over the base point with Beltrami
/// exponent `base_exponent`: one point per place v | p with e_v = [L_v:Q_p] * base.
std::vector<LocalPoint> correspondence_fiber(const NumberField& field, std::int64_t p, const Rational& base_exponent);

}  // namespace ateich
