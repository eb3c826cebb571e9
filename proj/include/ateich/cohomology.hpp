#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ateich/heights.hpp"
#include "ateich/numfield.hpp"

namespace ateich {

/// Image of x in lim L_v^* / L_v^{*p^n}, p the residue characteristic of v.
///
/// The order part is ord_v(x) mod p^n. The unit tag is the exact unit
/// x / pi^ord_v(x) for the global uniformizer pi, kept as a field element
/// rather than reduced modulo p^n-th powers.
struct KummerClass {
  Place place;
  int precision = 1;
  mpz_class order_part;  // in [0, p^n)
  FieldElement unit_tag;

  mpz_class modulus() const;
  KummerClass operator+(const KummerClass& o) const;
  friend bool operator==(const KummerClass& a, const KummerClass& b) {
    return a.place == b.place && a.precision == b.precision && a.order_part == b.order_part &&
           a.unit_tag == b.unit_tag;
  }
  std::string key() const;
};

/// Finite family of local Kummer classes plus the archimedean Ext^1 slot in C^*.
struct AdelicClass {
  NumberField field = NumberField::rationals();
  int precision = 1;
  std::map<Place, KummerClass> finite;
  std::complex<double> arch_q{1.0, 0.0};

  AdelicClass operator+(const AdelicClass& o) const;
  bool is_trivial() const;
  std::string key() const;
  friend bool operator==(const AdelicClass& a, const AdelicClass& b) { return a.key() == b.key(); }
  friend bool operator<(const AdelicClass& a, const AdelicClass& b) { return a.key() < b.key(); }
};

KummerClass kummer_class(const FieldElement& x, const Place& v, int n);
/// Trivial local class (order 0, unit tag 1).
KummerClass trivial_kummer_class(const NumberField& field, const Place& v, int n);

/// The class of the Tate parameters: Kummer class of q_v at each listed place,
/// `schottky_arch` in the archimedean slot, trivial elsewhere.
AdelicClass tate_class(const NumberField& field, const std::map<Place, FieldElement>& semistable,
                       std::complex<double> schottky_arch, int n);
/// q mod p^m as an element of Q, with m the largest exponent keeping p^m below 2^62.
FieldElement tate_parameter_element(const TateParameter& t);

/// True iff every finite order part vanishes (the class lies in H^1_f).
bool bloch_kato_member(const AdelicClass& c);

/// An isomorphism between cohomologies of arithmeticoids, restricted to what
/// can be written down: at `place` (or at every place when empty) the order
/// part is scaled by the p-adic unit `unit_scale` and by p^frobenius_shift,
/// the unit tag is raised to p^frobenius_shift and multiplied by `unit_factor`.
/// A global transform also raises the archimedean slot to the power unit_scale.
struct Transform {
  std::optional<Place> place;
  mpz_class unit_scale = 1;
  int frobenius_shift = 0;
  std::optional<FieldElement> unit_factor;
};

AdelicClass apply_transform(const AdelicClass& c, const Transform& t);

/// Union over labels of the images of each class under its transforms.
/// Throws std::invalid_argument for a label without transforms.
std::set<AdelicClass> collate(const std::map<std::string, AdelicClass>& classes,
                              const std::map<std::string, std::vector<Transform>>& isos);

}  // namespace ateich
