#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "ateich/hahn.hpp"

namespace ateich {

/// Integer polynomial in 2N variables X_0..X_{N-1}, Y_0..Y_{N-1}.
using WittMonomial = std::vector<int>;
using WittPoly = std::map<WittMonomial, mpz_class>;

/// Universal Witt sum, product and negation polynomials for length N <= 3,
/// obtained once from the ghost components over Q.
struct WittPolynomials {
  std::int64_t p = 2;
  int length = 1;
  std::vector<WittPoly> sum;
  std::vector<WittPoly> product;
  std::vector<WittPoly> negation;  // in the X variables only

  static const WittPolynomials& get(std::int64_t p, int length);
};

/// Ghost component w_n = sum_{i<=n} p^i X_i^{p^{n-i}} in the X (offset 0) or Y
/// (offset N) variables.
WittPoly witt_ghost(std::int64_t p, int length, int n, int offset);

/// Truncated Witt vector (x_0, ..., x_{N-1}) over the Hahn model.
class WittVector {
 public:
  explicit WittVector(std::vector<HahnSeries> components);

  std::int64_t p() const { return components_.front().p(); }
  int length() const { return static_cast<int>(components_.size()); }
  const std::vector<HahnSeries>& components() const { return components_; }
  const HahnSeries& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const WittVector& a, const WittVector& b) { return a.components_ == b.components_; }

 private:
  std::vector<HahnSeries> components_;
};

WittVector witt_add(const WittVector& x, const WittVector& y);
WittVector witt_mul(const WittVector& x, const WittVector& y);
WittVector witt_neg(const WittVector& x);
WittVector witt_sub(const WittVector& x, const WittVector& y);

/// [a] = (a, 0, ..., 0); requires val(a) >= 0.
WittVector teichmueller_lift(const HahnSeries& a, int length);
/// p = (0, 1, 0, ...) in W(F) for a perfect F of characteristic p.
WittVector witt_p(const FiniteField* field, int length, const Rational& cap);
/// The degree-one primitive element [a] - p.
WittVector primitive_element(const HahnSeries& a, int length);

}  // namespace ateich
