#pragma once

#include <gmpxx.h>

#include "ateich/hahn.hpp"

namespace ateich {

/// [u](a) = (1 + a)^u - 1 for u in Z_p known mod p^precision, val(a) > 0.
///
/// In characteristic p, (1 + a)^u = prod_i (1 + a^{p^i})^{u_i} over the base-p
/// digits of u. The digits beyond `precision` are unknown, so the result cap
/// is lowered to p^precision * val(a) when that is below the input cap.
HahnSeries lubin_tate_power(const mpz_class& u, int precision, const HahnSeries& a);

/// The Z_p^* action; throws std::invalid_argument for a non-unit u.
HahnSeries lubin_tate_act(const mpz_class& u, int precision, const HahnSeries& a);

}  // namespace ateich
