#ifndef EQMF_CERTIFIED_HPP
#define EQMF_CERTIFIED_HPP

#include "eqmf/rational.hpp"

// Certified one-sided bounds on real quantities.  All values are exact
// rationals; transcendental functions are evaluated by Taylor/atanh series
// with explicit remainder bounds and dyadic rounding in the stated direction
// (128 fractional bits), so every result is a true upper or lower bound.
// Rational-only arithmetic (+, *, /) on such bounds preserves the direction
// as long as all quantities are nonnegative, which is the only way they are
// combined here.

namespace eqmf {

// An exact rational certified to be >= the real quantity it stands for.
struct UpperReal {
  Rational value;
};

inline constexpr long kDyadicFracBits = 128;

Rational dyadic_round_up(const Rational& x, long frac_bits = kDyadicFracBits);
Rational dyadic_round_down(const Rational& x, long frac_bits = kDyadicFracBits);

// result^2 >= x resp. result^2 <= x, for x >= 0.
Rational sqrt_upper(const Rational& x);
Rational sqrt_lower(const Rational& x);

// Certified bounds on e^x for rational x (any sign).
Rational exp_upper(const Rational& x);
Rational exp_lower(const Rational& x);

// Certified upper bound on ln x for rational x >= 1.
Rational log_upper(const Rational& x);

// Certified upper bound on zeta(s), s >= 2: partial sum to k = 16 plus the
// midpoint-rule tail (33/2)^(1-s)/(s-1).  (The plain integral tail from 16
// is also sound but too coarse to give zeta(2) <= 1.6450.)
UpperReal zeta_upper(long s);

}  // namespace eqmf

#endif
