#include "eqmf/certified.hpp"

#include <mutex>

namespace eqmf {

namespace {

Int shifted_div_ceil(const Rational& x, long bits) {
  Int n = x.get_num() << bits;
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Int shifted_div_floor(const Rational& x, long bits) {
  Int n = x.get_num() << bits;
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Rational from_mantissa(Int m, long bits) {
  Rational r(std::move(m), Int(1) << bits);
  r.canonicalize();
  return r;
}

// Taylor bounds for e^y on 0 <= y <= 1/2: the tail after J terms is at most
// twice the first omitted term (term ratio <= y/(J+2) <= 1/2).
constexpr unsigned kExpTerms = 40;

std::pair<Rational, Rational> exp_taylor_bounds(const Rational& y) {
  Rational sum = 1;
  Rational term = 1;
  for (unsigned j = 1; j <= kExpTerms; ++j) {
    term *= y / Rational(j);
    sum += term;
  }
  Rational next = term * y / Rational(kExpTerms + 1);
  return {sum, sum + 2 * next};
}

// atanh(t) for 0 <= t <= 1/3 with certified upper tail.
std::pair<Rational, Rational> atanh_bounds(const Rational& t) {
  Rational sum = 0;
  Rational tp = t;
  Rational t2 = t * t;
  constexpr unsigned J = 40;
  for (unsigned j = 0; j <= J; ++j) {
    sum += tp / Rational(2 * j + 1);
    tp *= t2;
  }
  // tail <= t^(2J+3) / ((2J+3)(1-t^2)) <= tp (tp is t^(2J+3) here)
  return {sum, sum + tp};
}

const Rational& ln2_upper() {
  static std::once_flag flag;
  static Rational value;
  std::call_once(flag, [] { value = 2 * atanh_bounds(rat(1, 3)).second; });
  return value;
}

}  // namespace

Rational dyadic_round_up(const Rational& x, long frac_bits) {
  return from_mantissa(shifted_div_ceil(x, frac_bits), frac_bits);
}

Rational dyadic_round_down(const Rational& x, long frac_bits) {
  return from_mantissa(shifted_div_floor(x, frac_bits), frac_bits);
}

Rational sqrt_lower(const Rational& x) {
  if (x < 0) throw std::domain_error("sqrt_lower: negative argument");
  Int m = shifted_div_floor(x, 2 * kDyadicFracBits);
  return from_mantissa(isqrt(m), kDyadicFracBits);
}

Rational sqrt_upper(const Rational& x) {
  if (x < 0) throw std::domain_error("sqrt_upper: negative argument");
  Int m = shifted_div_ceil(x, 2 * kDyadicFracBits);
  Int s = isqrt(m);
  if (s * s < m) s += 1;
  return from_mantissa(s, kDyadicFracBits);
}

Rational exp_upper(const Rational& x) {
  if (x == 0) return 1;
  if (x < 0) {
    Rational lo = exp_lower(-x);
    return dyadic_round_up(Rational(1) / lo);
  }
  unsigned k = 0;
  Rational y = x;
  while (y > rat(1, 2)) {
    y /= 2;
    ++k;
  }
  Rational u = dyadic_round_up(exp_taylor_bounds(y).second);
  for (unsigned i = 0; i < k; ++i) u = dyadic_round_up(u * u);
  return u;
}

Rational exp_lower(const Rational& x) {
  if (x == 0) return 1;
  if (x < 0) {
    Rational hi = exp_upper(-x);
    return dyadic_round_down(Rational(1) / hi);
  }
  unsigned k = 0;
  Rational y = x;
  while (y > rat(1, 2)) {
    y /= 2;
    ++k;
  }
  Rational d = dyadic_round_down(exp_taylor_bounds(y).first);
  for (unsigned i = 0; i < k; ++i) d = dyadic_round_down(d * d);
  return d;
}

Rational log_upper(const Rational& x) {
  if (x < 1) throw std::domain_error("log_upper: argument must be >= 1");
  if (x == 1) return 0;
  long e = 0;
  Rational m = x;
  while (m >= 2) {
    m /= 2;
    ++e;
  }
  Rational t = (m - 1) / (m + 1);
  Rational up = Rational(e) * ln2_upper() + 2 * atanh_bounds(t).second;
  return dyadic_round_up(up);
}

UpperReal zeta_upper(long s) {
  if (s < 2) throw std::domain_error("zeta_upper: s must be >= 2");
  Rational sum = 0;
  for (long k = 1; k <= 16; ++k)
    sum += Rational(1) / Rational(int_pow(Int(k), static_cast<unsigned long>(s)));
  // midpoint-rule tail: sum_{k>16} k^-s <= int_{16.5}^inf x^-s dx
  sum += rat_pow(rat(2, 33), static_cast<unsigned long>(s - 1)) / Rational(s - 1);
  return {sum};
}

}  // namespace eqmf
