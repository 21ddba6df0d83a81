#ifndef EQMF_RATIONAL_HPP
#define EQMF_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

// Exact arithmetic types used throughout.  Int is an arbitrary-precision
// signed integer, Rational an arbitrary-precision fraction kept in lowest
// terms with positive denominator (mpq_class maintains both invariants as
// long as values are only produced through the helpers below).

namespace eqmf {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p" or "p/q" (the exact serialization used in CSV and JSON output).
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
  q.canonicalize();
  return q;
}

// Serializes as "p" for integers, "p/q" otherwise; no decimal point ever.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_pow(long base, unsigned long e) { return int_pow(Int(base), e); }

inline Rational rat_pow(const Rational& base, unsigned long e) {
  Rational r = 1;
  Rational b = base;
  unsigned long k = e;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Pochhammer symbol (w)_k = w (w+1) ... (w+k-1); (w)_0 = 1.
inline Int pochhammer(long w, unsigned k) {
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= Int(w + static_cast<long>(i));
  return r;
}

inline int sign(const Rational& q) { return sgn(q); }

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace eqmf

#endif
