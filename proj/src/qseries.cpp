#include "eqmf/qseries.hpp"

#include <algorithm>

namespace eqmf {

QSeries make_series(const std::vector<Rational>& coeffs, long prec) {
  if (prec < 1) throw std::invalid_argument("make_series: precision must be >= 1");
  if (static_cast<long>(coeffs.size()) > prec)
    throw std::invalid_argument("make_series: more coefficients than precision");
  std::vector<Rational> c = coeffs;
  c.resize(static_cast<std::size_t>(prec));
  return QSeries(std::move(c), prec);
}

QSeries constant_series(const Rational& value, long prec) {
  QSeries r(prec);
  r[0] = value;
  return r;
}

QSeries add(const QSeries& f, const QSeries& g) {
  long p = std::min(f.prec(), g.prec());
  QSeries r(p);
  for (long n = 0; n < p; ++n) r[n] = f[n] + g[n];
  return r;
}

QSeries sub(const QSeries& f, const QSeries& g) {
  long p = std::min(f.prec(), g.prec());
  QSeries r(p);
  for (long n = 0; n < p; ++n) r[n] = f[n] - g[n];
  return r;
}

QSeries scale(const QSeries& f, const Rational& c) {
  QSeries r(f.prec());
  for (long n = 0; n < f.prec(); ++n) r[n] = f[n] * c;
  return r;
}

namespace {

// Clears denominators: returns the integer array num[i] = f[i] * den and the
// common denominator den = lcm of all coefficient denominators.
std::pair<std::vector<Int>, Int> cleared(const QSeries& f) {
  Int den = 1;
  for (long n = 0; n < f.prec(); ++n) {
    const Int& d = f[n].get_den();
    if (d != 1) {
      Int g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
      den = den / g * d;
    }
  }
  std::vector<Int> num(static_cast<std::size_t>(f.prec()));
  for (long n = 0; n < f.prec(); ++n) num[static_cast<std::size_t>(n)] = f[n].get_num() * (den / f[n].get_den());
  return {std::move(num), std::move(den)};
}

}  // namespace

QSeries mul(const QSeries& f, const QSeries& g) {
  long p = std::min(f.prec(), g.prec());
  auto [fa, fd] = cleared(f);
  auto [ga, gd] = cleared(g);
  std::vector<Int> acc(static_cast<std::size_t>(p), Int(0));
  for (long i = 0; i < p; ++i) {
    if (fa[static_cast<std::size_t>(i)] == 0) continue;
    const mpz_srcptr fi = fa[static_cast<std::size_t>(i)].get_mpz_t();
    for (long j = 0; i + j < p; ++j) {
      if (ga[static_cast<std::size_t>(j)] == 0) continue;
      mpz_addmul(acc[static_cast<std::size_t>(i + j)].get_mpz_t(), fi,
                 ga[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  Int den = fd * gd;
  QSeries r(p);
  if (den == 1) {
    for (long n = 0; n < p; ++n) r[n] = Rational(acc[static_cast<std::size_t>(n)]);
  } else {
    for (long n = 0; n < p; ++n) r[n] = rat(acc[static_cast<std::size_t>(n)], den);
  }
  return r;
}

QSeries pow(const QSeries& f, unsigned k) {
  QSeries result = constant_series(1, f.prec());
  QSeries base = f;
  while (k) {
    if (k & 1) result = mul(result, base);
    if (k >>= 1) base = mul(base, base);
  }
  return result;
}

QSeries derive(const QSeries& f) {
  QSeries r(f.prec());
  for (long n = 1; n < f.prec(); ++n) r[n] = f[n] * Rational(n);
  return r;
}

std::optional<long> order_of_vanishing(const QSeries& f) {
  for (long n = 0; n < f.prec(); ++n)
    if (f[n] != 0) return n;
  return std::nullopt;
}

QSeries truncate(const QSeries& f, long prec) {
  if (prec < 1) throw std::invalid_argument("truncate: precision must be >= 1");
  if (prec > f.prec()) throw std::invalid_argument("truncate: cannot extend precision");
  QSeries r(prec);
  for (long n = 0; n < prec; ++n) r[n] = f[n];
  return r;
}

bool operator==(const QSeries& f, const QSeries& g) {
  if (f.prec() != g.prec()) return false;
  for (long n = 0; n < f.prec(); ++n)
    if (f[n] != g[n]) return false;
  return true;
}

}  // namespace eqmf
