#ifndef EQMF_QSERIES_HPP
#define EQMF_QSERIES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "eqmf/rational.hpp"

// Truncated formal power series in q with exact rational coefficients.
// A QSeries knows its own precision: coefficients of q^0 .. q^(prec-1) are
// stored, everything beyond is unknown.  Binary operations truncate to the
// smaller precision of the two operands instead of erroring; the weight
// recursions naturally mix precisions and this keeps callers free of
// bookkeeping.

namespace eqmf {

class QSeries {
 public:
  QSeries() = default;

  // Zero series of the given precision.
  explicit QSeries(long prec) : c_(check_prec(prec)) {}

  QSeries(std::vector<Rational> coeffs, long prec) : c_(std::move(coeffs)) {
    check_prec(prec);
    if (static_cast<long>(c_.size()) > prec)
      throw std::invalid_argument("QSeries: more coefficients than precision");
    c_.resize(static_cast<std::size_t>(prec));
  }

  long prec() const { return static_cast<long>(c_.size()); }

  const Rational& operator[](long n) const { return c_.at(static_cast<std::size_t>(n)); }
  Rational& operator[](long n) { return c_.at(static_cast<std::size_t>(n)); }

  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

 private:
  static long check_prec(long prec) {
    if (prec < 1) throw std::invalid_argument("QSeries: precision must be >= 1");
    return prec;
  }

  std::vector<Rational> c_;
};

QSeries make_series(const std::vector<Rational>& coeffs, long prec);
QSeries constant_series(const Rational& value, long prec);

QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);
QSeries scale(const QSeries& f, const Rational& c);

// Truncated Cauchy product.  Denominators are cleared once per operand, the
// integer arrays convolved, and the common denominator restored at the end;
// this avoids a gcd per partial product.
QSeries mul(const QSeries& f, const QSeries& g);

QSeries pow(const QSeries& f, unsigned k);

// D = q d/dq: coefficient of q^n becomes n * a(n).
QSeries derive(const QSeries& f);

// Smallest n with a(n) != 0, or nullopt when the series is zero to its
// precision.
std::optional<long> order_of_vanishing(const QSeries& f);

QSeries truncate(const QSeries& f, long prec);

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return sub(f, g); }
inline QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }
inline QSeries operator*(const Rational& c, const QSeries& f) { return scale(f, c); }

bool operator==(const QSeries& f, const QSeries& g);

}  // namespace eqmf

#endif
