#include "eqmf/decompose.hpp"

#include <optional>

#include "eqmf/numtheory.hpp"

namespace eqmf {

namespace {

// E2 as a depth-1 quasimodular form (components 0 + 1*E2).
QuasimodularForm e2_form(long prec) {
  return QuasimodularForm(2, {QSeries(prec), constant_series(1, prec)});
}

QuasimodularForm derive_k(QuasimodularForm g, unsigned k) {
  for (unsigned i = 0; i < k; ++i) g = derive(g);
  return g;
}

bool constant_only(const QSeries& s) {
  for (long n = 1; n < s.prec(); ++n)
    if (s[n] != 0) return false;
  return true;
}

}  // namespace

DerivativeBasisForm to_derivative_basis(const QuasimodularForm& g) {
  long w = g.weight();
  int r = g.depth();
  long p = g.prec();
  QSeries zero(p);

  QuasimodularForm rem = g;
  std::vector<std::optional<ModularFormSeries>> h(static_cast<std::size_t>(r) + 1);

  for (int m = r; m >= 1; --m) {
    long u = w - 2 * m;
    QSeries top = truncate(rem.component_series(m), p);
    if (h[static_cast<std::size_t>(m)].has_value()) {
      // E2 slot filled by the peel one level up; nothing may remain here.
      if (!top.is_zero())
        throw std::invalid_argument("to_derivative_basis: leftover weight-2 component");
      continue;
    }
    if (top.is_zero()) {
      h[static_cast<std::size_t>(m)] = ModularFormSeries{u, zero};
      continue;
    }
    if (u >= 4) {
      // top of D^m h_m is ((u)_m / 12^m) h_m E2^m
      Rational scale_back = Rational(int_pow(Int(12), static_cast<unsigned>(m))) /
                            Rational(pochhammer(u, static_cast<unsigned>(m)));
      ModularFormSeries hm{u, scale(top, scale_back)};
      h[static_cast<std::size_t>(m)] = hm;
      rem = sub(rem, derive_k(QuasimodularForm::from_modular(hm), static_cast<unsigned>(m)));
    } else if (u == 0) {
      // top of D^{m-1}(c E2) is c (m-1)!/12^{m-1} E2^m; weight-0 cusp-free
      // slots themselves are constants, which D^m kills.
      if (!constant_only(top))
        throw std::invalid_argument("to_derivative_basis: weight-0 component not constant");
      Rational c = top[0] * Rational(int_pow(Int(12), static_cast<unsigned>(m - 1))) /
                   Rational(factorial(static_cast<unsigned long>(m - 1)));
      h[static_cast<std::size_t>(m)] = ModularFormSeries{0, zero};
      h[static_cast<std::size_t>(m - 1)] =
          ModularFormSeries{2, scale(eisenstein(2, p).series, c)};
      rem = sub(rem, derive_k(scale(e2_form(p), c), static_cast<unsigned>(m - 1)));
    } else {
      throw std::invalid_argument(
          "to_derivative_basis: nonzero component of weight 2 or below weight 0");
    }
    if (!truncate(rem.component_series(m), p).is_zero())
      throw std::invalid_argument("to_derivative_basis: peel left a nonzero residual");
  }
  DerivativeBasisForm out;
  out.weight = w;
  out.h.reserve(static_cast<std::size_t>(r) + 1);
  out.h.push_back(ModularFormSeries{w, truncate(rem.component_series(0), p)});
  for (int m = 1; m <= r; ++m) out.h.push_back(*h[static_cast<std::size_t>(m)]);
  return out;
}

std::pair<Rational, ModularFormSeries> split_cusp(const ModularFormSeries& h) {
  if (h.series.is_zero()) return {Rational(0), h};
  if (h.weight == 2) throw std::domain_error("split_cusp: weight 2 unsupported");
  if (h.weight < 0 || h.weight % 2 != 0)
    throw std::domain_error("split_cusp: invalid weight");
  if (h.weight == 0) {
    if (!constant_only(h.series)) throw std::domain_error("split_cusp: weight-0 input not constant");
    return {h.series[0], ModularFormSeries{0, QSeries(h.series.prec())}};
  }
  Rational c = h.series[0];
  QSeries alpha = sub(h.series, scale(eisenstein(h.weight, h.series.prec()).series, c));
  return {c, ModularFormSeries{h.weight, std::move(alpha)}};
}

DerivativeDecomposition decompose(const QuasimodularForm& g) {
  DerivativeBasisForm basis = to_derivative_basis(g);
  long w = g.weight();
  int r = g.depth();
  DerivativeDecomposition d;
  d.weight = w;
  d.depth = r;
  for (int l = 0; l <= r; ++l) {
    const ModularFormSeries& hl = basis.h[static_cast<std::size_t>(l)];
    if (hl.weight == 2) {
      // h_l = c E2 from the peel; there is no cusp form at weight 2.
      Rational c = hl.series.is_zero() ? Rational(0) : hl.series[0];
      QSeries check = sub(hl.series, scale(eisenstein(2, hl.series.prec()).series, c));
      if (!check.is_zero())
        throw std::invalid_argument("decompose: weight-2 slot is not an E2 multiple");
      d.eis_mult.push_back(c);
      d.cusp.push_back(ModularFormSeries{2, QSeries(hl.series.prec())});
    } else {
      auto [c, alpha] = split_cusp(hl);
      d.eis_mult.push_back(c);
      d.cusp.push_back(std::move(alpha));
    }
  }
  return d;
}

DerivativeDecomposition decompose_extremal(long w, int r, long prec) {
  if (prec < dim_quasimodular(w, r) + r + 2)
    throw std::invalid_argument("decompose_extremal: precision too small");
  return decompose(extremal(w, r, prec));
}

QSeries recompose(const DerivativeDecomposition& d, long prec) {
  QSeries total(prec);
  for (int l = 0; l <= d.depth; ++l) {
    long u = d.weight - 2 * l;
    const Rational& c = d.eis_mult[static_cast<std::size_t>(l)];
    const ModularFormSeries& alpha = d.cusp[static_cast<std::size_t>(l)];
    long p = std::min(prec, alpha.series.prec());
    QSeries term = truncate(alpha.series, p);
    if (c != 0) {
      if (u == 0)
        term = add(term, constant_series(c, p));
      else
        term = add(term, scale(eisenstein(u, p).series, c));
    }
    for (int i = 0; i < l; ++i) term = derive(term);
    total = add(total, term);
  }
  return total;
}

}  // namespace eqmf
