#ifndef EQMF_MODULAR_HPP
#define EQMF_MODULAR_HPP

#include <vector>

#include "eqmf/qseries.hpp"

// Classical level-one forms and the quasimodular machinery built on them.
//
// A quasimodular form of weight w and depth r is stored by powers of E2:
//
//     f = sum_{l=0}^{r} h_l E2^l,   h_l a modular q-series of weight w - 2l.
//
// The Serre derivative  d_s f = Df - (s/12) E2 f  acts on that representation
// without ever leaving it: writing D h = d_u h + (u/12) E2 h per component
// (u the component weight) gives
//
//     (d_s f)_m = d_{w-2m} h_m - ((m+1)/12) E4 h_{m+1}
//                 + ((w - s - m + 1)/12) h_{m-1},
//
// and for s = w - r the candidate E2^{r+1} component cancels exactly, which
// is how the depth stays bounded along the weight recursions.

namespace eqmf {

struct ModularFormSeries {
  long weight = 0;
  QSeries series;
};

class QuasimodularForm {
 public:
  QuasimodularForm() = default;
  QuasimodularForm(long weight, std::vector<QSeries> components)
      : weight_(weight), comp_(std::move(components)) {
    if (comp_.empty()) throw std::invalid_argument("QuasimodularForm: no components");
  }

  long weight() const { return weight_; }
  int depth() const { return static_cast<int>(comp_.size()) - 1; }
  long prec() const;

  const QSeries& component_series(int l) const { return comp_.at(static_cast<std::size_t>(l)); }
  ModularFormSeries component(int l) const {
    return ModularFormSeries{weight_ - 2 * l, comp_.at(static_cast<std::size_t>(l))};
  }

  // sum_l h_l E2^l as a plain q-series.
  QSeries q_expansion() const;

  bool is_zero() const;

  static QuasimodularForm from_modular(const ModularFormSeries& f) {
    return QuasimodularForm(f.weight, {f.series});
  }

  friend QuasimodularForm add(const QuasimodularForm& f, const QuasimodularForm& g);
  friend QuasimodularForm sub(const QuasimodularForm& f, const QuasimodularForm& g);
  friend QuasimodularForm scale(const QuasimodularForm& f, const Rational& c);
  friend QuasimodularForm mul_modular(const QuasimodularForm& f, const ModularFormSeries& m);
  friend QuasimodularForm derive(const QuasimodularForm& f);
  friend QuasimodularForm serre(const QuasimodularForm& f, long s);

 private:
  long weight_ = 0;
  std::vector<QSeries> comp_;
};

// Eisenstein series E_w = 1 - (2w/B_w) sum_{n>=1} sigma_{w-1}(n) q^n for even
// w >= 2; E_0 = 1 by convention.  Expansions are memoized by weight.
ModularFormSeries eisenstein(long w, long prec);

// Delta = (E4^3 - E6^2)/1728, weight 12.
ModularFormSeries delta(long prec);

// Serre derivative with explicit weight parameter: Df - (s/12) E2 f.
ModularFormSeries serre(const ModularFormSeries& f, long s);
QuasimodularForm serre(const QuasimodularForm& f, long s);

// Iterated Serre derivative: the parameter advances by 2 per application.
ModularFormSeries serre_power(const ModularFormSeries& f, long s, unsigned k);
QuasimodularForm serre_power(const QuasimodularForm& f, long s, unsigned k);

// Dimension formulas for level one.
long dim_modular(long w);
long dim_cusp(long w);
long dim_quasimodular(long w, int depth);

// f_w^(k) = sum_{l=0}^{k} (-1)^l C(k,l) E_{w-2l} E2^l with E_0 = 1 and the
// term with w - 2l = 2 omitted.  Requires even w >= 2k.
QuasimodularForm f_basis(long w, int k, long prec);

// q-series of D^k E_w = -(2w/B_w) sum n^k sigma_{w-1}(n) q^n, k >= 1.
QSeries d_eisenstein(long w, unsigned k, long prec);

}  // namespace eqmf

#endif
