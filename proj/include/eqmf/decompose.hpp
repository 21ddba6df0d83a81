#ifndef EQMF_DECOMPOSE_HPP
#define EQMF_DECOMPOSE_HPP

#include <vector>

#include "eqmf/extremal.hpp"
#include "eqmf/modular.hpp"

// Conversion from E2-power components to the derivative basis
//
//     g = sum_{l=0}^{r} D^l ( c_l E_{w-2l} + alpha_{w-2l} ),
//
// with alpha_{w-2l} a cusp form.  The top component of D^k h for modular h of
// weight u is ((u)_k / 12^k) h E2^k, so components peel off from the top by
// exact division.  Weight-2 slots are covered by D^l E2, whose top component
// is (l! / 12^l) E2^{l+1}; weight-0 slots are constants and are annihilated
// by D, so their multiple is forced to zero.  A nonzero residual after all
// peels means the input was not quasimodular of the declared weight, and is
// reported as an error rather than absorbed.

namespace eqmf {

struct DerivativeDecomposition {
  long weight = 0;
  int depth = 0;
  // entries[l]: Eisenstein multiple c_l of E_{w-2l} (E2 when w-2l = 2) and
  // the cusp series alpha_l of weight w-2l (zero whenever dim S_{w-2l} = 0).
  std::vector<Rational> eis_mult;
  std::vector<ModularFormSeries> cusp;
};

// g as sum_l D^l h_l with h_l modular of weight w-2l.  Weight-2 slots carry
// the E2 multiple (h_l = c E2); they are the only non-modular slot and occur
// in the supported range just for g_4^(2) and g_6^(3).
struct DerivativeBasisForm {
  long weight = 0;
  std::vector<ModularFormSeries> h;  // h[l], weight w - 2l
};

DerivativeBasisForm to_derivative_basis(const QuasimodularForm& g);

// c = constant term, alpha = h - c E_w; weight >= 4 (or an all-zero series).
// Nonzero weight-2 input is rejected: there is no Eisenstein projection at
// weight 2 in this decomposition.
std::pair<Rational, ModularFormSeries> split_cusp(const ModularFormSeries& h);

DerivativeDecomposition decompose_extremal(long w, int r, long prec);
DerivativeDecomposition decompose(const QuasimodularForm& g);

// sum_l D^l (c_l E_{w-2l} + alpha_l) as a q-series.
QSeries recompose(const DerivativeDecomposition& d, long prec);

}  // namespace eqmf

#endif
