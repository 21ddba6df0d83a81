#ifndef EQMF_EXTREMAL_HPP
#define EQMF_EXTREMAL_HPP

#include <utility>
#include <vector>

#include "eqmf/modular.hpp"

// Extremal quasimodular forms g_w^(r), r = 1..4, built from the weight
// recursions:
//
//   r=1 (period 6, base g_6  = E2 E4 - E6):
//       g_{w+6} = E4 d g - ((w+1)/12) E6 g,   g_{w+2} = (12/(w-1)) d g,
//       g_{w+4} = E4 g
//   r=2 (period 4, base g_4  = E4 - E2^2):
//       g_{w+4} = w(w+1) E4 g - 36 d^2 g,     g_{w+2} = (12/(w-2)) d g
//   r=3 (period 6, base g_6  = 5 E2^3 - 3 E2 E4 - 2 E6)
//   r=4 (period 12, base g_12 = 13025 E4^3 - 12796 E6^2 + 3852 E2 E4 E6
//                              - 2706 E2^2 E4^2 + 27500 E2^3 E6
//                              - 28875 E2^4 E4)
//
// where d is the Serre derivative at parameter (weight - depth).  The r=3,4
// step rules carry large polynomial coefficients in w; they are transcribed
// once below and guarded by the vanishing-order checks (any slip destroys
// extremality immediately).  The forms come out un-normalised, with positive
// first nonzero Fourier coefficient; normalise() rescales that to 1.

namespace eqmf {

// Exact coefficients of the class of g_w^(r) in the Eisenstein quotient
// space, expressed in the basis \bar f_w^(1..r).
struct EisensteinVector {
  long weight = 0;
  int depth = 0;
  std::vector<Rational> coeffs;  // coeffs[k-1] multiplies \bar f_w^(k)
};

// The exact Eisenstein contribution to the Fourier coefficients:
//   a(n) = sum_l prefactor[l] n^l sigma_{w-2l-1}(n) + (cusp remainder).
struct MainTermModel {
  long weight = 0;
  int depth = 0;
  // (l, P_l) with P_l = -c_l 2(w-2l)/B_{w-2l}; orders with zero multiple are
  // omitted.
  std::vector<std::pair<int, Rational>> terms;
};

bool extremal_supported(long w, int r);

// The (w, r) grid each depth's recursion reaches: r=1: w>=6, r=2: w>=4,
// r=3: w>=6, r=4: w>=12 (even w throughout).  prec must be at least
// dim_quasimodular(w, r); the computed expansion is checked to vanish to
// exactly that dimension minus one.
QuasimodularForm extremal(long w, int r, long prec);

// Divides by the first nonzero Fourier coefficient.
QuasimodularForm normalise(const QuasimodularForm& g);

// Coefficients of \bar f_{w+2}^(k) and \bar f_{w+2}^(k+1) in
// d_{w-r} \bar f_w^(k): the pair {(k, -(w-r)/12), (k+1, -(r-k)/12)}.
// Valid for 0 <= k <= r and w >= 2r + 2.
std::vector<std::pair<int, Rational>> serre_on_f_symbol(long w, int r, int k);

// Propagates the depth-r ansatz through the recursion entirely inside the
// Eisenstein quotient space (monomial classes \bar E_u E2^l), then solves for
// the f-basis coordinates.  Exact, independent of any series expansion.
EisensteinVector eisenstein_vector(long w, int r);

// Same propagation, solved in the derivative basis: multiples c_l of
// \bar D^l E_{w-2l} for l = 1..r (c_l indexed at [l]; [0] kept and zero).
std::vector<Rational> derivative_eisenstein_multiples(long w, int r);

MainTermModel main_term_model(long w, int r);

// sum_l P_l n^l sigma_{w-2l-1}(n); equals the full n-th coefficient whenever
// every cusp component of the decomposition vanishes.
Rational main_term(long w, int r, std::uint64_t n);
Rational main_term(const MainTermModel& model, std::uint64_t n);

}  // namespace eqmf

#endif
