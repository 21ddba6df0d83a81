#ifndef EQMF_POSITIVITY_HPP
#define EQMF_POSITIVITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqmf/certified.hpp"
#include "eqmf/decompose.hpp"

// Rigorous positivity verification for g_w^(r).  With the decomposition
// g = sum_l c_l D^l E_{w-2l} + sum_l D^l alpha_{w-2l}, the Fourier
// coefficient satisfies
//
//   a(n) >= sum_{P_l > 0} P_l n^{l+u-1}
//           - sum_{P_l < 0} |P_l| Z(u-1) n^{l+u-1}        (u = w - 2l >= 4)
//           - |P_l| 2 n^{l+1} sqrt(n)                     (u = 2 slot)
//           - 2 (sum_l C_l) n^{w/2},
//
// using n^{u-1} <= sigma_{u-1}(n) <= zeta(u-1) n^{u-1}, sigma_1(n) <= 2 n^{3/2},
// sigma_0(n) <= 2 sqrt(n), and the Jenkins-Rouse constants C_l for the cusp
// parts.  Dividing by n^{w-2} makes every subtracted term nonincreasing in n
// (w > 4), so the least n with a certified positive value - the threshold
// N_0 - is found by doubling and bisection, and the certificate at N_0 covers
// all n >= N_0 at once.  The finitely many coefficients below N_0 are then
// scanned exactly.

namespace eqmf {

struct PositivityReport {
  long weight = 0;
  int depth = 0;
  std::vector<UpperReal> constants;  // Jenkins-Rouse C_l, l = 0..depth
  std::uint64_t n0 = 0;
  bool n0_found = false;
  std::int64_t scanned_up_to = -1;
  std::vector<std::pair<std::int64_t, Rational>> violations;
  enum class Status { verified, violated, inconclusive } status = Status::inconclusive;
  std::int64_t wall_time_ms = 0;
};

std::string status_name(PositivityReport::Status s);

// C with |g(n)| <= C n^{(w-1)/2} sigma_0(n) for all n, from Theorem 1 of
// Jenkins-Rouse, evaluated with outward rounding.  The input must be a cusp
// form known to at least dim S_w coefficients; weight < 12 forces alpha = 0
// and C = 0.
UpperReal jenkins_rouse_constant(const ModularFormSeries& alpha);

// Certified lower bound on the n-th coefficient of g_w^(r) (the display
// above, assembled from a decomposition and its Jenkins-Rouse constants).
Rational lower_bound_coefficient(long w, int r, std::uint64_t n);

// The normalized certified bound psi(n) <= a(n)/n^(w-2); nondecreasing in n,
// so psi(N) > 0 certifies positivity of every coefficient from N on.
Rational normalized_bound(long w, int r, std::uint64_t n);

// Least N_0 such that the normalized certified bound is positive for all
// n >= N_0.  nullopt if no N_0 <= 2^63 exists.
std::optional<std::uint64_t> threshold_N0(long w, int r);

PositivityReport verify_positivity(long w, int r,
                                   std::optional<long> prec_cap = std::nullopt,
                                   const std::string& cache_dir = "");

// Canonical JSON rendering (stable field order; rationals as "p/q" strings,
// certified constants as upward-rounded decimal strings tagged "upper").
std::string report_to_json(const PositivityReport& rep);

// Decimal string for a certified bound, rounded in the certified direction.
std::string decimal_upper(const Rational& x, int significant_digits = 20);

}  // namespace eqmf

#endif
