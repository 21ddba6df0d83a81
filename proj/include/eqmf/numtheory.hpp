#ifndef EQMF_NUMTHEORY_HPP
#define EQMF_NUMTHEORY_HPP

#include <cstdint>
#include <vector>

#include "eqmf/rational.hpp"

namespace eqmf {

// Divisor sum sigma_alpha(n) = sum of d^alpha over divisors d of n.  n >= 1.
Int sigma(unsigned alpha, std::uint64_t n);

// sigma_alpha(n) for all n = 1..nmax in one sieve pass; index 0 is unused (0).
std::vector<Int> sigma_table(unsigned alpha, std::uint64_t nmax);

// Bernoulli number B_k for even k >= 0 (B_0 = 1, B_2 = 1/6, ...), computed by
// the recurrence sum_{j<=m} C(m+1,j) B_j = 0 and memoized.  Odd k is rejected.
Rational bernoulli(unsigned k);

}  // namespace eqmf

#endif
