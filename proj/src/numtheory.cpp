#include "eqmf/numtheory.hpp"

#include <mutex>

namespace eqmf {

Int sigma(unsigned alpha, std::uint64_t n) {
  if (n == 0) throw std::domain_error("sigma: n must be >= 1");
  Int total = 0;
  std::uint64_t d = 1;
  for (; d * d < n; ++d) {
    if (n % d == 0) {
      total += int_pow(Int(static_cast<unsigned long>(d)), alpha);
      total += int_pow(Int(static_cast<unsigned long>(n / d)), alpha);
    }
  }
  if (d * d == n) total += int_pow(Int(static_cast<unsigned long>(d)), alpha);
  return total;
}

std::vector<Int> sigma_table(unsigned alpha, std::uint64_t nmax) {
  std::vector<Int> tab(nmax + 1, Int(0));
  for (std::uint64_t d = 1; d <= nmax; ++d) {
    Int dp = int_pow(Int(static_cast<unsigned long>(d)), alpha);
    for (std::uint64_t m = d; m <= nmax; m += d) tab[m] += dp;
  }
  return tab;
}

namespace {

std::mutex g_bernoulli_mutex;
// Full table including odd indices; the recurrence needs B_1 = -1/2.
std::vector<Rational> g_bernoulli{Rational(1)};

void extend_bernoulli(unsigned k) {
  while (g_bernoulli.size() <= k) {
    unsigned m = static_cast<unsigned>(g_bernoulli.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc = 0;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * g_bernoulli[j];
    g_bernoulli.push_back(-acc / Rational(binomial(m + 1, m)));
  }
}

}  // namespace

Rational bernoulli(unsigned k) {
  if (k % 2 == 1) throw std::domain_error("bernoulli: odd index not supported");
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  extend_bernoulli(k);
  return g_bernoulli[k];
}

}  // namespace eqmf
