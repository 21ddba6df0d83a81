#include "eqmf/modular.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "eqmf/numtheory.hpp"

namespace eqmf {

namespace {

std::mutex g_eis_mutex;
std::map<long, QSeries> g_eis_cache;  // longest expansion computed per weight

QSeries eisenstein_series_uncached(long w, long prec) {
  if (w == 0) return constant_series(1, prec);
  // 1 - (2w/B_w) sum sigma_{w-1}(n) q^n
  Rational factor = Rational(-2 * w) / bernoulli(static_cast<unsigned>(w));
  auto sig = sigma_table(static_cast<unsigned>(w - 1), static_cast<std::uint64_t>(prec - 1));
  QSeries r(prec);
  r[0] = 1;
  for (long n = 1; n < prec; ++n) r[n] = factor * Rational(sig[static_cast<std::size_t>(n)]);
  return r;
}

}  // namespace

ModularFormSeries eisenstein(long w, long prec) {
  if (w < 0 || w % 2 != 0) throw std::domain_error("eisenstein: weight must be even and >= 0");
  if (prec < 1) throw std::invalid_argument("eisenstein: precision must be >= 1");
  {
    std::lock_guard<std::mutex> lock(g_eis_mutex);
    auto it = g_eis_cache.find(w);
    if (it != g_eis_cache.end() && it->second.prec() >= prec)
      return {w, truncate(it->second, prec)};
  }
  QSeries s = eisenstein_series_uncached(w, prec);
  {
    std::lock_guard<std::mutex> lock(g_eis_mutex);
    auto it = g_eis_cache.find(w);
    if (it == g_eis_cache.end() || it->second.prec() < prec) g_eis_cache.insert_or_assign(w, s);
  }
  return {w, std::move(s)};
}

ModularFormSeries delta(long prec) {
  static std::mutex mutex;
  static QSeries cache(1);
  static bool have = false;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (have && cache.prec() >= prec) return {12, truncate(cache, prec)};
  }
  QSeries e4 = eisenstein(4, prec).series;
  QSeries e6 = eisenstein(6, prec).series;
  QSeries d = scale(sub(mul(mul(e4, e4), e4), mul(e6, e6)), rat(1, 1728));
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (!have || cache.prec() < prec) {
      cache = d;
      have = true;
    }
  }
  return {12, std::move(d)};
}

long QuasimodularForm::prec() const {
  long p = comp_[0].prec();
  for (const auto& c : comp_) p = std::min(p, c.prec());
  return p;
}

QSeries QuasimodularForm::q_expansion() const {
  long p = prec();
  QSeries total = truncate(comp_[0], p);
  if (depth() >= 1) {
    QSeries e2 = eisenstein(2, p).series;
    QSeries e2pow = e2;
    for (int l = 1; l <= depth(); ++l) {
      if (l > 1) e2pow = mul(e2pow, e2);
      total = add(total, mul(comp_[static_cast<std::size_t>(l)], e2pow));
    }
  }
  return total;
}

bool QuasimodularForm::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

QuasimodularForm add(const QuasimodularForm& f, const QuasimodularForm& g) {
  if (f.weight_ != g.weight_) throw std::invalid_argument("add: weight mismatch");
  long p = std::min(f.prec(), g.prec());
  std::size_t d = std::max(f.comp_.size(), g.comp_.size());
  std::vector<QSeries> comp;
  comp.reserve(d);
  for (std::size_t l = 0; l < d; ++l) {
    QSeries c(p);
    if (l < f.comp_.size()) c = add(c, f.comp_[l]);
    if (l < g.comp_.size()) c = add(c, g.comp_[l]);
    comp.push_back(std::move(c));
  }
  return QuasimodularForm(f.weight_, std::move(comp));
}

QuasimodularForm sub(const QuasimodularForm& f, const QuasimodularForm& g) {
  return add(f, scale(g, Rational(-1)));
}

QuasimodularForm scale(const QuasimodularForm& f, const Rational& c) {
  std::vector<QSeries> comp;
  comp.reserve(f.comp_.size());
  for (const auto& h : f.comp_) comp.push_back(scale(h, c));
  return QuasimodularForm(f.weight_, std::move(comp));
}

QuasimodularForm mul_modular(const QuasimodularForm& f, const ModularFormSeries& m) {
  std::vector<QSeries> comp;
  comp.reserve(f.comp_.size());
  for (const auto& h : f.comp_) comp.push_back(mul(h, m.series));
  return QuasimodularForm(f.weight_ + m.weight, std::move(comp));
}

namespace {

// Modular Serre derivative on a component: d_u h = Dh - (u/12) E2 h.
QSeries serre_component(const QSeries& h, long u, const QSeries& e2) {
  return sub(derive(h), scale(mul(e2, h), rat(u, 12)));
}

}  // namespace

ModularFormSeries serre(const ModularFormSeries& f, long s) {
  QSeries e2 = eisenstein(2, f.series.prec()).series;
  return {f.weight + 2, sub(derive(f.series), scale(mul(e2, f.series), rat(s, 12)))};
}

QuasimodularForm serre(const QuasimodularForm& f, long s) {
  long w = f.weight_;
  int r = f.depth();
  long p = f.prec();
  QSeries e2 = eisenstein(2, p).series;
  QSeries e4 = eisenstein(4, p).series;

  auto h = [&](int l) -> const QSeries& { return f.comp_[static_cast<std::size_t>(l)]; };

  std::vector<QSeries> comp;
  comp.reserve(static_cast<std::size_t>(r) + 2);
  for (int m = 0; m <= r + 1; ++m) {
    QSeries c(p);
    if (m <= r) c = add(c, serre_component(truncate(h(m), p), w - 2 * m, e2));
    if (m + 1 <= r) c = sub(c, scale(mul(e4, h(m + 1)), rat(m + 1, 12)));
    if (m >= 1) c = add(c, scale(truncate(h(m - 1), p), rat(w - s - m + 1, 12)));
    comp.push_back(std::move(c));
  }
  // For s = w - depth the top cancels exactly; otherwise depth grows by one.
  if (comp.back().is_zero()) comp.pop_back();
  return QuasimodularForm(w + 2, std::move(comp));
}

QuasimodularForm derive(const QuasimodularForm& f) {
  long w = f.weight_;
  int r = f.depth();
  long p = f.prec();
  QSeries e2 = eisenstein(2, p).series;
  QSeries e4 = eisenstein(4, p).series;

  auto h = [&](int l) -> const QSeries& { return f.comp_[static_cast<std::size_t>(l)]; };

  std::vector<QSeries> comp;
  comp.reserve(static_cast<std::size_t>(r) + 2);
  for (int m = 0; m <= r + 1; ++m) {
    QSeries c(p);
    if (m <= r) c = add(c, serre_component(truncate(h(m), p), w - 2 * m, e2));
    if (m + 1 <= r) c = sub(c, scale(mul(e4, h(m + 1)), rat(m + 1, 12)));
    if (m >= 1) c = add(c, scale(truncate(h(m - 1), p), rat(w - m + 1, 12)));
    comp.push_back(std::move(c));
  }
  if (comp.back().is_zero()) comp.pop_back();
  return QuasimodularForm(w + 2, std::move(comp));
}

ModularFormSeries serre_power(const ModularFormSeries& f, long s, unsigned k) {
  ModularFormSeries g = f;
  for (unsigned i = 0; i < k; ++i) g = serre(g, s + 2 * static_cast<long>(i));
  return g;
}

QuasimodularForm serre_power(const QuasimodularForm& f, long s, unsigned k) {
  QuasimodularForm g = f;
  for (unsigned i = 0; i < k; ++i) g = serre(g, s + 2 * static_cast<long>(i));
  return g;
}

long dim_modular(long w) {
  if (w < 0 || w % 2 != 0) return 0;
  if (w % 12 == 2) return w / 12;
  return w / 12 + 1;
}

long dim_cusp(long w) { return std::max(dim_modular(w) - 1, 0L); }

long dim_quasimodular(long w, int depth) {
  if (depth < 1 || depth > 4) throw std::domain_error("dim_quasimodular: depth must be 1..4");
  if (w < 0 || w % 2 != 0) return 0;
  switch (depth) {
    case 1:
      return w / 6 + 1;
    case 2:
      return w / 4 + 1;
    case 3:
      return w / 3 + 1;
    default:
      return 5 * w / 12 + (w % 12 == 10 ? 0 : 1);
  }
}

QuasimodularForm f_basis(long w, int k, long prec) {
  if (k < 0 || k > 4) throw std::domain_error("f_basis: k must be 0..4");
  if (w % 2 != 0 || w < 2 * k) throw std::domain_error("f_basis: requires even w >= 2k");
  std::vector<QSeries> comp;
  comp.reserve(static_cast<std::size_t>(k) + 1);
  for (int l = 0; l <= k; ++l) {
    long u = w - 2 * l;
    if (u == 2) {
      comp.emplace_back(prec);  // omitted term
      continue;
    }
    Rational c = Rational((l % 2 == 0) ? 1 : -1) * Rational(binomial(static_cast<unsigned long>(k),
                                                                     static_cast<unsigned long>(l)));
    comp.push_back(scale(eisenstein(u, prec).series, c));
  }
  return QuasimodularForm(w, std::move(comp));
}

QSeries d_eisenstein(long w, unsigned k, long prec) {
  if (k < 1) throw std::domain_error("d_eisenstein: k must be >= 1");
  if (w < 2 || w % 2 != 0) throw std::domain_error("d_eisenstein: weight must be even and >= 2");
  Rational factor = Rational(-2 * w) / bernoulli(static_cast<unsigned>(w));
  auto sig = sigma_table(static_cast<unsigned>(w - 1), static_cast<std::uint64_t>(prec - 1));
  QSeries r(prec);
  for (long n = 1; n < prec; ++n)
    r[n] = factor * Rational(int_pow(Int(n), k) * sig[static_cast<std::size_t>(n)]);
  return r;
}

}  // namespace eqmf
