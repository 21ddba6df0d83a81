#include "eqmf/extremal.hpp"

#include <map>
#include <utility>

#include "eqmf/numtheory.hpp"

namespace eqmf {

namespace {

// ---------------------------------------------------------------------------
// Step polynomials of the depth-3 and depth-4 recursions, transcribed once.
// Any slip here destroys the vanishing order, which the extremality checks
// catch immediately.
// ---------------------------------------------------------------------------

Int eval_poly(const std::vector<long long>& descending, long w) {
  Int acc = 0;
  for (long long c : descending) {
    acc *= w;
    acc += static_cast<long>(c);
  }
  return acc;
}

const std::vector<long long> kP0 = {
    53567, 4499628, 173318340, 4055616864, 64374205218, 732790207224,
    6165100658404, 38914973459904, 185044363180416, 659055640624128,
    1729058937394176, 3237068849283072, 4084118362128384, 3105388005949440,
    1072718335180800};

const std::vector<long long> kP1 = {
    21257, 1465884, 45186990, 821051740, 9759703548, 79588527156,
    453687847200, 1804779218520, 4900200364800, 8628400143360,
    8845395333120, 3990767616000};

const std::vector<long long> kP2 = {
    2662740, 224120550, 8648003840, 202621853220, 3217542322665,
    36586266504480, 306658234963680, 1919356528986240, 8970889439482816,
    30866477857195008, 75319919247624192, 118664936756305920,
    83296021547483136, -82769401579438080, -258790551639293952,
    -245119018746249216, -86822757140004864};

const std::vector<long long> kP3 = {
    4272785, 351970350, 13234823080, 300533087760, 4592608729932,
    49787752253076, 392868254956864, 2274866661846720, 9597118952486912,
    28789901067644544, 58741997991303168, 79017091035181056,
    100071999240486912, 278562611915587584, 779359222970449920,
    1260737947219525632, 1054463073573666816, 355736061701259264};

const std::vector<long long> kP4 = {
    517135, 40772970, 1455719580, 31076826800, 441034824168, 4375275488634,
    31084796008256, 160090786631040, 608772267089664, 1834128793979392,
    5229385586024448, 15775977503047680, 40287913631023104,
    57115900062203904, -19258645489385472, -224285038806564864,
    -343616934723452928, -182090547421249536};

const std::vector<long long> kP5 = {
    531441, 36690686, 1133566168, 20680195920, 247548700336, 2043291298652,
    11897624359104, 49185666453888, 143692776009216, 293687697411072,
    418695721574400, 426532499288064, 316421756411904, 135523565862912};

// depth-3 long step
const std::vector<long long> kD3Long3 = {336, 2016, 2880};            // 48(7w^2+42w+60)
const std::vector<long long> kD3Long1 = {15, 96, 151, -30, -116};     // E4 d g coefficient
const std::vector<long long> kD3Long0 = {9, 45, 40, 24, 144};         // (w+1)(...)/6 E6 g

// depth-4 short steps
const std::vector<long long> kD4S6d3 = {17, 78, 90};
const std::vector<long long> kD4S6d1 = {191, 1008, 1504, 192, -576};
const std::vector<long long> kD4S6d0 = {81, 376, 560, 528, 576};
const std::vector<long long> kD4S8d4 = {1313, 28678, 255122, 1183008, 3016512, 4012416, 2177280};
const std::vector<long long> kD4S8d2 = {13423, 295800, 2645368, 12166080, 29311504,
                                        29020416, -15653376, -56692224, -33094656};
const std::vector<long long> kD4S8d1 = {6561, 136994, 1139536, 4759344, 10294016,
                                        11541472, 14671104, 41398272, 63016704, 31974912};
const std::vector<long long> kD4S8d0 = {2048, 38685, 287792, 1130616, 3110288,
                                        8497968, 18484992, 14141952, -20570112, -30855168};
const std::vector<long long> kD4S10d3 = {293, 4332, 22968, 51192, 40824};
const std::vector<long long> kD4S10d2 = {1, 15, 90, 270, 405, 243};
const std::vector<long long> kD4S10d1 = {3311, 51234, 291550, 731040, 717696, -2592, -256608};
const std::vector<long long> kD4S10d0 = {1313, 19430, 104354, 251616, 310464, 300672, 248832};

// ---------------------------------------------------------------------------
// The recursion is run over two interchangeable "algebras": honest q-series
// components (SeriesAlgebra) and Eisenstein-quotient monomial classes
// (QuotientAlgebra).  A quotient class is a linear combination of
// \bar E_u E2^l, keyed by (u, l) with u = 0 or even u >= 4; products of
// Eisenstein series collapse by \bar E_v E_w = \bar E_{v+w} and anything
// through Delta dies.
// ---------------------------------------------------------------------------

enum class Factor { E4, E6, E4Sq, E4E6, E4Cube, Delta };

long factor_weight(Factor f) {
  switch (f) {
    case Factor::E4: return 4;
    case Factor::E6: return 6;
    case Factor::E4Sq: return 8;
    case Factor::E4E6: return 10;
    case Factor::E4Cube: return 12;
    case Factor::Delta: return 12;
  }
  return 0;
}

struct SeriesAlgebra {
  long prec;
  int r;
  using Elem = QuasimodularForm;

  Elem base() const {
    QSeries zero(prec);
    QSeries one = constant_series(1, prec);
    QSeries e4 = eisenstein(4, prec).series;
    QSeries e6 = eisenstein(6, prec).series;
    switch (r) {
      case 1:  // g_6 = E2 E4 - E6
        return QuasimodularForm(6, {scale(e6, -1), e4});
      case 2:  // g_4 = E4 - E2^2
        return QuasimodularForm(4, {e4, zero, scale(one, -1)});
      case 3:  // g_6 = 5 E2^3 - 3 E2 E4 - 2 E6
        return QuasimodularForm(6, {scale(e6, -2), scale(e4, -3), zero, scale(one, 5)});
      default: {  // g_12, from the depth-4 base display
        QSeries e4sq = mul(e4, e4);
        QSeries h0 = sub(scale(mul(e4sq, e4), 13025), scale(mul(e6, e6), 12796));
        return QuasimodularForm(12, {std::move(h0), scale(mul(e4, e6), 3852),
                                     scale(e4sq, -2706), scale(e6, 27500), scale(e4, -28875)});
      }
    }
  }

  Elem dpow(const Elem& g, unsigned k) const { return serre_power(g, g.weight() - r, k); }

  Elem mulf(const Elem& g, Factor f) const {
    long p = g.prec();
    QSeries e4 = eisenstein(4, p).series;
    switch (f) {
      case Factor::E4: return mul_modular(g, {4, e4});
      case Factor::E6: return mul_modular(g, {6, eisenstein(6, p).series});
      case Factor::E4Sq: return mul_modular(g, {8, mul(e4, e4)});
      case Factor::E4E6: return mul_modular(g, {10, mul(e4, eisenstein(6, p).series)});
      case Factor::E4Cube: return mul_modular(g, {12, mul(mul(e4, e4), e4)});
      case Factor::Delta: return mul_modular(g, delta(p));
    }
    throw std::logic_error("mulf");
  }

  Elem axpy(const Rational& a, const Elem& x, const Elem& y) const { return add(scale(x, a), y); }
  Elem scaled(const Elem& x, const Rational& a) const { return scale(x, a); }
};

struct ClassVec {
  long weight = 0;
  std::map<std::pair<long, int>, Rational> m;
};

void class_add(ClassVec& acc, const std::pair<long, int>& key, const Rational& v) {
  if (v == 0) return;
  auto [it, fresh] = acc.m.try_emplace(key, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) acc.m.erase(it);
  }
}

struct QuotientAlgebra {
  int r;
  using Elem = ClassVec;

  Elem base() const {
    ClassVec v;
    switch (r) {
      case 1:
        v.weight = 6;
        v.m = {{{4, 1}, 1}, {{6, 0}, -1}};
        break;
      case 2:
        v.weight = 4;
        v.m = {{{4, 0}, 1}, {{0, 2}, -1}};
        break;
      case 3:
        v.weight = 6;
        v.m = {{{0, 3}, 5}, {{4, 1}, -3}, {{6, 0}, -2}};
        break;
      default:
        v.weight = 12;
        v.m = {{{12, 0}, 229}, {{10, 1}, 3852}, {{8, 2}, -2706}, {{6, 3}, 27500}, {{4, 4}, -28875}};
        break;
    }
    return v;
  }

  // d_{w-r} on classes: for u >= 4
  //   \bar E_u E2^l -> -(l/12) \bar E_{u+4} E2^{l-1} - (u/12) \bar E_{u+2} E2^l
  //                    - ((l-r)/12) \bar E_u E2^{l+1}
  // and for u = 0 the middle term is absent.
  Elem dstep(const Elem& g) const {
    ClassVec out;
    out.weight = g.weight + 2;
    for (const auto& [key, c] : g.m) {
      auto [u, l] = key;
      if (l >= 1) class_add(out, {u == 0 ? 4 : u + 4, l - 1}, c * rat(-l, 12));
      if (u >= 4) class_add(out, {u + 2, l}, c * rat(-u, 12));
      if (l != r) class_add(out, {u, l + 1}, c * rat(-(l - r), 12));
    }
    return out;
  }

  Elem dpow(const Elem& g, unsigned k) const {
    Elem out = g;
    for (unsigned i = 0; i < k; ++i) out = dstep(out);
    return out;
  }

  Elem mulf(const Elem& g, Factor f) const {
    ClassVec out;
    out.weight = g.weight + factor_weight(f);
    if (f == Factor::Delta) return out;
    long v = factor_weight(f);
    for (const auto& [key, c] : g.m) {
      auto [u, l] = key;
      class_add(out, {u == 0 ? v : u + v, l}, c);
    }
    return out;
  }

  Elem axpy(const Rational& a, const Elem& x, const Elem& y) const {
    ClassVec out = y;
    for (const auto& [key, c] : x.m) class_add(out, key, a * c);
    return out;
  }

  Elem scaled(const Elem& x, const Rational& a) const {
    ClassVec out;
    out.weight = x.weight;
    if (a == 0) return out;
    for (const auto& [key, c] : x.m) out.m.emplace(key, a * c);
    return out;
  }
};

// One recursion step at current weight w; s = 0 is the long step, otherwise
// the +s rule for the residue class.
template <class A>
typename A::Elem recursion_step(const A& alg, const typename A::Elem& g, long w, int r, int s) {
  auto P = [&](const std::vector<long long>& coeffs) { return Rational(eval_poly(coeffs, w)); };

  switch (r * 100 + s) {
    case 100: {  // g_{w+6} = E4 d g - ((w+1)/12) E6 g
      auto t = alg.mulf(alg.dpow(g, 1), Factor::E4);
      return alg.axpy(rat(-(w + 1), 12), alg.mulf(g, Factor::E6), t);
    }
    case 102:  // g_{w+2} = (12/(w-1)) d g
      return alg.scaled(alg.dpow(g, 1), rat(12, w - 1));
    case 104:  // g_{w+4} = E4 g
      return alg.mulf(g, Factor::E4);

    case 200: {  // g_{w+4} = w(w+1) E4 g - 36 d^2 g
      auto t = alg.scaled(alg.mulf(g, Factor::E4), Rational(w) * Rational(w + 1));
      return alg.axpy(-36, alg.dpow(g, 2), t);
    }
    case 202:  // g_{w+2} = (12/(w-2)) d g
      return alg.scaled(alg.dpow(g, 1), rat(12, w - 2));

    case 300: {
      auto t = alg.scaled(alg.dpow(g, 3), P(kD3Long3));
      t = alg.axpy(-P(kD3Long1), alg.mulf(alg.dpow(g, 1), Factor::E4), t);
      return alg.axpy(Rational(-(w + 1)) * P(kD3Long0) / 6, alg.mulf(g, Factor::E6), t);
    }
    case 302:
      return alg.dpow(g, 1);
    case 304: {  // (w+1)(3w+1) E4 g - 48 d^2 g
      auto t = alg.scaled(alg.mulf(g, Factor::E4), Rational(w + 1) * Rational(3 * w + 1));
      return alg.axpy(-48, alg.dpow(g, 2), t);
    }

    case 400: {
      Rational w4 = Rational(int_pow(Int(w + 4), 4));
      auto t = alg.scaled(alg.mulf(alg.dpow(g, 4), Factor::E4), -P(kP0));
      t = alg.axpy(w4 * P(kP1) / 12, alg.mulf(alg.dpow(g, 3), Factor::E6), t);
      t = alg.axpy(P(kP2) / 720, alg.mulf(alg.dpow(g, 2), Factor::E4Sq), t);
      t = alg.axpy(P(kP3) / 8640, alg.mulf(alg.dpow(g, 1), Factor::E4E6), t);
      t = alg.axpy(Rational(w + 1) * P(kP4) / 25920, alg.mulf(g, Factor::E4Cube), t);
      return alg.axpy(Rational(w + 1) * w4 * P(kP5) / 15, alg.mulf(g, Factor::Delta), t);
    }
    case 402:
      return alg.dpow(g, 1);
    case 404: {  // (w+1)(2w+1) E4 g - 18 d^2 g
      auto t = alg.scaled(alg.mulf(g, Factor::E4), Rational(w + 1) * Rational(2 * w + 1));
      return alg.axpy(-18, alg.dpow(g, 2), t);
    }
    case 406: {
      auto t = alg.scaled(alg.dpow(g, 3), P(kD4S6d3));
      t = alg.axpy(-P(kD4S6d1) / 144, alg.mulf(alg.dpow(g, 1), Factor::E4), t);
      return alg.axpy(Rational(-(w + 1)) * P(kD4S6d0) / 432, alg.mulf(g, Factor::E6), t);
    }
    case 408: {
      auto t = alg.scaled(alg.dpow(g, 4), -P(kD4S8d4));
      t = alg.axpy(P(kD4S8d2) / 144, alg.mulf(alg.dpow(g, 2), Factor::E4), t);
      t = alg.axpy(P(kD4S8d1) / 432, alg.mulf(alg.dpow(g, 1), Factor::E6), t);
      return alg.axpy(Rational(w + 1) * P(kD4S8d0) / 2592, alg.mulf(g, Factor::E4Sq), t);
    }
    case 410: {
      auto t = alg.mulf(alg.scaled(alg.dpow(g, 3), P(kD4S10d3)), Factor::E4);
      t = alg.axpy(Rational(-4) * P(kD4S10d2) / 3, alg.mulf(alg.dpow(g, 2), Factor::E6), t);
      t = alg.axpy(-P(kD4S10d1) / 144, alg.mulf(alg.dpow(g, 1), Factor::E4Sq), t);
      return alg.axpy(Rational(-(w + 1)) * P(kD4S10d0) / 432, alg.mulf(g, Factor::E4E6), t);
    }
    default:
      throw std::logic_error("recursion_step: bad (depth, residue)");
  }
}

long base_weight(int r) { return r == 2 ? 4 : (r == 4 ? 12 : 6); }
long period(int r) { return r == 2 ? 4 : (r == 4 ? 12 : 6); }

template <class A>
typename A::Elem build_extremal(const A& alg, long w, int r) {
  if (!extremal_supported(w, r)) throw std::domain_error("extremal: unsupported (weight, depth)");
  long b = base_weight(r);
  long T = period(r);
  int s = static_cast<int>((w - b) % T);
  long body = w - s;
  auto g = alg.base();
  for (long cur = b; cur < body; cur += T) g = recursion_step(alg, g, cur, r, 0);
  if (s != 0) g = recursion_step(alg, g, body, r, s);
  return g;
}

// Exact Gaussian elimination; returns the unique solution of a consistent
// system and throws if the system is inconsistent or underdetermined.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    Rational inv = Rational(1) / a[rank][col];
    for (std::size_t j = col; j < cols; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_of_col[col] = static_cast<long>(rank);
    ++rank;
  }
  for (std::size_t i = rank; i < rows; ++i)
    if (b[i] != 0) throw std::logic_error("solve_exact: inconsistent system");
  std::vector<Rational> x(cols);
  for (std::size_t col = 0; col < cols; ++col) {
    if (pivot_of_col[col] < 0) throw std::logic_error("solve_exact: underdetermined system");
    x[col] = b[static_cast<std::size_t>(pivot_of_col[col])];
  }
  return x;
}

// Class vector of f_w^(k): sum_l (-1)^l C(k,l) \bar E_{w-2l} E2^l with the
// w-2l = 2 term omitted and E_0 = 1.
ClassVec f_symbol_class(long w, int k) {
  ClassVec v;
  v.weight = w;
  for (int l = 0; l <= k; ++l) {
    long u = w - 2 * l;
    if (u == 2) continue;
    Rational c = Rational((l % 2 == 0) ? 1 : -1) *
                 Rational(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(l)));
    class_add(v, {u >= 4 ? u : 0, l}, c);
  }
  return v;
}

// Class vector of \bar D^l E_u (u >= 4, or u = 2 for the E2 line).
ClassVec d_eis_class(long u, int l) {
  ClassVec v;
  if (u == 2) {
    v.weight = 2;
    v.m = {{{0, 1}, 1}};
  } else {
    v.weight = u;
    v.m = {{{u, 0}, 1}};
  }
  // D on classes: \bar E_u E2^j -> -(u/12)(u+2,j) + ((u+j)/12)(u,j+1)
  //                                - (j/12)(u+4,j-1), middle weights shifted
  //                                for the u=0 line.
  for (int i = 0; i < l; ++i) {
    ClassVec out;
    out.weight = v.weight + 2;
    for (const auto& [key, c] : v.m) {
      auto [uu, j] = key;
      if (uu >= 4) class_add(out, {uu + 2, j}, c * rat(-uu, 12));
      class_add(out, {uu, j + 1}, c * rat(uu + j, 12));
      if (j >= 1) class_add(out, {uu == 0 ? 4 : uu + 4, j - 1}, c * rat(-j, 12));
    }
    v = std::move(out);
  }
  return v;
}

std::vector<Rational> solve_in_basis(const ClassVec& g, const std::vector<ClassVec>& basis) {
  std::map<std::pair<long, int>, std::size_t> row_of_key;
  auto touch = [&](const ClassVec& v) {
    for (const auto& [key, c] : v.m) row_of_key.try_emplace(key, row_of_key.size());
  };
  touch(g);
  for (const auto& v : basis) touch(v);
  std::vector<std::vector<Rational>> a(row_of_key.size(), std::vector<Rational>(basis.size()));
  std::vector<Rational> b(row_of_key.size());
  for (const auto& [key, row] : row_of_key) {
    auto git = g.m.find(key);
    if (git != g.m.end()) b[row] = git->second;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto it = basis[j].m.find(key);
      if (it != basis[j].m.end()) a[row][j] = it->second;
    }
  }
  return solve_exact(std::move(a), std::move(b));
}

}  // namespace

bool extremal_supported(long w, int r) {
  if (w % 2 != 0) return false;
  switch (r) {
    case 1: return w >= 6;
    case 2: return w >= 4;
    case 3: return w >= 6;
    case 4: return w >= 12;
    default: return false;
  }
}

QuasimodularForm extremal(long w, int r, long prec) {
  if (!extremal_supported(w, r)) throw std::domain_error("extremal: unsupported (weight, depth)");
  long dim = dim_quasimodular(w, r);
  if (prec < dim)
    throw std::invalid_argument("extremal: precision below dim QM, vanishing order unverifiable");
  SeriesAlgebra alg{prec, r};
  QuasimodularForm g = build_extremal(alg, w, r);
  auto ord = order_of_vanishing(g.q_expansion());
  if (!ord || *ord != dim - 1) throw std::logic_error("extremal: vanishing order check failed");
  return g;
}

QuasimodularForm normalise(const QuasimodularForm& g) {
  QSeries q = g.q_expansion();
  auto ord = order_of_vanishing(q);
  if (!ord) throw std::domain_error("normalise: form is zero to its precision");
  return scale(g, Rational(1) / q[*ord]);
}

std::vector<std::pair<int, Rational>> serre_on_f_symbol(long w, int r, int k) {
  if (k < 0 || k > r) throw std::domain_error("serre_on_f_symbol: k out of range");
  if (w < 2 * r + 2) throw std::domain_error("serre_on_f_symbol: requires w >= 2r + 2");
  return {{k, rat(-(w - r), 12)}, {k + 1, rat(-(r - k), 12)}};
}

EisensteinVector eisenstein_vector(long w, int r) {
  QuotientAlgebra alg{r};
  ClassVec g = build_extremal(alg, w, r);
  std::vector<ClassVec> basis;
  basis.reserve(static_cast<std::size_t>(r));
  for (int k = 1; k <= r; ++k) basis.push_back(f_symbol_class(w, k));
  return {w, r, solve_in_basis(g, basis)};
}

std::vector<Rational> derivative_eisenstein_multiples(long w, int r) {
  QuotientAlgebra alg{r};
  ClassVec g = build_extremal(alg, w, r);
  std::vector<ClassVec> basis;
  std::vector<int> order_of_col;
  for (int l = 0; l <= r; ++l) {
    long u = w - 2 * l;
    if (u == 0) continue;  // D^l annihilates constants; that multiple is 0
    basis.push_back(d_eis_class(u, l));
    order_of_col.push_back(l);
  }
  std::vector<Rational> x = solve_in_basis(g, basis);
  std::vector<Rational> c(static_cast<std::size_t>(r) + 1);
  for (std::size_t j = 0; j < x.size(); ++j) c[static_cast<std::size_t>(order_of_col[j])] = x[j];
  if (c[0] != 0) throw std::logic_error("derivative_eisenstein_multiples: nonzero E_w multiple");
  return c;
}

MainTermModel main_term_model(long w, int r) {
  std::vector<Rational> c = derivative_eisenstein_multiples(w, r);
  MainTermModel model{w, r, {}};
  for (int l = 1; l <= r; ++l) {
    if (c[static_cast<std::size_t>(l)] == 0) continue;
    long u = w - 2 * l;
    Rational pref = -c[static_cast<std::size_t>(l)] * Rational(2 * u) / bernoulli(static_cast<unsigned>(u));
    model.terms.emplace_back(l, pref);
  }
  return model;
}

Rational main_term(const MainTermModel& model, std::uint64_t n) {
  if (n == 0) throw std::domain_error("main_term: n must be >= 1");
  Rational acc = 0;
  for (const auto& [l, pref] : model.terms) {
    long u = model.weight - 2 * l;
    acc += pref * Rational(int_pow(Int(static_cast<unsigned long>(n)), static_cast<unsigned>(l)) *
                           sigma(static_cast<unsigned>(u - 1), n));
  }
  return acc;
}

Rational main_term(long w, int r, std::uint64_t n) { return main_term(main_term_model(w, r), n); }

}  // namespace eqmf
