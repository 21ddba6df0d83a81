#include "eqmf/positivity.hpp"

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "eqmf/numtheory.hpp"

namespace eqmf {

namespace {

// ---------------------------------------------------------------------------
// Disk cache of q-expansions (CSV "n,coefficient"), written atomically.
// ---------------------------------------------------------------------------

std::filesystem::path cache_file(const std::string& dir, long w, int r, long prec) {
  return std::filesystem::path(dir) /
         ("extremal_w" + std::to_string(w) + "_r" + std::to_string(r) + "_p" + std::to_string(prec) +
          ".csv");
}

std::optional<QSeries> cache_load(const std::string& dir, long w, int r, long prec) {
  std::ifstream in(cache_file(dir, w, r, prec));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "n,coefficient") return std::nullopt;
  std::vector<Rational> coeffs;
  coeffs.reserve(static_cast<std::size_t>(prec));
  while (std::getline(in, line)) {
    auto comma = line.find(',');
    if (comma == std::string::npos) return std::nullopt;
    coeffs.push_back(parse_rational(line.substr(comma + 1)));
  }
  if (static_cast<long>(coeffs.size()) != prec) return std::nullopt;
  return make_series(coeffs, prec);
}

void cache_store(const std::string& dir, long w, int r, long prec, const QSeries& q) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto final_path = cache_file(dir, w, r, prec);
  auto tmp_path = final_path;
  tmp_path += "." + std::to_string(::getpid()) + ".tmp";
  {
    std::ofstream out(tmp_path);
    if (!out) return;
    out << "n,coefficient\n";
    for (long n = 0; n < prec; ++n) out << n << "," << to_string(q[n]) << "\n";
  }
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

QSeries extremal_expansion(long w, int r, long prec, const std::string& cache_dir) {
  if (!cache_dir.empty()) {
    if (auto hit = cache_load(cache_dir, w, r, prec)) return *hit;
  }
  QSeries q = extremal(w, r, prec).q_expansion();
  if (!cache_dir.empty()) cache_store(cache_dir, w, r, prec, q);
  return q;
}

// ---------------------------------------------------------------------------
// The certified bound.  BoundData holds the main-term prefactors P_l and the
// subtracted normalized terms mag * n^{-e2/2} (e2 in half-unit steps).
// ---------------------------------------------------------------------------

struct NormTerm {
  Rational mag;  // nonnegative
  long e2;       // subtract mag * n^(-e2/2); e2 >= 1
};

struct BoundData {
  long w = 0;
  int r = 0;
  std::vector<Rational> prefactor;  // P_l, l = 0..r (P_0 = 0)
  Rational lead;                    // P_1 > 0
  std::vector<NormTerm> subtracted;
  std::vector<UpperReal> constants;  // per-level Jenkins-Rouse C_l
  Rational c_total;
};

BoundData make_bound_data(long w, int r, const DerivativeDecomposition& d) {
  BoundData bd;
  bd.w = w;
  bd.r = r;
  bd.prefactor.assign(static_cast<std::size_t>(r) + 1, Rational(0));
  for (int l = 1; l <= r; ++l) {
    long u = w - 2 * l;
    const Rational& c = d.eis_mult[static_cast<std::size_t>(l)];
    if (u <= 0 || c == 0) continue;
    bd.prefactor[static_cast<std::size_t>(l)] =
        -c * Rational(2 * u) / bernoulli(static_cast<unsigned>(u));
  }
  bd.lead = bd.prefactor[1];
  if (bd.lead <= 0) throw std::logic_error("bound: leading main-term prefactor not positive");

  // Every l >= 2 term is charged to the negative side via
  // sigma_{u-1}(n) <= zeta(u-1) n^{u-1} (u >= 4), or sigma_1(n) <= 2 n^{3/2}
  // for the weight-2 slot.  Normalized by n^{w-2}.
  for (int l = 2; l <= r; ++l) {
    const Rational& P = bd.prefactor[static_cast<std::size_t>(l)];
    if (P == 0) continue;
    long u = w - 2 * l;
    if (u >= 4) {
      bd.subtracted.push_back({abs(P) * zeta_upper(u - 1).value, 2L * (l - 1)});
    } else {  // u == 2
      bd.subtracted.push_back({abs(P) * 2, w - 5});
    }
  }

  bd.c_total = 0;
  for (int l = 0; l <= r; ++l) {
    bd.constants.push_back(jenkins_rouse_constant(d.cusp[static_cast<std::size_t>(l)]));
    bd.c_total += bd.constants.back().value;
  }
  if (bd.c_total > 0) bd.subtracted.push_back({2 * bd.c_total, w - 4});
  return bd;
}

// Certified lower bound on n^{e2/2} (monotone nondecreasing in n).
Rational half_power_lower(std::uint64_t n, long e2) {
  Int whole = int_pow(Int(static_cast<unsigned long>(n)), static_cast<unsigned long>(e2 / 2));
  if (e2 % 2 == 0) return Rational(whole);
  return Rational(whole) * sqrt_lower(Rational(static_cast<unsigned long>(n)));
}

// Normalized certified bound psi(n) <= a(n)/n^{w-2}; nondecreasing in n.
Rational psi(const BoundData& bd, std::uint64_t n) {
  Rational acc = bd.lead;
  for (const auto& t : bd.subtracted) acc -= t.mag / half_power_lower(n, t.e2);
  return acc;
}

std::optional<std::uint64_t> search_threshold(const BoundData& bd) {
  if (psi(bd, 1) > 0) return 1;
  std::uint64_t hi = 2;
  constexpr std::uint64_t kLimit = 1ULL << 63;
  while (psi(bd, hi) <= 0) {
    if (hi >= kLimit) return std::nullopt;
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // psi(lo) <= 0 < psi(hi)
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (psi(bd, mid) > 0 ? hi : lo) = mid;
  }
  return hi;
}

BoundData bound_data_for(long w, int r) {
  long prec = dim_quasimodular(w, r) + r + 8;
  DerivativeDecomposition d = decompose_extremal(w, r, prec);
  return make_bound_data(w, r, d);
}

}  // namespace

std::string status_name(PositivityReport::Status s) {
  switch (s) {
    case PositivityReport::Status::verified: return "verified";
    case PositivityReport::Status::violated: return "violated";
    default: return "inconclusive";
  }
}

UpperReal jenkins_rouse_constant(const ModularFormSeries& alpha) {
  long w = alpha.weight;
  long ell = dim_cusp(w);
  if (alpha.series.prec() <= ell)
    throw std::invalid_argument("jenkins_rouse_constant: need at least dim S_w coefficients");
  if (alpha.series.is_zero()) return {Rational(0)};
  if (alpha.series[0] != 0)
    throw std::domain_error("jenkins_rouse_constant: nonzero constant term, not a cusp form");
  if (w % 2 != 0 || ell == 0)
    throw std::domain_error("jenkins_rouse_constant: nonzero form in a trivial cusp space");

  Rational sq_sum = 0;
  Rational exp_sum = 0;
  for (long m = 1; m <= ell; ++m) {
    const Rational& gm = alpha.series[m];
    sq_sum += gm * gm / Rational(int_pow(Int(m), static_cast<unsigned long>(w - 1)));
    exp_sum += abs(gm) * exp_upper(rat(-911 * m, 125));  // e^(-7.288 m)
  }
  Rational term1 = 11 * sqrt_upper(sq_sum);
  // e^18.72 (41.41)^{w/2} / w^{(w-1)/2}, numerator up / denominator down
  Rational numer = exp_upper(rat(468, 25)) * rat_pow(rat(4141, 100), static_cast<unsigned long>(w / 2));
  Rational denom = Rational(int_pow(Int(w), static_cast<unsigned long>((w - 2) / 2))) *
                   sqrt_lower(Rational(w));
  Rational c = sqrt_upper(log_upper(Rational(w))) * (term1 + numer / denom * exp_sum);
  return {dyadic_round_up(c)};
}

Rational lower_bound_coefficient(long w, int r, std::uint64_t n) {
  if (n == 0) throw std::domain_error("lower_bound_coefficient: n must be >= 1");
  BoundData bd = bound_data_for(w, r);
  Rational acc = 0;
  for (int l = 1; l <= r; ++l) {
    const Rational& P = bd.prefactor[static_cast<std::size_t>(l)];
    if (P == 0) continue;
    long u = w - 2 * l;
    Int npow = int_pow(Int(static_cast<unsigned long>(n)), static_cast<unsigned long>(l + u - 1));
    if (P > 0) {
      acc += P * Rational(npow);  // sigma_{u-1}(n) >= n^{u-1}
    } else if (u >= 4) {
      acc += P * zeta_upper(u - 1).value * Rational(npow);
    } else {  // u == 2: sigma_1(n) <= 2 n^{3/2}
      acc += P * 2 * Rational(int_pow(Int(static_cast<unsigned long>(n)),
                                      static_cast<unsigned long>(l + 1))) *
             sqrt_upper(Rational(static_cast<unsigned long>(n)));
    }
  }
  acc -= 2 * bd.c_total *
         Rational(int_pow(Int(static_cast<unsigned long>(n)), static_cast<unsigned long>(w / 2)));
  return acc;
}

Rational normalized_bound(long w, int r, std::uint64_t n) {
  if (n == 0) throw std::domain_error("normalized_bound: n must be >= 1");
  return psi(bound_data_for(w, r), n);
}

std::optional<std::uint64_t> threshold_N0(long w, int r) {
  return search_threshold(bound_data_for(w, r));
}

PositivityReport verify_positivity(long w, int r, std::optional<long> prec_cap,
                                   const std::string& cache_dir) {
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](PositivityReport rep) {
    rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
  };

  if (!extremal_supported(w, r)) throw std::domain_error("verify_positivity: unsupported (w, r)");
  PositivityReport rep;
  rep.weight = w;
  rep.depth = r;

  long dim = dim_quasimodular(w, r);
  long base_prec = dim + r + 8;
  if (prec_cap && *prec_cap < base_prec) {
    rep.status = PositivityReport::Status::inconclusive;
    return finish(rep);
  }

  QuasimodularForm g = extremal(w, r, base_prec);
  QSeries q = g.q_expansion();
  long v = dim - 1;  // exact order of vanishing, checked by extremal()
  if (q[v] <= 0) throw std::logic_error("verify_positivity: first nonzero coefficient not positive");

  DerivativeDecomposition d = decompose(g);
  // Two-pipeline consistency: the series-extracted Eisenstein multiples must
  // match the quotient recursion exactly.
  std::vector<Rational> c_quot = derivative_eisenstein_multiples(w, r);
  for (int l = 0; l <= r; ++l)
    if (d.eis_mult[static_cast<std::size_t>(l)] != c_quot[static_cast<std::size_t>(l)])
      throw std::logic_error("verify_positivity: decomposition disagrees with quotient recursion");

  BoundData bd = make_bound_data(w, r, d);
  rep.constants = bd.constants;

  auto n0 = search_threshold(bd);
  if (!n0) {
    rep.status = PositivityReport::Status::inconclusive;
    rep.scanned_up_to = -1;
    return finish(rep);
  }
  rep.n0 = *n0;
  rep.n0_found = true;

  // Exact scan of coefficients v .. N0-1 (everything >= N0 is covered by the
  // certified bound).
  std::int64_t scan_top = static_cast<std::int64_t>(*n0) - 1;
  long need_prec = static_cast<long>(scan_top) + 1;
  Rational lead = q[v];
  if (need_prec > base_prec) {
    long target = prec_cap ? std::min(need_prec, *prec_cap) : need_prec;
    if (target > base_prec) q = extremal_expansion(w, r, target, cache_dir);
    scan_top = std::min<std::int64_t>(scan_top, q.prec() - 1);
  }
  rep.scanned_up_to = scan_top;
  for (std::int64_t n = v; n <= scan_top; ++n) {
    if (q[n] <= 0) rep.violations.emplace_back(n, q[n] / lead);
  }

  if (!rep.violations.empty())
    rep.status = PositivityReport::Status::violated;
  else if (rep.scanned_up_to >= static_cast<std::int64_t>(*n0) - 1)
    rep.status = PositivityReport::Status::verified;
  else
    rep.status = PositivityReport::Status::inconclusive;
  return finish(rep);
}

std::string decimal_upper(const Rational& x, int significant_digits) {
  if (x == 0) return "0";
  if (x < 0) throw std::domain_error("decimal_upper: negative bound");
  // position of the leading digit
  long e10 = 0;
  Rational y = x;
  while (y >= 10) {
    y /= 10;
    ++e10;
  }
  while (y < 1) {
    y *= 10;
    --e10;
  }
  long k = significant_digits - 1 - e10;  // digits after scaling by 10^k
  Rational scaled = x;
  if (k >= 0)
    scaled *= Rational(int_pow(Int(10), static_cast<unsigned long>(k)));
  else
    scaled /= Rational(int_pow(Int(10), static_cast<unsigned long>(-k)));
  Int m;
  mpz_cdiv_q(m.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  std::string digits = m.get_str();
  if (k <= 0) return digits + std::string(static_cast<std::size_t>(-k), '0');
  if (static_cast<long>(digits.size()) <= k)
    return "0." + std::string(static_cast<std::size_t>(k - digits.size()), '0') + digits;
  return digits.substr(0, digits.size() - static_cast<std::size_t>(k)) + "." +
         digits.substr(digits.size() - static_cast<std::size_t>(k));
}

std::string report_to_json(const PositivityReport& rep) {
  nlohmann::ordered_json j;
  j["weight"] = rep.weight;
  j["depth"] = rep.depth;
  if (rep.n0_found)
    j["n0"] = rep.n0;
  else
    j["n0"] = nullptr;
  nlohmann::ordered_json consts = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < rep.constants.size(); ++l) {
    nlohmann::ordered_json c;
    c["order"] = l;
    c["value"] = decimal_upper(rep.constants[l].value);
    c["direction"] = "upper";
    consts.push_back(std::move(c));
  }
  j["constants"] = std::move(consts);
  j["scanned_up_to"] = rep.scanned_up_to;
  nlohmann::ordered_json viols = nlohmann::ordered_json::array();
  for (const auto& [n, coeff] : rep.violations)
    viols.push_back(nlohmann::ordered_json::array({n, to_string(coeff)}));
  j["violations"] = std::move(viols);
  j["status"] = status_name(rep.status);
  j["wall_time_ms"] = rep.wall_time_ms;
  return j.dump();
}

}  // namespace eqmf
