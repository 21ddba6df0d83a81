#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "eqmf/modular.hpp"
#include "eqmf/numtheory.hpp"
#include "testutil.hpp"

using namespace eqmf;

TEST_CASE("eisenstein expansions") {
  auto e4 = eisenstein(4, 3);
  CHECK(e4.weight == 4);
  CHECK(e4.series[0] == 1);
  CHECK(e4.series[1] == 240);
  CHECK(e4.series[2] == 2160);

  auto e2 = eisenstein(2, 3);
  CHECK(e2.series[1] == -24);
  CHECK(e2.series[2] == -72);

  auto e0 = eisenstein(0, 4);
  CHECK(e0.series == constant_series(1, 4));

  auto e12 = eisenstein(12, 2);
  CHECK(e12.series[1] == rat(65520, 691));

  CHECK_THROWS_AS(eisenstein(5, 4), std::domain_error);
  CHECK_THROWS_AS(eisenstein(-2, 4), std::domain_error);
}

TEST_CASE("eisenstein cache under concurrent access") {
  std::vector<std::thread> threads;
  std::vector<QSeries> out(8, QSeries(1));
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&out, t] { out[static_cast<std::size_t>(t)] = eisenstein(4 + 2 * (t % 3), 40 + t).series; });
  for (auto& t : threads) t.join();
  for (int t = 0; t < 8; ++t)
    CHECK(out[static_cast<std::size_t>(t)] == eisenstein(4 + 2 * (t % 3), 40 + t).series);
}

TEST_CASE("delta") {
  auto d = delta(4);
  CHECK(d.weight == 12);
  CHECK(d.series[0] == 0);
  CHECK(d.series[1] == 1);
  CHECK(d.series[2] == -24);
  CHECK(d.series[3] == 252);
}

TEST_CASE("Ramanujan identities") {
  long P = 120;
  QSeries e2 = eisenstein(2, P).series;
  QSeries e4 = eisenstein(4, P).series;
  QSeries e6 = eisenstein(6, P).series;
  QSeries dd = delta(P).series;
  CHECK(derive(e2) == scale(sub(mul(e2, e2), e4), rat(1, 12)));
  CHECK(derive(e4) == scale(sub(mul(e2, e4), e6), rat(1, 3)));
  CHECK(derive(e6) == scale(sub(mul(e2, e6), mul(e4, e4)), rat(1, 2)));
  CHECK(derive(dd) == mul(e2, dd));
  CHECK(sub(mul(mul(e4, e4), e4), mul(e6, e6)) == scale(dd, 1728));
}

TEST_CASE("serre derivative displays") {
  long P = 80;
  auto e4 = eisenstein(4, P);
  auto e6 = eisenstein(6, P);
  CHECK(serre(e4, 4).series == scale(e6.series, rat(-1, 3)));
  CHECK(serre(e6, 6).series == scale(mul(e4.series, e4.series), rat(-1, 2)));
  CHECK(serre(delta(P), 12).series.is_zero());
  CHECK(serre(eisenstein(2, P), 1).series == scale(e4.series, rat(-1, 12)));
}

TEST_CASE("iterated serre derivative") {
  long P = 60;
  auto e4 = eisenstein(4, P);
  CHECK(serre_power(e4, 4, 0).series == e4.series);
  // d_4^2 E4 = d_6(-E6/3) = E4^2/6
  CHECK(serre_power(e4, 4, 2).series == scale(mul(e4.series, e4.series), rat(1, 6)));
  CHECK(serre_power(delta(P), 12, 2).series.is_zero());
}

TEST_CASE("serre maps modular forms to modular forms (exact linear solve)") {
  long P = 60;
  auto e4 = eisenstein(4, P);
  auto e6 = eisenstein(6, P);
  std::vector<ModularFormSeries> probes = {
      e4, e6, delta(P), ModularFormSeries{10, mul(e4.series, e6.series)}};
  for (const auto& f : probes) {
    ModularFormSeries df = serre(f, f.weight);
    auto basis = testutil::modular_monomials(df.weight, P);
    auto x = testutil::solve_leading(basis, df.series);
    REQUIRE(!x.empty());
    QSeries rebuilt(P);
    for (std::size_t j = 0; j < basis.size(); ++j) rebuilt = add(rebuilt, scale(basis[j], x[j]));
    CHECK(rebuilt == df.series);
  }
}

TEST_CASE("dimension formulas") {
  CHECK(dim_modular(0) == 1);
  CHECK(dim_modular(2) == 0);
  CHECK(dim_modular(4) == 1);
  CHECK(dim_modular(12) == 2);
  CHECK(dim_modular(14) == 1);
  CHECK(dim_modular(7) == 0);
  CHECK(dim_modular(-4) == 0);
  CHECK(dim_cusp(12) == 1);
  CHECK(dim_cusp(4) == 0);

  CHECK(dim_quasimodular(6, 1) == 2);
  CHECK(dim_quasimodular(12, 4) == 6);
  CHECK(dim_quasimodular(10, 4) == 4);
  CHECK_THROWS_AS(dim_quasimodular(12, 5), std::domain_error);
  CHECK_THROWS_AS(dim_quasimodular(12, 0), std::domain_error);
}

TEST_CASE("dim QM against the monomial-count oracle") {
  for (long w = 0; w <= 60; w += 2) {
    for (int r = 1; r <= 4; ++r) {
      long count = 0;
      for (long a = 0; 4 * a <= w; ++a)
        for (long b = 0; 4 * a + 6 * b <= w; ++b) {
          long c = (w - 4 * a - 6 * b) / 2;
          if (4 * a + 6 * b + 2 * c == w && c <= r) ++count;
        }
      CHECK(dim_quasimodular(w, r) == count);
    }
  }
}

TEST_CASE("f basis") {
  long P = 40;
  QSeries e2 = eisenstein(2, P).series;
  QSeries e4 = eisenstein(4, P).series;
  QSeries e6 = eisenstein(6, P).series;

  // f_6^(1) = E6 - E4 E2
  CHECK(f_basis(6, 1, P).q_expansion() == sub(e6, mul(e4, e2)));
  // f_4^(2) = E4 + E2^2 (middle term omitted)
  CHECK(f_basis(4, 2, P).q_expansion() == add(e4, mul(e2, e2)));
  // f_w^(0) = E_w
  CHECK(f_basis(8, 0, P).q_expansion() == eisenstein(8, P).series);
  // 2 f_4^(1) - f_4^(2) = E4 - E2^2
  QSeries lhs = sub(scale(f_basis(4, 1, P).q_expansion(), 2), f_basis(4, 2, P).q_expansion());
  CHECK(lhs == sub(e4, mul(e2, e2)));

  CHECK_THROWS_AS(f_basis(2, 2, P), std::domain_error);
  CHECK_THROWS_AS(f_basis(7, 1, P), std::domain_error);
}

TEST_CASE("d_eisenstein") {
  long P = 30;
  QSeries de4 = d_eisenstein(4, 1, P);
  CHECK(de4[1] == 240);
  CHECK(de4[2] == 4320);
  CHECK(de4 == derive(eisenstein(4, P).series));

  QSeries d2e2 = d_eisenstein(2, 2, P);
  CHECK(d2e2[2] == -288);
  CHECK(d2e2 == derive(derive(eisenstein(2, P).series)));

  CHECK_THROWS_AS(d_eisenstein(4, 0, P), std::domain_error);
  CHECK_THROWS_AS(d_eisenstein(0, 1, P), std::domain_error);
}

TEST_CASE("products of Eisenstein series differ from E_{v+w} by cusp forms") {
  long P = 10;
  for (long v : {4L, 6L, 8L})
    for (long w : {4L, 6L, 8L}) {
      QSeries diff = sub(eisenstein(v + w, P).series,
                         mul(eisenstein(v, P).series, eisenstein(w, P).series));
      CHECK(diff[0] == 0);
    }
}

TEST_CASE("component-space D and serre match the series-level definition") {
  long P = 24;
  QSeries e2 = eisenstein(2, P).series;
  // assorted weight-10 depth-2 forms: E4 E6, E4^2 E2, E6 E2^2 combinations
  QSeries e4 = eisenstein(4, P).series;
  QSeries e6 = eisenstein(6, P).series;
  std::vector<QuasimodularForm> probes;
  probes.emplace_back(10, std::vector<QSeries>{mul(e4, e6), QSeries(P), QSeries(P)});
  probes.emplace_back(10, std::vector<QSeries>{QSeries(P), mul(e4, e4), QSeries(P)});
  probes.emplace_back(10, std::vector<QSeries>{QSeries(P), QSeries(P), e6});
  probes.push_back(add(scale(probes[0], rat(2, 3)), sub(probes[1], scale(probes[2], 5))));

  for (const auto& f : probes) {
    QSeries fq = f.q_expansion();
    CHECK(derive(f).q_expansion() == derive(fq));
    for (long s : {f.weight() - f.depth(), f.weight(), 3L}) {
      QSeries direct = sub(derive(fq), scale(mul(e2, fq), rat(s, 12)));
      CHECK(serre(f, s).q_expansion() == direct);
    }
    // at parameter weight - depth the depth does not grow
    CHECK(serre(f, f.weight() - f.depth()).depth() <= f.depth());
  }
}

TEST_CASE("quasimodular component arithmetic") {
  long P = 30;
  // E2 as depth-1 form: q-expansion must reproduce the series
  QuasimodularForm e2qm(2, {QSeries(P), constant_series(1, P)});
  CHECK(e2qm.q_expansion() == eisenstein(2, P).series);
  CHECK(e2qm.depth() == 1);

  // derive on components matches derive on the q-expansion
  QuasimodularForm d = derive(e2qm);
  CHECK(d.q_expansion() == derive(eisenstein(2, P).series));
  CHECK(d.weight() == 4);

  // serre at parameter weight - depth keeps the depth bounded
  QuasimodularForm s = serre(e2qm, 1);
  CHECK(s.depth() <= 1);
  CHECK(s.q_expansion() == scale(eisenstein(4, P).series, rat(-1, 12)));
}
