#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "eqmf/numtheory.hpp"
#include "eqmf/qseries.hpp"
#include "testutil.hpp"

using namespace eqmf;

TEST_CASE("make_series basics") {
  QSeries one = make_series({rat(1)}, 3);
  CHECK(one.prec() == 3);
  CHECK(one[0] == 1);
  CHECK(one[1] == 0);
  CHECK(one[2] == 0);

  QSeries q = make_series({rat(0), rat(1)}, 2);
  CHECK(q[0] == 0);
  CHECK(q[1] == 1);

  QSeries e2_trunc = make_series({rat(1), rat(-24)}, 2);
  CHECK(e2_trunc[1] == -24);  // sigma_1(1) = 1

  CHECK_THROWS_AS(make_series({rat(1)}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_series({rat(1), rat(2)}, 1), std::invalid_argument);
}

TEST_CASE("add, sub, scale") {
  std::mt19937_64 rng(7);
  QSeries f = testutil::random_series(rng, 20);
  QSeries zero(20);
  CHECK(add(f, zero) == f);
  CHECK(scale(f, rat(1)) == f);
  CHECK(sub(f, f).is_zero());

  // E4 - E2^2 truncated to 2 terms: 0 + 288 q
  QSeries e4 = make_series({rat(1), rat(240)}, 2);
  QSeries e2 = make_series({rat(1), rat(-24)}, 2);
  QSeries d = sub(e4, mul(e2, e2));
  CHECK(d[0] == 0);
  CHECK(d[1] == 288);
}

TEST_CASE("mul") {
  std::mt19937_64 rng(11);
  QSeries f = testutil::random_series(rng, 16);
  QSeries one = constant_series(1, 16);
  CHECK(mul(f, one) == f);

  QSeries a = make_series({rat(1), rat(1)}, 3);
  QSeries b = make_series({rat(1), rat(-1)}, 3);
  QSeries p = mul(a, b);
  CHECK(p[0] == 1);
  CHECK(p[1] == 0);
  CHECK(p[2] == -1);

  // E4 * E4 coefficient of q^1 is 2 * 240
  QSeries e4 = make_series({rat(1), rat(240)}, 2);
  CHECK(mul(e4, e4)[1] == 480);

  // precision of a product is the minimum of the operands'
  QSeries g = testutil::random_series(rng, 9);
  CHECK(mul(f, g).prec() == 9);
}

TEST_CASE("mul agrees with the schoolbook oracle") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    QSeries f = testutil::random_series(rng, 24);
    QSeries g = testutil::random_series(rng, 24);
    CHECK(mul(f, g) == testutil::mul_schoolbook(f, g));
  }
}

TEST_CASE("ring laws on random series") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    QSeries f = testutil::random_series(rng, 12);
    QSeries g = testutil::random_series(rng, 12);
    QSeries h = testutil::random_series(rng, 12);
    CHECK(mul(f, g) == mul(g, f));
    CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
    CHECK(mul(f, add(g, h)) == add(mul(f, g), mul(f, h)));
  }
}

TEST_CASE("pow") {
  std::mt19937_64 rng(19);
  QSeries f = testutil::random_series(rng, 10);
  CHECK(pow(f, 0) == constant_series(1, 10));
  CHECK(pow(f, 1) == f);
  CHECK(pow(f, 3) == mul(f, mul(f, f)));

  QSeries e2 = make_series({rat(1), rat(-24)}, 2);
  CHECK(pow(e2, 2)[1] == -48);
}

TEST_CASE("derive") {
  QSeries one = constant_series(1, 4);
  CHECK(derive(one).is_zero());
  QSeries q = make_series({rat(0), rat(1)}, 4);
  CHECK(derive(q) == q);

  // D E2 coefficient of q^2 is 2 * (-24 sigma_1(2)) = -144
  QSeries e2 = make_series({rat(1), rat(-24), rat(-72)}, 3);
  CHECK(derive(e2)[2] == -144);

  // Leibniz rule D(fg) = (Df)g + f(Dg) on random series
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    QSeries f = testutil::random_series(rng, 64);
    QSeries g = testutil::random_series(rng, 64);
    CHECK(derive(mul(f, g)) == add(mul(derive(f), g), mul(f, derive(g))));
  }
}

TEST_CASE("order_of_vanishing") {
  CHECK(*order_of_vanishing(make_series({rat(1), rat(1)}, 2)) == 0);
  QSeries s(8);
  s[3] = 1;
  s[5] = 1;
  CHECK(*order_of_vanishing(s) == 3);
  CHECK(!order_of_vanishing(QSeries(5)).has_value());

  // g_4^(2) = E4 - E2^2 vanishes to order exactly 1
  QSeries e4 = make_series({rat(1), rat(240), rat(2160)}, 3);
  QSeries e2 = make_series({rat(1), rat(-24), rat(-72)}, 3);
  CHECK(*order_of_vanishing(sub(e4, mul(e2, e2))) == 1);
}

TEST_CASE("sigma") {
  CHECK(sigma(0, 1) == 1);
  CHECK(sigma(3, 2) == 9);
  CHECK(sigma(1, 6) == 12);
  CHECK_THROWS_AS(sigma(1, 0), std::domain_error);

  auto tab = sigma_table(5, 50);
  for (std::uint64_t n = 1; n <= 50; ++n) CHECK(tab[n] == sigma(5, n));

  // multiplicative on coprime arguments
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::uint64_t> pick(1, 400);
  int done = 0;
  while (done < 40) {
    std::uint64_t m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    for (unsigned alpha : {0u, 1u, 3u})
      CHECK(sigma(alpha, m * n) == sigma(alpha, m) * sigma(alpha, n));
    ++done;
  }
}

TEST_CASE("bernoulli memo under concurrent initialization") {
  std::vector<std::thread> threads;
  std::vector<Rational> got(6);
  for (int t = 0; t < 6; ++t)
    threads.emplace_back([&got, t] { got[static_cast<std::size_t>(t)] = bernoulli(300 + 2 * static_cast<unsigned>(t)); });
  for (auto& t : threads) t.join();
  for (int t = 0; t < 6; ++t)
    CHECK(got[static_cast<std::size_t>(t)] == bernoulli(300 + 2 * static_cast<unsigned>(t)));
}

TEST_CASE("rational serialization round trip") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    Rational q = testutil::random_rational(rng);
    CHECK(parse_rational(to_string(q)) == q);
  }
  CHECK(to_string(rat(6, 3)) == "2");          // integers print without "/1"
  CHECK(to_string(rat(-691, 2730)) == "-691/2730");
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("bernoulli") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(2) == rat(1, 6));
  CHECK(bernoulli(4) == rat(-1, 30));
  CHECK(bernoulli(6) == rat(1, 42));
  CHECK(bernoulli(8) == rat(-1, 30));
  CHECK(bernoulli(10) == rat(5, 66));
  CHECK(bernoulli(12) == rat(-691, 2730));
  CHECK_THROWS_AS(bernoulli(3), std::domain_error);
}
