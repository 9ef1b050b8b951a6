#include "doctest.h"

#include <cmath>
#include <random>

#include "clgrp/error.hpp"
#include "clgrp/smoothness.hpp"
#include "oracles.hpp"

using namespace clgrp;
using namespace oracles;

TEST_CASE("smooth part examples") {
  auto a = smooth_part(Integer(720), 5);
  CHECK(a.smooth_part == std::map<std::uint64_t, int>{{2, 4}, {3, 2}, {5, 1}});
  CHECK(a.cofactor == 1);
  auto b = smooth_part(Integer(77), 5);
  CHECK(b.smooth_part.empty());
  CHECK(b.cofactor == 77);
  auto c = smooth_part(Integer(1), 7);
  CHECK(c.smooth_part.empty());
  CHECK(c.cofactor == 1);
}

TEST_CASE("smooth part reconstruction identity") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned long> nd(1, 1000000000000UL);
  std::uniform_int_distribution<unsigned long> bd(2, 10000);
  for (int trial = 0; trial < 10000; ++trial) {
    Integer n(nd(rng));
    unsigned long bound = bd(rng);
    auto r = smooth_part(n, bound);
    Integer prod = r.cofactor;
    for (const auto& [p, e] : r.smooth_part) {
      CHECK(p <= bound);
      for (int k = 0; k < e; ++k) prod *= static_cast<unsigned long>(p);
    }
    CHECK(prod == n);
    for (std::uint64_t p : primes_up_to(std::min<unsigned long>(bound, 200)))
      CHECK_FALSE(mpz_divisible_ui_p(r.cofactor.get_mpz_t(), static_cast<unsigned long>(p)));
  }
}

TEST_CASE("dickman rho values") {
  CHECK(dickman_rho(0.7) == 1.0);
  CHECK(std::fabs(dickman_rho(2.0) - (1 - std::log(2.0))) < 1e-12);
  CHECK(std::fabs(dickman_rho(3.0) - 0.0486083882911316) < 1e-12);
  CHECK(std::fabs(dickman_rho(3.0) - rho_oracle(3.0)) < 1e-6);
  for (double u : {1.5, 2.5, 3.7, 5.2}) {
    double o = rho_oracle(u);
    CHECK(std::fabs(dickman_rho(u) - o) / o < 1e-6);
  }
  CHECK_THROWS_AS(dickman_rho(25.0), Error);
}

TEST_CASE("dickman rho shape") {
  double prev = dickman_rho(1.0);
  for (double u = 1.05; u <= 20.0; u += 0.05) {
    double r = dickman_rho(u);
    CHECK(r > 0);
    CHECK(r < prev);
    prev = r;
    if (u >= 3) CHECK(r <= 10 * std::pow(u, -u));
  }
  // rho(10) is known to about 2.77e-11
  CHECK(std::fabs(dickman_rho(10.0) / 2.77017183772596e-11 - 1) < 1e-8);
}

TEST_CASE("empirical smoothness frequency") {
  const unsigned long x = 100000000UL, width = 100000UL, bound = 1000UL;
  int smooth = 0;
  for (unsigned long m = x; m < x + width; ++m)
    if (smooth_part(Integer(m), bound).smooth()) ++smooth;
  double frac = static_cast<double>(smooth) / width;
  double pred = dickman_rho(std::log(static_cast<double>(x)) / std::log(static_cast<double>(bound)));
  CHECK(std::fabs(frac / pred - 1) <= 0.3);
}

TEST_CASE("L-notation") {
  LExpr one{1.0, 0.5, false};
  Integer n(1000000);
  CHECK(eval_L(one, n) == doctest::Approx(1000.0).epsilon(1e-9));
  LExpr zero{0.0, 2.0, false};
  CHECK(eval_L(zero, n) == doctest::Approx(std::pow(std::log(1e6), 2)).epsilon(1e-9));
  // N = e^{e^4}: log N = e^4, loglog N = 4
  double ln = std::exp(4.0);
  LExpr half{0.5, 1.0, false};
  CHECK(log_eval_L(half, ln) == doctest::Approx(std::sqrt(ln) * 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(eval_L(one, Integer(15)), Error);
}

TEST_CASE("smoothness probability expressions") {
  double cb = 0.7;
  auto p = smooth_probability({1.0, 0.5, false}, {0.5, cb, false});
  CHECK(p.alpha == doctest::Approx(0.5));
  CHECK(p.c == doctest::Approx(1 / (4 * cb)));
  double a = 0.9, c = 1.3;
  double cb2 = std::sqrt(2 * a * c / 3);
  auto q = smooth_probability({4 * a / 3, c, false}, {2 * a / 3, cb2, false});
  CHECK(q.alpha == doctest::Approx(2 * a / 3));
  CHECK(q.c == doctest::Approx(cb2));
  try {
    smooth_probability({0.5, 1, false}, {0.5, 1, false});
    FAIL("expected AlphaOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphaOrder);
  }
  CHECK(log_smooth_heuristic(std::log(1e12), std::log(1e4)) == doctest::Approx(-3 * std::log(3.0)));
}
