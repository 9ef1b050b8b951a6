#include "doctest.h"

#include <cmath>

#include "clgrp/bigint.hpp"
#include "clgrp/error.hpp"
#include "clgrp/params.hpp"
#include "fields.hpp"

using namespace clgrp;

TEST_CASE("medium second constant") {
  CHECK(medium_second_constant(2.3728639) == doctest::Approx(1.095).epsilon(5e-4));
  CHECK(medium_second_constant(std::log2(7.0)) == doctest::Approx(1.136).epsilon(5e-4));
  // Minimised at omega = 1, increasing on [2, 3].
  CHECK(medium_second_constant(2.0) < medium_second_constant(3.0));
}

TEST_CASE("exponents across the mode boundary") {
  ClassDParams p;
  p.alpha = 0.75;
  p.gamma = 0.25;
  CHECK(predicted_complexity(p, 2.5, PlanMode::Medium).alpha == doctest::Approx(0.5));
  CHECK(predicted_complexity(p, 2.5, PlanMode::Large).alpha == doctest::Approx(0.5));
  for (int i = 1; i <= 100; ++i) {
    p.alpha = 0.75 + 0.25 * i / 100.0;
    double cheon = predicted_complexity(p, 2.5, PlanMode::Cheon).alpha;
    double large = predicted_complexity(p, 2.5, PlanMode::Large).alpha;
    CHECK(cheon < large);
    CHECK(cheon > 0.5);
    CHECK(cheon <= 0.6 + 1e-15);
  }
  p.alpha = 1;
  CHECK(predicted_complexity(p, 2.5, PlanMode::Cheon).alpha == doctest::Approx(0.6));
  p.alpha = 0.9;
  CHECK(predicted_complexity(p, 2.5, PlanMode::Large).alpha == doctest::Approx(0.6));
  p.alpha = 0.6;
  auto med = predicted_complexity(p, 2.3728639, PlanMode::Medium);
  CHECK(med.alpha == 0.5);
  CHECK(med.c == doctest::Approx(1.095).epsilon(5e-4));
  p.alpha = 0.3;
  p.gamma = 0.9;
  CHECK(predicted_complexity(p, 2.5, PlanMode::Medium).alpha == doctest::Approx(0.45));
  CHECK_THROWS_AS(predicted_complexity(p, 2.5, PlanMode::Large), Error);
}

TEST_CASE("cyclotomic invariants") {
  auto q4 = cyclotomic_invariants(4);
  CHECK(q4.degree == 2);
  CHECK(std::exp(q4.log_disc) == doctest::Approx(4));
  auto q3 = cyclotomic_invariants(3);
  CHECK(q3.degree == 2);
  CHECK(std::exp(q3.log_disc) == doctest::Approx(3));
  for (std::uint64_t p : {5, 7, 11, 101, 10007}) {
    auto c = cyclotomic_invariants(p);
    CHECK(c.degree == p - 1);
    CHECK(c.log_disc == doctest::Approx((p - 2) * std::log(static_cast<double>(p))));
  }
  // Q(zeta_5): field discriminant 125.
  auto z5 = testfields::zeta5();
  CHECK(std::exp(cyclotomic_invariants(5).log_disc) == doctest::Approx(std::fabs(z5->discriminant().get_d())));
  // Q(zeta_12) = Q(i, sqrt -3): |disc| = 144.
  auto z12 = cyclotomic_invariants(12);
  CHECK(z12.degree == 4);
  CHECK(std::exp(z12.log_disc) == doctest::Approx(144));
  CHECK_THROWS_AS(cyclotomic_invariants(2), Error);
}

TEST_CASE("cyclotomic degree ratio") {
  CHECK(std::fabs(cyclotomic_sum_ratio(10007) - 1) < 0.1);
  // The exact ratio phi(p) loglog|disc| / log|disc| equals the displayed closed form.
  for (std::uint64_t p : {101, 1009, 10007}) {
    auto c = cyclotomic_invariants(p);
    double exact = static_cast<double>(c.degree) * std::log(c.log_disc) / c.log_disc;
    CHECK(cyclotomic_prime_factor(p) == doctest::Approx(exact).epsilon(1e-12));
  }
  // Tends to 1 from above, slowly.
  double prev = 10;
  for (std::uint64_t p : {11, 101, 1009, 10007, 100003, 1000003}) {
    double f = cyclotomic_prime_factor(p);
    CHECK(f > 1);
    CHECK(f < prev);
    prev = f;
  }
  // l = p^k with k growing: k / (k - 1/(p - 1)).
  CHECK(cyclotomic_sum_ratio(3 * 3 * 3 * 3 * 3 * 3) == doctest::Approx(6 / (6 - 0.5) * (5 * std::log(3) + std::log(2)) / (6 * std::log(3))).epsilon(1e-12));
}

TEST_CASE("classify cyclotomic fields") {
  double prev_gap = 1;
  for (std::uint64_t p : primes_up_to(10000)) {
    if (p < 1000) continue;
    auto c = cyclotomic_invariants(p);
    auto cls = classify_D(static_cast<int>(c.degree), c.log_disc, 0.0);
    CHECK(cls.alpha > 0.8);
    CHECK(cls.alpha <= 1);
    double gap = std::fabs(cls.alpha_raw - 1);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.03);
}

TEST_CASE("classify band and gamma") {
  double log_disc = 1000;
  double ratio = log_disc / std::log(log_disc);
  int n = static_cast<int>(std::ceil(std::sqrt(ratio)));
  auto cls = classify_D(n, log_disc, 0.0);
  CHECK(cls.alpha == doctest::Approx(0.5).epsilon(0.04));
  CHECK(cls.alpha_lo <= cls.alpha);
  CHECK(cls.alpha <= cls.alpha_hi);
  // Band membership: n within [R^a / n0, n0 R^a] at both band ends.
  CHECK(std::pow(ratio, cls.alpha_lo) / cls.n0 <= n * (1 + 1e-12));
  CHECK(std::pow(ratio, cls.alpha_hi) * cls.n0 >= n * (1 - 1e-12));
  CHECK(cls.gamma == doctest::Approx(1 - cls.alpha));

  // gamma solves d = d0 (log|disc|)^gamma (loglog|disc|)^(1 - gamma).
  auto big = classify_D(n, log_disc, 200.0, 2, 1);
  double ll = std::log(log_disc);
  CHECK(std::pow(log_disc, big.gamma) * std::pow(ll, 1 - big.gamma) == doctest::Approx(200.0));
  CHECK(big.gamma >= 1 - big.alpha);

  // Quadratic fields: alpha decreases to 0 with the discriminant.
  double prev = 1;
  for (double ld : {10.0, 100.0, 1e4, 1e6}) {
    auto q = classify_D(2, ld, 0.0);
    CHECK(q.alpha < prev);
    prev = q.alpha;
  }
  CHECK(prev < 0.1);

  CHECK_THROWS_AS(classify_D(1, 10, 0), Error);
  CHECK_THROWS_AS(classify_D(2, 10, 0, 1.0, 1.0), Error);
}

TEST_CASE("select params") {
  auto f = testfields::sqrt_m23();
  auto plan = select_params(*f, 2.3728639);
  CHECK(plan.mode == PlanMode::Medium);
  CHECK(plan.c_b == doctest::Approx(1 / (2 * std::sqrt(2.3728639))));
  CHECK(plan.second_constant == doctest::Approx(1.095).epsilon(5e-4));
  CHECK(plan.beta_block == 2);
  CHECK(plan.B >= 2);
  CHECK(plan.B <= kMaxBound);

  auto z5 = select_params(*testfields::zeta5(), 2.5);
  CHECK(z5.mode == PlanMode::Large);
  CHECK(z5.c_b == kLargeCb);
  CHECK(z5.beta_block >= 2);
  CHECK(z5.beta_block <= 4);

  auto ch = select_params(*testfields::zeta5(), 2.5, PlanMode::Cheon);
  CHECK(ch.mode == PlanMode::Cheon);
  CHECK(ch.predicted.alpha == doctest::Approx(0.6));

  CHECK_THROWS_AS(select_params(*f, 1.5), Error);
  CHECK(parse_plan_mode(to_string(PlanMode::Large)) == PlanMode::Large);
}
