#include "doctest.h"

#include <cmath>
#include <random>

#include "clgrp/error.hpp"
#include "clgrp/field.hpp"

using namespace clgrp;

namespace {

IntPolynomial ip(std::initializer_list<long> c) {
  IntPolynomial t;
  for (long x : c) t.coefficients.emplace_back(x);
  return t;
}

double d(const Interval& x) { return x.mid().to_double(); }

}  // namespace

TEST_CASE("parse small fields") {
  auto qi = NumberField::parse(ip({1, 0, 1}), std::nullopt);
  CHECK(qi->degree() == 2);
  CHECK(qi->signature().r1 == 0);
  CHECK(qi->signature().r2 == 1);
  CHECK(qi->discriminant() == -4);

  auto q2 = NumberField::parse(ip({-2, 0, 1}), std::nullopt);
  CHECK(q2->signature().r1 == 2);
  CHECK(q2->discriminant() == 8);

  auto cub = NumberField::parse(ip({-1, -1, 0, 1}), std::nullopt);
  CHECK(cub->signature().r1 == 1);
  CHECK(cub->signature().r2 == 1);
  CHECK(cub->discriminant() == -23);
}

TEST_CASE("parse errors") {
  IntPolynomial nm = ip({1, 0, 2});
  CHECK_THROWS_AS(NumberField::parse(nm, std::nullopt), Error);
  try {
    NumberField::parse(ip({-1, 0, 1}), std::nullopt);
    FAIL("expected Reducible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Reducible);
  }
  // Basis {1, theta/2} for x^2+1 is not an order.
  RatMatrix bad(2, 2);
  bad(0, 0) = 1;
  bad(1, 1) = Rational(1, 2);
  try {
    NumberField::parse(ip({1, 0, 1}), bad);
    FAIL("expected BasisNotUnimodularScaling");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BasisNotUnimodularScaling);
  }
}

TEST_CASE("non-trivial integral basis for x^2-5") {
  RatMatrix rows(2, 2);
  rows(0, 0) = 1;
  rows(1, 0) = Rational(1, 2);
  rows(1, 1) = Rational(1, 2);
  auto f = NumberField::parse(ip({-5, 0, 1}), rows);
  CHECK(f->discriminant() == 5);
  CHECK(f->index() == 2);
  auto w = f->from_integers({0, 1});
  // omega^2 = omega + 1
  auto w2 = f->mul(w, w);
  CHECK(w2.coords[0] == 1);
  CHECK(w2.coords[1] == 1);
  CHECK(norm_of(w) == -1);
}

TEST_CASE("canonical embedding examples") {
  auto qi = NumberField::parse(ip({1, 0, 1}), std::nullopt);
  auto e1 = canonical_embedding(qi->one());
  CHECK(d(e1[0]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::fabs(d(e1[1])) < 1e-30);
  auto e2 = canonical_embedding(qi->from_integers({2, 1}));
  CHECK(d(e2[0]) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(d(e2[1]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  auto q2 = NumberField::parse(ip({-2, 0, 1}), std::nullopt);
  auto e3 = canonical_embedding(q2->from_integers({0, 1}));
  CHECK(d(e3[0]) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(d(e3[1]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("norms") {
  auto qi = NumberField::parse(ip({1, 0, 1}), std::nullopt);
  CHECK(norm_of(qi->one()) == 1);
  CHECK(norm_of(qi->from_integers({2, 1})) == 5);
  auto q2 = NumberField::parse(ip({-2, 0, 1}), std::nullopt);
  CHECK(norm_of(q2->from_integers({1, 1})) == -1);
}

TEST_CASE("norm multiplicativity and conjugate products") {
  std::vector<IntPolynomial> polys = {ip({1, 0, 1}), ip({-2, 0, 1}), ip({-1, -1, 0, 1}),
                                      ip({5, 0, 1}), ip({1, 1, 1, 1, 1}), ip({-3, 1, 0, 0, 1})};
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-20, 20);
  for (const auto& t : polys) {
    auto f = NumberField::parse(t, std::nullopt);
    int n = f->degree();
    for (int trial = 0; trial < 100; ++trial) {
      IntVector a(n), b(n);
      for (auto& x : a) x = c(rng);
      for (auto& x : b) x = c(rng);
      auto x = f->from_integers(a), y = f->from_integers(b);
      CHECK(norm_of(f->mul(x, y)) == norm_of(x) * norm_of(y));
      // product of conjugates encloses the exact norm
      auto conj = f->conjugates(x, 128);
      Interval prod(Integer(1), 200);
      for (int i = 0; i < f->signature().r1; ++i) prod *= conj[i].re;
      for (int i = f->signature().r1; i < f->signature().r1 + f->signature().r2; ++i)
        prod *= norm2(conj[i]);
      CHECK(prod.contains(norm_of(x)));
      // additivity
      auto ex = canonical_embedding(x), ey = canonical_embedding(y);
      auto es = canonical_embedding(f->add(x, y));
      for (int i = 0; i < n; ++i) {
        Interval diff = es[i] - ex[i] - ey[i];
        CHECK(diff.mag().to_double() < 1e-25);
      }
    }
  }
}

TEST_CASE("signature is stable under precision doubling") {
  auto f = NumberField::parse(ip({-3, 1, 0, 0, 1}), std::nullopt);
  auto g = f->with_precision(256);
  CHECK(f->signature().r1 == g->signature().r1);
  CHECK(f->roots(128).roots.size() == g->roots(256).roots.size());
  CHECK(f->signature().r1 + 2 * f->signature().r2 == f->degree());
}

TEST_CASE("Minkowski inequality on test fields") {
  for (const auto& t : {ip({1, 0, 1}), ip({-2, 0, 1}), ip({-1, -1, 0, 1}), ip({1, 1, 1, 1, 1})}) {
    auto f = NumberField::parse(t, std::nullopt);
    int n = f->degree();
    double lhs = std::pow(n, n) / std::tgamma(n + 1) * std::pow(M_PI / 4, n / 2.0);
    CHECK(lhs <= std::sqrt(std::fabs(mpz_get_d(f->discriminant().get_mpz_t()))) + 1e-12);
  }
}
