#include "doctest.h"

#include <random>

#include "clgrp/poly.hpp"

using namespace clgrp;

namespace {

IntPolynomial ip(std::initializer_list<long> c) {
  IntPolynomial t;
  for (long x : c) t.coefficients.emplace_back(x);
  return t;
}

// Resultant via the Sylvester determinant, computed with rational elimination.
Rational sylvester_resultant(const QPoly& a, const QPoly& b) {
  int m = degree(a), n = degree(b);
  int s = m + n;
  std::vector<std::vector<Rational>> M(s, std::vector<Rational>(s));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = a[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = b[n - j];
  Rational det = 1;
  for (int k = 0; k < s; ++k) {
    int r = k;
    while (r < s && M[r][k] == 0) ++r;
    if (r == s) return 0;
    if (r != k) {
      std::swap(M[r], M[k]);
      det = -det;
    }
    det *= M[k][k];
    for (int i = k + 1; i < s; ++i) {
      Rational f = M[i][k] / M[k][k];
      for (int j = k; j < s; ++j) M[i][j] -= f * M[k][j];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("discriminants of small polynomials") {
  CHECK(discriminant(ip({1, 0, 1})) == -4);
  CHECK(discriminant(ip({-2, 0, 1})) == 8);
  CHECK(discriminant(ip({-1, -1, 0, 1})) == -23);
  CHECK(discriminant(ip({5, 0, 1})) == -20);
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9), deg(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    QPoly a, b;
    int da = deg(rng), db = deg(rng);
    for (int i = 0; i < da; ++i) a.emplace_back(coef(rng));
    a.emplace_back(1 + std::abs(coef(rng)));
    for (int i = 0; i < db; ++i) b.emplace_back(coef(rng));
    b.emplace_back(-1 - std::abs(coef(rng)));
    CHECK(resultant(a, b) == sylvester_resultant(a, b));
  }
}

TEST_CASE("real root counting") {
  CHECK(count_real_roots(ip({1, 0, 1}).to_q()) == 0);
  CHECK(count_real_roots(ip({-2, 0, 1}).to_q()) == 2);
  CHECK(count_real_roots(ip({-1, -1, 0, 1}).to_q()) == 1);
  CHECK(count_real_roots(ip({0, -1, 0, 1}).to_q()) == 3);
}

TEST_CASE("integer roots") {
  auto r = integer_roots(ip({-6, 11, -6, 1}).to_q());
  REQUIRE(r.size() == 3);
  CHECK(r[0] == 1);
  CHECK(r[2] == 3);
  CHECK(integer_roots(ip({1, 0, 1}).to_q()).empty());
  CHECK(integer_roots(ip({-1000000, 0, 1}).to_q()).size() == 2);
}

TEST_CASE("factorization mod p reproduces the input") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 101ULL, 10007ULL}) {
    ModField f{p};
    for (int trial = 0; trial < 15; ++trial) {
      std::uniform_int_distribution<std::uint64_t> c(0, p - 1);
      int d = 1 + static_cast<int>(rng() % 8);
      ModPoly a(d + 1);
      for (auto& x : a) x = c(rng);
      a[d] = 1;
      auto fac = factor_mod_p(a, f);
      ModPoly prod{1};
      int total = 0;
      for (const auto& [g, m] : fac) {
        CHECK(g.back() == 1);
        for (int k = 0; k < m; ++k) prod = mod_mul(prod, g, f);
        total += degree(g) * m;
        // irreducible factors have no roots unless linear
        if (degree(g) > 1)
          for (std::uint64_t x = 0; x < std::min<std::uint64_t>(p, 50); ++x) {
            std::uint64_t v = 0;
            for (int i = degree(g); i >= 0; --i) v = f.add(f.mul(v, x), g[i]);
            CHECK(v != 0);
          }
      }
      CHECK(total == d);
      CHECK(prod == a);
    }
  }
}

TEST_CASE("splitting patterns of x^2+1") {
  auto t = ip({1, 0, 1});
  CHECK(factor_mod_p(mod_poly(t, {5}), {5}).size() == 2);
  auto f3 = factor_mod_p(mod_poly(t, {3}), {3});
  REQUIRE(f3.size() == 1);
  CHECK(degree(f3[0].factor) == 2);
  auto f2 = factor_mod_p(mod_poly(t, {2}), {2});
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].multiplicity == 2);
}

TEST_CASE("irreducibility screen") {
  CHECK(is_irreducible(ip({1, 0, 1})));
  CHECK_FALSE(is_irreducible(ip({-1, 0, 1})));
  CHECK(is_irreducible(ip({-1, -1, 0, 1})));
  CHECK_FALSE(is_irreducible(ip({1, 0, 2, 0, 1})));  // (x^2+1)^2
  CHECK_FALSE(is_irreducible(ip({2, 0, 3, 0, 1})));  // (x^2+1)(x^2+2)
  CHECK(is_irreducible(ip({1, 1, 1, 1, 1})));        // 5th cyclotomic
  bool cert = true;
  // x^4+1 is irreducible but splits modulo every prime.
  CHECK_FALSE(is_irreducible(ip({1, 0, 0, 0, 1}), &cert));
  CHECK_FALSE(cert);
}
