#include "doctest.h"

#include <cmath>

#include "clgrp/analytic.hpp"
#include "clgrp/error.hpp"
#include "clgrp/linalg.hpp"
#include "fields.hpp"
#include "oracles.hpp"

using namespace clgrp;
using namespace oracles;

namespace {

double leibniz_pi_over_4(long terms) {
  double s = 0;
  for (long k = terms - 1; k >= 0; --k) s += (k % 2 ? -1.0 : 1.0) / static_cast<double>(2 * k + 1);
  return s;
}

int torsion_oracle(const NumberField& f, int box) {
  auto one = f.one();
  int count = 0;
  const int n = f.degree();
  IntVector c(n, Integer(-box));
  while (true) {
    auto x = f.from_integers(c);
    auto p = x;
    for (int k = 1; k <= 24; ++k) {
      if (p.coords == one.coords) {
        ++count;
        break;
      }
      p = f.mul(p, x);
    }
    int i = 0;
    while (i < n && c[i] == box) c[i++] = -box;
    if (i == n) break;
    c[i] += 1;
  }
  return count;
}

}  // namespace

TEST_CASE("local Euler factors") {
  auto qi = testfields::gaussian();
  CHECK(euler_factor(*qi, 5) == Rational(5, 4));
  CHECK(euler_factor(*qi, 3) == Rational(3, 4));
  CHECK(euler_factor(*qi, 2) == Rational(1));
  auto two = euler_residue(*qi, 2);
  CHECK(two.value.contains(Rational(1)));
}

TEST_CASE("Euler product of Q(i) approaches pi/4") {
  auto qi = testfields::gaussian();
  auto e = euler_residue(*qi, 10000);
  double oracle = leibniz_pi_over_4(2000000);
  CHECK(std::fabs(e.value.mid().to_double() / oracle - 1) < 0.02);
  CHECK(e.skipped.empty());
  CHECK(default_prime_bound(*qi) == 10000);
}

TEST_CASE("parallel and serial Euler products agree") {
  for (auto f : {testfields::gaussian(), testfields::sqrt2(), testfields::cubic23(), testfields::zeta5()}) {
    auto a = euler_residue(*f, 20000, 4);
    auto b = euler_residue_serial(*f, 20000);
    auto c = euler_residue(*f, 20000, 1);
    CHECK(a.value.lower() == c.value.lower());
    CHECK(a.value.upper() == c.value.upper());
    CHECK(std::fabs(a.value.mid().to_double() - b.value.mid().to_double()) < 1e-25);
    CHECK(a.value.width().to_double() < 1e-30);
  }
}

TEST_CASE("residues match the class number formula on imaginary quadratic fields") {
  for (long c : {1L, 2L, 5L, 6L, 14L, 26L}) {
    auto f = c % 4 == 3 ? testfields::make({(1 + c) / 4, -1, 1}) : testfields::make({c, 0, 1});
    long d = f->discriminant().get_si();
    REQUIRE(oracles::is_fundamental(d));
    long h = oracles::class_number_forms(d);
    int w = count_roots_of_unity(*f);
    double expect = 2 * M_PI * static_cast<double>(h) / (w * std::sqrt(static_cast<double>(-d)));
    double got = euler_residue(*f, 10000).value.mid().to_double();
    CHECK(got / expect > 0.8);
    CHECK(got / expect < 1.25);
  }
  auto q2 = testfields::sqrt2();
  double expect = 2 * 0.881373587019543 / std::sqrt(8.0);
  CHECK(std::fabs(euler_residue(*q2, 10000).value.mid().to_double() / expect - 1) < 0.05);
}

TEST_CASE("roots of unity") {
  CHECK(count_roots_of_unity(*testfields::gaussian()) == 4);
  CHECK(count_roots_of_unity(*testfields::sqrt2()) == 2);
  CHECK(count_roots_of_unity(*testfields::make({1, -1, 1})) == 6);
  CHECK(count_roots_of_unity(*testfields::zeta5()) == 10);
  CHECK(count_roots_of_unity(*testfields::sqrt_m5()) == 2);
  for (auto f : {testfields::gaussian(), testfields::make({1, -1, 1}), testfields::zeta5(), testfields::sqrt_m23(),
                 testfields::cubic23()})
    CHECK(count_roots_of_unity(*f) == torsion_oracle(*f, 2));
}

TEST_CASE("regulator from explicit units") {
  auto qi = testfields::gaussian();
  CHECK(regulator_from_kernel(*qi, {}, std::vector<AlgebraicNumber>{}).value.contains(Rational(1)));

  auto q2 = testfields::sqrt2();
  auto eps = q2->from_integers({1, 1});
  auto e2 = q2->mul(eps, eps);
  auto e3 = q2->mul(e2, eps);
  std::vector<AlgebraicNumber> gens{e3, e2, q2->from_integers({7, 0})};
  auto r = regulator_from_kernel(*q2, {{1, 0, 0}, {0, 1, 0}}, gens);
  CHECK(std::fabs(r.value.mid().to_double() - 0.881373587019543) < 1e-12);
  auto r2 = regulator_from_kernel(*q2, {{1, -1, 0}}, gens);
  CHECK(std::fabs(r2.value.mid().to_double() - 0.881373587019543) < 1e-12);
  auto r3 = regulator_from_kernel(*q2, {{0, 3, 0}, {2, 0, 0}}, gens);
  CHECK(std::fabs(r3.value.mid().to_double() - 6 * 0.881373587019543) < 1e-12);
  try {
    regulator_from_kernel(*q2, {{2, -3, 0}}, gens);
    FAIL("expected ZeroVolume");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVolume);
  }
}

TEST_CASE("regulators agree with unit-search oracles") {
  auto q2 = testfields::sqrt2();
  auto q10 = testfields::sqrt10();
  auto cub = testfields::cubic23();
  auto tr = testfields::make({1, -3, 0, 1});  // totally real cyclic cubic, unit rank 2
  CHECK(regulator_oracle(*q2, 3) == doctest::Approx(0.881373587019543).epsilon(1e-9));
  CHECK(regulator_oracle(*q10, 6) == doctest::Approx(1.818446459232067).epsilon(1e-9));
  CHECK(regulator_oracle(*cub, 3) == doctest::Approx(std::log(1.324717957244746)).epsilon(1e-9));
  for (auto f : {q2, q10, cub, tr}) {
    double oracle = regulator_oracle(*f, f->degree() == 2 ? 6 : 3);
    auto units = unit_search(*f, f->degree() == 2 ? 6 : 2);
    std::vector<AlgebraicNumber> gens;
    std::vector<IntVector> kernel;
    for (std::size_t i = 0; i < units.size(); ++i) {
      gens.push_back(units[i].x);
      IntVector v(units.size());
      v[i] = 1;
      kernel.push_back(v);
    }
    double reg = regulator_from_kernel(*f, kernel, gens).value.mid().to_double();
    CHECK(reg == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("verification gate") {
  auto qi = testfields::gaussian();
  auto a = analytic_data(*qi, 10000);
  Interval one(Integer(1), 64);
  auto v = verify(1, one, a, *qi);
  CHECK(v.verdict == Verdict::Accept);
  CHECK(std::fabs(v.value() - 1) < 0.02);
  CHECK(verify(2, one, a, *qi).verdict == Verdict::Reject);

  auto q5 = testfields::sqrt_m5();
  auto a5 = analytic_data(*q5, 10000);
  CHECK(verify(2, one, a5, *q5).verdict == Verdict::Accept);
  auto bad = verify(4, one, a5, *q5);
  CHECK(bad.verdict == Verdict::Reject);
  CHECK(bad.value() == doctest::Approx(2.0).epsilon(0.1));

  auto q2 = testfields::sqrt2();
  auto a2 = analytic_data(*q2, 10000);
  Interval reg(Rational(881373587, 1000000000), 64);
  CHECK(verify(1, reg, a2, *q2).verdict == Verdict::Accept);
  CHECK(verify(1, reg * Interval(Integer(2), 64), a2, *q2).verdict == Verdict::Reject);
}
