#include "doctest.h"

#include <cmath>
#include <random>

#include "clgrp/error.hpp"
#include "clgrp/lattice.hpp"
#include "clgrp/linalg.hpp"
#include "oracles.hpp"

using namespace clgrp;
using namespace oracles;

namespace {

double log_hadamard_ratio(const IntMatrix& b) {
  double s = 0;
  for (std::size_t j = 0; j < b.cols(); ++j) s += 0.5 * log_abs(dot(b.col(j), b.col(j)));
  return log_abs(determinant(b)) / b.cols() - s / b.cols();
}

}  // namespace

TEST_CASE("lll small examples") {
  LatticeBasis id{IntMatrix::identity(3), 0, std::nullopt};
  CHECK(lll(id).basis == IntMatrix::identity(3));
  IntMatrix b(2, 2);
  b(0, 0) = 1;
  b(1, 0) = 0;
  b(0, 1) = 4;
  b(1, 1) = 1;
  auto r = lll(LatticeBasis{b, 0, std::nullopt});
  CHECK(abs(r.basis(0, 0)) == 1);
  CHECK(r.basis(1, 0) == 0);
}

TEST_CASE("lll improves the Hadamard ratio and keeps the lattice") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix b = random_basis(rng, 8, 50);
    auto g = lll_gram(gram_of(b));
    CHECK(is_unimodular(g.U));
    IntMatrix nb = b * g.U;
    CHECK(gram_of(nb) == g.gram);
    CHECK(log_hadamard_ratio(nb) >= log_hadamard_ratio(b) - 1e-12);
  }
}

TEST_CASE("bkz block-Hermite bound on random lattices") {
  std::mt19937 rng(42);
  int checked = 0;
  for (int beta : {2, 4, 8}) {
    for (int trial = 0; trial < 34; ++trial) {
      std::size_t n = 8 + trial % 5;
      IntMatrix b = random_basis(rng, n, 40);
      ReductionReport rep;
      auto g = bkz_gram(gram_of(b), beta, &rep);
      CHECK(is_unimodular(g.U));
      double log_b1 = 0.5 * log_abs(g.gram(0, 0));
      CHECK(log_b1 <= log_block_hermite_bound(static_cast<int>(n), beta, determinant(gram_of(b))));
      CHECK(rep.bound_holds);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("bkz with full block finds the shortest vector") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix b = random_basis(rng, 6, 30);
    IntMatrix g = gram_of(b);
    auto red = bkz_gram(g, 6);
    auto svp = enumerate_svp(g);
    CHECK(red.gram(shortest_index(red.gram), shortest_index(red.gram)) == svp.norm2);
  }
}

TEST_CASE("hnf lattice examples and prefix monotonicity") {
  LatticeBasis id{IntMatrix::identity(3), 0, std::nullopt};
  CHECK(hnf_lattice(id).basis == IntMatrix::identity(3));
  IntMatrix h(2, 2);
  h(0, 0) = 2;
  h(0, 1) = 1;
  h(1, 1) = 3;
  CHECK(hnf_lattice(LatticeBasis{h, 0, std::nullopt}).basis == h);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix b = random_basis(rng, 6, 20);
    IntMatrix hb = hnf_lattice(LatticeBasis{b, 0, std::nullopt}).basis;
    Integer prefix = 1;
    for (std::size_t i = 0; i < 6; ++i) {
      Integer next = prefix * hb(i, i);
      CHECK(next >= prefix);
      prefix = next;
      for (std::size_t j = i + 1; j < 6; ++j) {
        CHECK(hb(i, j) >= 0);
        CHECK(hb(i, j) < hb(i, i));
      }
    }
    CHECK(prefix == abs(determinant(b)));
    // same lattice: each original column solves against the HNF
    for (std::size_t j = 0; j < 6; ++j) CHECK(solve_upper(hb, b.col(j)));
  }
}

TEST_CASE("cheon dimension") {
  CHECK(cheon_dimension(4, 32.0, 16) == 16);
  CHECK(cheon_dimension(4, 32.0, 40) == 16);
  CHECK(cheon_dimension(4, 0.0, 20) == 4);
  CHECK(cheon_dimension(2, 1.0, 10) == 2);
}

TEST_CASE("cheon reduction on planted small determinants") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    int beta = 4 + 2 * (trial % 3);
    std::size_t n = 18;
    double max_log = static_cast<double>(n * n) / (2.0 * beta);
    std::uniform_real_distribution<double> t(2.0, max_log);
    double lg = t(rng);
    Integer det;
    mpz_set_d(det.get_mpz_t(), std::floor(std::pow(static_cast<double>(beta), std::min(lg, 45.0))));
    IntMatrix h = IntMatrix::identity(n);
    h(0, 0) = det;
    std::uniform_int_distribution<unsigned long> coef(0, 1UL << 62);
    for (std::size_t j = 1; j < n; ++j) h(0, j) = Integer(coef(rng)) % det;
    IntMatrix b = h * random_unimodular(rng, n, 40);
    auto res = cheon_reduce(LatticeBasis{b, 0, std::nullopt}, beta);
    CHECK(res.log_beta_norm <= 1.1 * std::sqrt((2.0 / beta) * res.log_beta_det));
    CHECK(mat_vec(b, res.coefficients) == res.vector);
  }
  // too-large determinant is refused
  IntMatrix big = IntMatrix::identity(4);
  big(0, 0) = Integer(1) << 200;
  try {
    cheon_reduce(LatticeBasis{big, 0, std::nullopt}, 2);
    FAIL("expected DeterminantTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DeterminantTooLarge);
  }
}

TEST_CASE("enumerate_svp") {
  IntMatrix one(1, 1);
  one(0, 0) = 49;
  auto r1 = enumerate_svp(one);
  CHECK(r1.norm2 == 49);
  CHECK(abs(r1.coefficients[0]) == 1);
  IntMatrix hex(2, 2);
  hex(0, 0) = 2;
  hex(0, 1) = 1;
  hex(1, 0) = 1;
  hex(1, 1) = 2;
  CHECK(enumerate_svp(hex).norm2 == 2);
  IntMatrix big = IntMatrix::identity(31);
  CHECK_THROWS_AS(enumerate_svp(big), Error);

  std::mt19937 rng(31);
  std::uniform_int_distribution<int> pert(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix b(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) b(i, j) = (i == j ? 5 : 0) + pert(rng);
    IntMatrix g = gram_of(b);
    auto svp = enumerate_svp(g);
    Integer best = -1;
    std::vector<int> x(6, -3);
    while (true) {
      bool nonzero = false;
      for (int v : x) nonzero |= v != 0;
      if (nonzero) {
        Integer s = 0;
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) s += g(i, j) * x[i] * x[j];
        if (best < 0 || s < best) best = s;
      }
      int k = 0;
      while (k < 6 && x[k] == 3) x[k++] = -3;
      if (k == 6) break;
      ++x[k];
    }
    CHECK(svp.norm2 == best);
    Integer check = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) check += g(i, j) * svp.coefficients[i] * svp.coefficients[j];
    CHECK(check == svp.norm2);
  }
}

TEST_CASE("enumerate_ball counts Z^2 points") {
  IntMatrix g = IntMatrix::identity(2);
  // x^2 + y^2 <= 2 : (1,0),(0,1),(1,1),(1,-1) up to sign
  CHECK(enumerate_ball(g, Integer(2)).size() == 4);
}
