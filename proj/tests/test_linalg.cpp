#include "doctest.h"

#include <functional>
#include <random>

#include "clgrp/error.hpp"
#include "clgrp/linalg.hpp"
#include "oracles.hpp"

using namespace clgrp;
using namespace oracles;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (auto r : rows) {
    IntVector v;
    for (long x : r) v.emplace_back(x);
    m.append_row(v);
  }
  return m;
}

}  // namespace

TEST_CASE("hnf examples") {
  auto id = IntMatrix::identity(3);
  auto r = hnf_with_transform(id);
  CHECK(r.H == id);
  CHECK(r.U == id);
  auto m = mat({{2, 4}, {4, 4}});
  auto r2 = hnf_with_transform(m);
  CHECK(r2.H == mat({{2, 0}, {0, 4}}));
  CHECK(r2.U * m == r2.H);
  CHECK(is_unimodular(r2.U));
}

TEST_CASE("hnf agrees with the pairwise-gcd oracle on random 6x6") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, 6, 6, 10);
    if (trial % 10 == 0)
      for (std::size_t j = 0; j < 6; ++j) m(5, j) = m(0, j) + m(1, j);  // rank deficient
    auto r = hnf_with_transform(m);
    CHECK(is_row_hnf(r.H));
    CHECK(r.U * m == r.H);
    CHECK(is_unimodular(r.U));
    CHECK(r.H == oracle_hnf(m));
  }
}

TEST_CASE("smith form agrees with determinantal divisors") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, 6, 6, 10);
    auto d = smith_diagonal(m);
    CHECK(d == oracle_smith(m));
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
    Integer det = abs(determinant(m));
    if (det != 0) {
      Integer prod = 1;
      for (const auto& x : d) prod *= x;
      CHECK(prod == det);
    }
  }
}

TEST_CASE("snf examples") {
  auto g1 = snf(mat({{2, 0}, {0, 4}}));
  REQUIRE(g1.elementary_divisors.size() == 2);
  CHECK(g1.elementary_divisors[0] == 2);
  CHECK(g1.elementary_divisors[1] == 4);
  auto g2 = snf(mat({{2, 4}, {4, 4}}));
  CHECK(g2.class_number == 8);
  CHECK(g2.elementary_divisors.size() == 2);
  auto g3 = snf(mat({{2, 1}, {1, 1}}));
  CHECK(g3.elementary_divisors.empty());
  CHECK(g3.class_number == 1);
}

TEST_CASE("left kernel") {
  auto k = left_kernel(mat({{1, 1}, {1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(abs(k[0][0]) == 1);
  CHECK(k[0][0] + k[0][1] == 0);
  CHECK(left_kernel(mat({{2, 1}, {1, 3}})).empty());
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix base = random_matrix(rng, 4, 6, 5);
    IntMatrix mix = random_matrix(rng, 8, 4, 3);
    IntMatrix m = mix * base;
    auto ker = left_kernel(m);
    CHECK(ker.size() >= 4);
    for (const auto& v : ker) {
      IntMatrix row(1, v.size());
      row.set_row(0, v);
      CHECK(row * m == IntMatrix(1, 6));
    }
  }
}

TEST_CASE("class group from relation matrices") {
  // Z^2 / <(2,0),(0,2),(1,1)> ~ Z/2
  auto rep = class_group_from_relations(mat({{2, 0}, {0, 2}, {1, 1}, {0, 0}}));
  REQUIRE(rep.group.elementary_divisors.size() == 1);
  CHECK(rep.group.elementary_divisors[0] == 2);
  CHECK(rep.group.class_number == 2);
  // zero column dropped
  auto rep2 = class_group_from_relations(mat({{3, 0}, {6, 0}}));
  CHECK(rep2.dropped_columns.size() == 1);
  CHECK(rep2.group.class_number == 3);
  CHECK_THROWS_AS(class_group_from_relations(mat({{1, 1, 0}, {2, 2, 0}, {0, 0, 1}})), Error);
}

TEST_CASE("class group agrees with snf and shrinks monotonically") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 8, 5, 4);
    Integer prev = 0;
    IntMatrix acc;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      acc.append_row(m.row(i));
      try {
        auto rep = class_group_from_relations(acc);
        if (rep.dropped_columns.empty()) CHECK(rep.group.class_number == snf(acc).class_number);
        if (prev != 0 && rep.dropped_columns.empty()) CHECK(prev % rep.group.class_number == 0);
        if (rep.dropped_columns.empty()) prev = rep.group.class_number;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RankDeficient);
      }
    }
  }
}
