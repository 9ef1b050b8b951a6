#include "doctest.h"

#include "clgrp/error.hpp"
#include "clgrp/linalg.hpp"
#include "clgrp/relations.hpp"
#include "fields.hpp"
#include "oracles.hpp"

using namespace clgrp;

namespace {

CollectionConfig config(std::uint64_t B, CollectMode mode = CollectMode::Plain) {
  CollectionConfig c;
  c.bound_B = B;
  c.mode = mode;
  c.rng_seed = 42;
  return c;
}

bool same(const RelationMatrix& a, const RelationMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.aux.size() != b.aux.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].exponents != b.rows[i].exponents) return false;
    if (a.rows[i].generator.coords != b.rows[i].generator.coords) return false;
    if (a.rows[i].provenance.trial != b.rows[i].provenance.trial) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sampling") {
  auto qi = testfields::gaussian();
  auto fb = build_factor_base(*qi, 5);
  auto cfg = config(5);
  cfg.k = 2;
  auto rng = trial_rng(7, 0);
  auto s = sample_ideal(*qi, fb, cfg, rng);
  auto rng2 = trial_rng(7, 0);
  auto s2 = sample_ideal(*qi, fb, cfg, rng2);
  CHECK(s.indices == s2.indices);
  CHECK(s.exponents == s2.exponents);
  CHECK(s.indices.size() == 2);
  CHECK(s.indices[0] != s.indices[1]);
  CHECK(s.ideal.norm <= Integer(15625));
  cfg.k = 3;
  auto all = sample_ideal(*qi, fb, cfg, rng);
  std::vector<std::size_t> sorted = all.indices;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("sampling is uniform over the base") {
  auto f = testfields::sqrt_m23();
  auto fb = build_factor_base(*f, 60);
  auto cfg = config(60);
  cfg.k = 2;
  std::vector<double> count(fb.size(), 0.0);
  std::vector<double> ecount(3, 0.0);
  const int draws = 1000;
  for (int t = 0; t < draws; ++t) {
    auto rng = trial_rng(99, static_cast<std::uint64_t>(t));
    auto s = sample_ideal(*f, fb, cfg, rng);
    for (std::size_t i : s.indices) count[i] += 1;
    for (int e : s.exponents) {
      REQUIRE(e >= 1);
      REQUIRE(e <= 3);
      ecount[static_cast<std::size_t>(e - 1)] += 1;
    }
  }
  double expect = 2.0 * draws / static_cast<double>(fb.size());
  double chi2 = 0;
  for (double c : count) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < oracles::chi2_quantile99(static_cast<double>(fb.size() - 1)));
  double ee = 2.0 * draws / 3;
  double chi2e = 0;
  for (double c : ecount) chi2e += (c - ee) * (c - ee) / ee;
  CHECK(chi2e < oracles::chi2_quantile99(2));
}

TEST_CASE("derive_relation examples") {
  auto qi = testfields::gaussian();
  auto fb = build_factor_base(*qi, 5);
  auto cfg = config(5);
  auto x = qi->from_integers({2, 1});
  std::size_t idx = valuation(*qi, x, fb.primes[1]) == 1 ? 1 : 2;
  SampledIdeal s{principal_ideal(*qi, x), {idx}, {1}};
  REQUIRE(s.ideal == fb.primes[idx].ideal());
  auto out = derive_relation(*qi, fb, s, cfg);
  REQUIRE(out.relations.size() == 1);
  CHECK(out.relations[0].exponents == std::vector<std::pair<std::size_t, int>>{{idx, 1}});
  CHECK(abs(norm_of(out.relations[0].generator)) == 5);
  CHECK(out.eq5_ok);

  auto q5 = testfields::sqrt_m5();
  auto fb5 = build_factor_base(*q5, 11);
  SampledIdeal s5{ideal_from_power_product(*q5, fb5, {0}, {2}), {0}, {2}};
  auto out5 = derive_relation(*q5, fb5, s5, config(11));
  REQUIRE(out5.relations.size() == 1);
  CHECK(out5.relations[0].exponents == std::vector<std::pair<std::size_t, int>>{{0, 2}});
  CHECK(abs(norm_of(out5.relations[0].generator)) == 4);
}

TEST_CASE("non-smooth cofactors give no relation") {
  // disc -239 with B = 3: reduced cofactors have norm at most 8 and 5 splits.
  auto f = testfields::make({60, -1, 1});
  auto fb = build_factor_base(*f, 3);
  int empty = 0;
  for (std::size_t i = 0; i < fb.size(); ++i)
    for (int e = 1; e <= 4; ++e) {
      SampledIdeal s{ideal_from_power_product(*f, fb, {i}, {e}), {i}, {e}};
      auto out = derive_relation(*f, fb, s, config(3));
      if (out.relations.empty()) {
        ++empty;
      } else {
        CHECK(out.relations[0].exponents.size() >= 1);
      }
    }
  CHECK(empty > 0);
}

TEST_CASE("multi mode") {
  auto qi = testfields::gaussian();
  auto fb = build_factor_base(*qi, 5);
  auto cfg = config(5, CollectMode::Multi);
  SampledIdeal unit{unit_ideal(*qi), {}, {}};
  auto out = derive_relation_multi(*qi, fb, unit, cfg);
  int trivial = 0;
  for (const auto& r : out.relations)
    if (r.exponents.empty()) ++trivial;
  CHECK(trivial == 1);
  CHECK(out.candidates + 1 <= (9 - 1) / 2);

  auto f = testfields::sqrt_m23();
  auto fb23 = build_factor_base(*f, 30);
  auto c23 = config(30, CollectMode::Multi);
  for (long t = 0; t < 30; ++t) {
    auto rng = trial_rng(5, static_cast<std::uint64_t>(t));
    auto s = sample_ideal(*f, fb23, c23, rng);
    auto plain = derive_relation(*f, fb23, s, c23);
    auto multi = derive_relation_multi(*f, fb23, s, c23);
    for (const auto& r : plain.relations) {
      bool found = std::any_of(multi.relations.begin(), multi.relations.end(),
                               [&](const Relation& q) { return q.exponents == r.exponents; });
      CHECK(found);
    }
    CHECK(multi.candidates + 1 <= 4);
  }
}

TEST_CASE("collection yields the class group") {
  struct Case {
    clgrp::FieldPtr f;
    std::uint64_t B;
    long h;
  };
  for (const auto& c : {Case{testfields::gaussian(), 10, 1}, Case{testfields::sqrt_m5(), 11, 2},
                        Case{testfields::sqrt_m23(), 30, 3}}) {
    for (auto mode : {CollectMode::Plain, CollectMode::Multi, CollectMode::Cheon}) {
      auto fb = build_factor_base(*c.f, c.B);
      auto m = collect(*c.f, fb, config(c.B, mode));
      CHECK(m.rows.size() >= 2 * m.columns());
      CHECK(m.bach_rank == fb.bach_prefix);
      for (const auto& r : m.rows) CHECK(verify_relation(*c.f, fb, m, r));
      CHECK(m.stats.eq5_violations == 0);
      auto cg = class_group_from_relations(m.dense());
      CHECK(cg.group.class_number == c.h);
    }
  }
}

TEST_CASE("cheon mode adjoins auxiliary primes") {
  auto f = testfields::make({60, -1, 1});
  auto fb = build_factor_base(*f, 3);
  auto cfg = config(3, CollectMode::Cheon);
  auto m = collect(*f, fb, cfg);
  CHECK(m.aux.size() > 0);
  for (const auto& P : m.aux) {
    CHECK(P.norm > 3);
    CHECK(P.norm <= 239);
  }
  for (const auto& r : m.rows) CHECK(verify_relation(*f, fb, m, r));
  CHECK(class_group_from_relations(m.dense()).group.class_number == oracles::class_number_forms(-239));
  CHECK(m.stats.cheon_fallbacks > 0);
}

TEST_CASE("collection is deterministic across thread counts") {
  auto f = testfields::sqrt_m23();
  auto fb = build_factor_base(*f, 40);
  auto cfg = config(40);
  cfg.threads = 1;
  auto a = collect(*f, fb, cfg);
  cfg.threads = 4;
  auto b = collect(*f, fb, cfg);
  auto c = collect_serial(*f, fb, cfg);
  CHECK(same(a, b));
  CHECK(same(a, c));
}

TEST_CASE("resume matches a fresh run") {
  auto f = testfields::sqrt_m5();
  auto fb = build_factor_base(*f, 40);
  auto cfg = config(40);
  cfg.multiplier_K = 1;
  auto first = collect(*f, fb, cfg);
  cfg.multiplier_K = 4;
  auto resumed = collect(*f, fb, cfg, first);
  auto fresh = collect(*f, fb, cfg);
  CHECK(same(resumed, fresh));
  CHECK(class_group_from_relations(resumed.dense()).group.class_number == 2);
}

TEST_CASE("stalled collection reports diagnostics") {
  auto qi = testfields::gaussian();
  auto fb = build_factor_base(*qi, 10);
  auto cfg = config(10);
  cfg.multiplier_K = 1000;
  cfg.max_trials = 128;
  try {
    collect(*qi, fb, cfg);
    FAIL("expected Stalled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Stalled);
    CHECK(std::string(e.what()).find("bach rank") != std::string::npos);
  }
}
