#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clgrp/analytic.hpp"
#include "clgrp/io.hpp"
#include "clgrp/linalg.hpp"
#include "clgrp/params.hpp"
#include "clgrp/relations.hpp"

namespace clgrp {

constexpr double kDefaultOmega = 2.3728639;
constexpr int kMaxRounds = 5;

struct RunConfig {
  std::string field_path;
  CollectMode mode = CollectMode::Plain;
  std::uint64_t seed = 1;
  std::optional<mpfr_prec_t> precision;
  std::optional<std::uint64_t> B;
  std::optional<int> beta;
  std::optional<int> k;
  std::optional<int> A;
  std::optional<int> K;
  std::optional<std::uint64_t> prime_bound;
  int threads = 0;
  std::string output_path;
  double omega = kDefaultOmega;
  int max_rounds = kMaxRounds;
  long max_trials = 1000000;
  std::function<void(const RelationMatrix&)> progress;
};

/// Rejects overrides outside the desk-scale caps.
void validate(const RunConfig& cfg);

struct RoundRecord {
  int multiplier_K = 0;
  std::size_t relations = 0;
  Integer class_number;
  double ratio = 0;
  Verdict verdict = Verdict::Reject;
  std::string note;
};

struct ClassGroupResult {
  GroupStructure group;
  Interval regulator;
  Verification verification;
  AnalyticData analytic;
  PlanReport plan;
  CollectionConfig collection;  // as used in the final round
  RelationMatrix relations;
  std::vector<RoundRecord> rounds;
  std::size_t factor_base_size = 0;
  std::size_t bach_prefix = 0;
  double wall_seconds = 0;
};

ClassGroupResult run_compute(const NumberField& field, const RunConfig& cfg);
ClassGroupResult run_compute(const RunConfig& cfg);

/// Result document. Timing fields live under "timing" and are omitted on request.
json to_json(const ClassGroupResult& r, const NumberField& field, bool with_timing = true);

}  // namespace clgrp
