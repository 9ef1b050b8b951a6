#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "clgrp/ideal.hpp"

namespace clgrp {

enum class CollectMode { Plain, Multi, Cheon };

std::string to_string(CollectMode m);
CollectMode parse_mode(const std::string& s);

struct RelationMatrix;

struct CollectionConfig {
  int k = 3;
  int A = 3;
  int beta = 2;
  std::uint64_t bound_B = 0;
  int multiplier_K = 2;
  std::uint64_t rng_seed = 1;
  CollectMode mode = CollectMode::Plain;
  Integer presmooth_bound = 0;  // cheon only; 0 selects |disc|
  long scale_bits = 128;
  int threads = 0;              // 0 keeps the OpenMP default
  long max_trials = 1000000;
  int multi_box = 1;
  std::function<void(const RelationMatrix&)> progress;  // called after every batch
};

struct Provenance {
  long trial = -1;
  std::vector<std::size_t> indices;
  std::vector<int> exponents;
  std::string mode;
};

/// <generator> = prod P_j^{e_j}. Columns >= |fb| refer to auxiliary primes.
struct Relation {
  std::vector<std::pair<std::size_t, int>> exponents;  // sorted, nonzero
  AlgebraicNumber generator;
  Provenance provenance;
};

struct CollectionStats {
  long trials = 0;
  long hits = 0;
  long eq5_checked = 0;
  long eq5_violations = 0;
  long index_divisor_skips = 0;
  long cheon_fallbacks = 0;
  double predicted_hit_rate = 0;

  double hit_rate() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
};

struct RelationMatrix {
  std::size_t base_size = 0;
  std::vector<PrimeIdeal> aux;  // B~-smooth primes above B (cheon mode)
  std::vector<Relation> rows;
  std::size_t bach_rank = 0;
  std::size_t full_rank = 0;
  std::size_t nonzero_columns = 0;
  CollectionStats stats;

  std::size_t columns() const { return base_size + aux.size(); }
  IntMatrix dense() const;
  const PrimeIdeal& prime(const FactorBase& fb, std::size_t col) const {
    return col < base_size ? fb.primes[col] : aux[col - base_size];
  }
};

/// One uniform draw: k distinct primes, exponents uniform in [1, A].
struct SampledIdeal {
  Ideal ideal;
  std::vector<std::size_t> indices;
  std::vector<int> exponents;
};
SampledIdeal sample_ideal(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg,
                          std::mt19937_64& rng);

/// Auxiliary primes are returned in discovery order for the caller to number.
struct TrialOutput {
  std::vector<Relation> relations;  // aux columns numbered base_size + position in new_aux
  std::vector<PrimeIdeal> new_aux;
  bool eq5_checked = false;
  bool eq5_ok = true;
  bool index_divisor = false;
  bool cheon_fallback = false;
  long candidates = 0;  // multi mode: combinations tested beyond b1
};

/// Natural log of beta^{n(n-1)/(2(beta-1))} sqrt|disc|.
double log_eq5_bound(const NumberField& field, int beta);

TrialOutput derive_relation(const NumberField& field, const FactorBase& fb, const SampledIdeal& s,
                            const CollectionConfig& cfg);
TrialOutput derive_relation_multi(const NumberField& field, const FactorBase& fb, const SampledIdeal& s,
                                  const CollectionConfig& cfg);
TrialOutput derive_relation_cheon(const NumberField& field, const FactorBase& fb, const SampledIdeal& s,
                                  const CollectionConfig& cfg);

/// Per-trial generator: independent of thread count and scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);
TrialOutput run_trial(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg, long trial);

/// Exact check of the norm identity and every involved valuation.
bool verify_relation(const NumberField& field, const FactorBase& fb, const RelationMatrix& m, const Relation& r);

/// Collect until rows >= K * columns and the Bach prefix and all used columns have full
/// rank. Passing a previous matrix resumes at its trial counter. Throws Stalled after
/// cfg.max_trials total trials.
RelationMatrix collect(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg,
                       std::optional<RelationMatrix> resume = std::nullopt);
RelationMatrix collect_serial(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg,
                              std::optional<RelationMatrix> resume = std::nullopt);

}  // namespace clgrp
