#include "clgrp/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "clgrp/error.hpp"

namespace clgrp {

namespace {

template <class T>
void check_range(const std::optional<T>& v, T lo, T hi, const char* name) {
  if (v && (*v < lo || *v > hi))
    throw Error(ErrorCode::InputError, std::string(name) + " must lie in [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
}

}  // namespace

void validate(const RunConfig& cfg) {
  check_range<std::uint64_t>(cfg.B, 2, kMaxBound, "B");
  check_range(cfg.beta, 2, kMaxBlock, "beta");
  check_range(cfg.k, 1, 64, "k");
  check_range(cfg.A, 1, 64, "A");
  check_range(cfg.K, 1, 1024, "K");
  check_range<std::uint64_t>(cfg.prime_bound, 2, 100000000, "prime bound");
  check_range<mpfr_prec_t>(cfg.precision, 32, 65536, "precision");
  if (cfg.threads < 0) throw Error(ErrorCode::InputError, "threads must be >= 0");
  if (!(cfg.omega >= 2 && cfg.omega <= 3)) throw Error(ErrorCode::InputError, "omega must lie in [2, 3]");
  if (cfg.max_rounds < 0) throw Error(ErrorCode::InputError, "max rounds must be >= 0");
}

ClassGroupResult run_compute(const NumberField& field, const RunConfig& cfg) {
  validate(cfg);
  auto start = std::chrono::steady_clock::now();
  ClassGroupResult out;

  std::optional<PlanMode> plan_mode;
  if (cfg.mode == CollectMode::Cheon) plan_mode = PlanMode::Cheon;
  out.plan = select_params(field, cfg.omega, plan_mode);

  std::uint64_t bound = cfg.B.value_or(0);
  if (!cfg.B) {
    Integer bach = bach_bound(field);
    std::uint64_t b = bach > Integer(static_cast<unsigned long>(kMaxBound)) ? kMaxBound : bach.get_ui();
    bound = std::max(out.plan.B, b);
  }
  FactorBase fb = build_factor_base(field, bound);
  out.factor_base_size = fb.size();
  out.bach_prefix = fb.bach_prefix;

  CollectionConfig cc;
  cc.mode = cfg.mode;
  cc.bound_B = bound;
  cc.rng_seed = cfg.seed;
  cc.k = std::min<int>(cfg.k.value_or(3), static_cast<int>(fb.size()));
  cc.A = cfg.A.value_or(3);
  cc.beta = std::clamp(cfg.beta.value_or(out.plan.beta_block), 2, std::max(2, field.degree()));
  cc.multiplier_K = cfg.K.value_or(2);
  cc.threads = cfg.threads;
  cc.max_trials = cfg.max_trials;
  cc.progress = cfg.progress;

  std::uint64_t prime_bound = cfg.prime_bound.value_or(default_prime_bound(field));
  out.analytic = analytic_data(field, prime_bound, cfg.threads);

  std::optional<RelationMatrix> resume;
  for (int round = 0; round <= cfg.max_rounds; ++round) {
    if (round > 0) cc.multiplier_K *= 2;
    RelationMatrix rel = collect(field, fb, cc, std::move(resume));
    IntMatrix dense = rel.dense();
    ClassGroupReport cg = class_group_from_relations(dense);

    RoundRecord rec;
    rec.multiplier_K = cc.multiplier_K;
    rec.relations = rel.rows.size();
    rec.class_number = cg.group.class_number;

    Interval reg(Integer(1), field.precision());
    bool have_reg = true;
    if (field.unit_rank() > 0) {
      try {
        reg = regulator_from_kernel(field, left_kernel(dense), rel).value;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroVolume) throw;
        have_reg = false;
        rec.note = "units found so far span a lower-rank lattice";
      }
    }

    out.group = cg.group;
    out.regulator = reg;
    if (have_reg) {
      out.verification = verify(cg.group.class_number, reg, out.analytic, field);
      rec.ratio = out.verification.value();
      rec.verdict = out.verification.verdict;
    } else {
      out.verification = Verification{};
      rec.verdict = Verdict::Reject;
    }
    out.rounds.push_back(rec);
    out.relations = std::move(rel);
    if (rec.verdict == Verdict::Accept) break;
    resume = out.relations;
  }
  out.collection = cc;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ClassGroupResult run_compute(const RunConfig& cfg) {
  FieldSpec spec = read_field_spec(cfg.field_path);
  if (cfg.precision) spec.precision = *cfg.precision;
  FieldPtr field = build_field(spec);
  return run_compute(*field, cfg);
}

json to_json(const ClassGroupResult& r, const NumberField& field, bool with_timing) {
  json rounds = json::array();
  for (const auto& x : r.rounds) {
    json j = {{"K", x.multiplier_K},
              {"relations", x.relations},
              {"class_number", to_decimal(x.class_number)},
              {"ratio", x.ratio},
              {"verdict", to_string(x.verdict)}};
    if (!x.note.empty()) j["note"] = x.note;
    rounds.push_back(j);
  }
  const auto& c = r.collection;
  json config = {{"mode", to_string(c.mode)},
                 {"seed", c.rng_seed},
                 {"B", c.bound_B},
                 {"beta", c.beta},
                 {"k", c.k},
                 {"A", c.A},
                 {"K", c.multiplier_K},
                 {"prime_bound", r.analytic.prime_bound},
                 {"precision", field.precision()}};
  json stats = to_json(r.relations.stats);
  stats["relations"] = r.relations.rows.size();
  stats["columns"] = r.relations.columns();
  stats["aux_columns"] = r.relations.aux.size();
  stats["factor_base"] = r.factor_base_size;
  stats["bach_prefix"] = r.bach_prefix;
  json j = {{"field", field_to_json(field)},
            {"group", to_json(r.group)},
            {"class_number", to_decimal(r.group.class_number)},
            {"regulator", decimal_string(r.regulator)},
            {"ratio", r.verification.value()},
            {"verdict", to_string(r.verification.verdict)},
            {"verification", verification_json(r.verification, r.analytic, r.regulator)},
            {"rounds", rounds},
            {"statistics", stats},
            {"plan", to_json(r.plan)},
            {"config", config}};
  if (with_timing) j["timing"] = {{"wall_seconds", r.wall_seconds}, {"threads", c.threads}};
  return j;
}

}  // namespace clgrp
