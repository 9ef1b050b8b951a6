#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "clgrp/error.hpp"
#include "clgrp/io.hpp"
#include "clgrp/lattice.hpp"
#include "clgrp/pipeline.hpp"

using namespace clgrp;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitFailure = 1;
constexpr int kExitReject = 2;
constexpr int kExitStalled = 3;
constexpr int kExitInput = 4;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Stalled:
      return kExitStalled;
    case ErrorCode::InputError:
    case ErrorCode::NonMonic:
    case ErrorCode::Reducible:
    case ErrorCode::BasisNotUnimodularScaling:
    case ErrorCode::DegreeOne:
    case ErrorCode::DomainTooSmall:
    case ErrorCode::AlphaOrder:
    case ErrorCode::EmptyFactorBase:
    case ErrorCode::DimensionCap:
    case ErrorCode::IndexDivisor:
      return kExitInput;
    default:
      return kExitFailure;
  }
}

// Writes to --out when given, standard output otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::InputError, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Options {
  std::string field;
  std::string mode = "plain";
  std::uint64_t seed = 1;
  mpfr_prec_t precision = 0;
  std::uint64_t B = 0;
  int beta = 0, k = 0, A = 0, K = 0;
  std::uint64_t prime_bound = 0;
  int threads = 0;
  std::string out;
  double omega = kDefaultOmega;
  long max_trials = 1000000;
  int rounds = kMaxRounds;
};

void add_run_flags(CLI::App* app, Options& o) {
  app->add_option("field", o.field, "field description (JSON)")->required();
  app->add_option("--mode", o.mode, "plain | multi | cheon")->check(CLI::IsMember({"plain", "multi", "cheon"}));
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--precision", o.precision, "embedding precision in bits");
  app->add_option("--B", o.B, "factor base bound");
  app->add_option("--beta", o.beta, "BKZ block size");
  app->add_option("--k", o.k, "primes per sampled ideal");
  app->add_option("--A", o.A, "largest sampled exponent");
  app->add_option("--K", o.K, "relations per column before the first check");
  app->add_option("--threads", o.threads, "worker threads (0: OpenMP default)");
  app->add_option("--max-trials", o.max_trials, "give up after this many trials");
  app->add_option("--out", o.out, "output file");
}

RunConfig to_config(const Options& o) {
  RunConfig cfg;
  cfg.field_path = o.field;
  cfg.mode = parse_mode(o.mode);
  cfg.seed = o.seed;
  if (o.precision) cfg.precision = o.precision;
  if (o.B) cfg.B = o.B;
  if (o.beta) cfg.beta = o.beta;
  if (o.k) cfg.k = o.k;
  if (o.A) cfg.A = o.A;
  if (o.K) cfg.K = o.K;
  if (o.prime_bound) cfg.prime_bound = o.prime_bound;
  cfg.threads = o.threads;
  cfg.output_path = o.out;
  cfg.omega = o.omega;
  cfg.max_trials = o.max_trials;
  cfg.max_rounds = o.rounds;
  return cfg;
}

FieldPtr field_of(const Options& o) {
  FieldSpec spec = read_field_spec(o.field);
  if (o.precision) spec.precision = o.precision;
  return build_field(spec);
}

void progress_line(const RelationMatrix& m) {
  std::cerr << "trials " << m.stats.trials << " hits " << m.stats.hits << " relations " << m.rows.size()
            << " bach_rank " << m.bach_rank << " rank " << m.full_rank << "/" << m.nonzero_columns << '\n';
}

int cmd_compute(const Options& o, bool quiet) {
  RunConfig cfg = to_config(o);
  if (!quiet) cfg.progress = progress_line;
  FieldSpec spec = read_field_spec(cfg.field_path);
  if (cfg.precision) spec.precision = *cfg.precision;
  FieldPtr field = build_field(spec);
  ClassGroupResult r = run_compute(*field, cfg);
  Output out(o.out);
  out.stream() << to_json(r, *field).dump(2) << '\n';
  return r.verification.verdict == Verdict::Accept ? kExitAccept : kExitReject;
}

int cmd_factorbase(const Options& o) {
  FieldPtr field = field_of(o);
  std::uint64_t bound = o.B;
  if (!bound) {
    Integer bach = bach_bound(*field);
    bound = bach > Integer(static_cast<unsigned long>(kMaxBound)) ? kMaxBound : bach.get_ui();
  }
  FactorBase fb = build_factor_base(*field, bound);
  Output out(o.out);
  write_factor_base(out.stream(), fb);
  std::cerr << fb.size() << " primes, bach prefix " << fb.bach_prefix << ", landau ratio " << fb.landau_ratio
            << '\n';
  return kExitAccept;
}

int cmd_collect(const Options& o) {
  FieldPtr field = field_of(o);
  RunConfig rc = to_config(o);
  validate(rc);
  PlanReport plan = select_params(*field, o.omega, rc.mode == CollectMode::Cheon ? std::optional(PlanMode::Cheon)
                                                                                   : std::nullopt);
  std::uint64_t bound = o.B;
  if (!bound) {
    Integer bach = bach_bound(*field);
    bound = std::max(plan.B, bach > Integer(static_cast<unsigned long>(kMaxBound)) ? kMaxBound : bach.get_ui());
  }
  FactorBase fb = build_factor_base(*field, bound);
  CollectionConfig cc;
  cc.mode = rc.mode;
  cc.bound_B = bound;
  cc.rng_seed = o.seed;
  cc.k = std::min<int>(o.k ? o.k : 3, static_cast<int>(fb.size()));
  cc.A = o.A ? o.A : 3;
  cc.beta = std::clamp(o.beta ? o.beta : plan.beta_block, 2, std::max(2, field->degree()));
  cc.multiplier_K = o.K ? o.K : 2;
  cc.threads = o.threads;
  cc.max_trials = o.max_trials;
  cc.progress = progress_line;
  RelationMatrix m = collect(*field, fb, cc);
  Output out(o.out);
  write_relations(out.stream(), m);
  return kExitAccept;
}

std::string slurp_or_stdin(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int cmd_reduce(const std::string& path, int beta, const std::string& out_path) {
  std::istringstream in(slurp_or_stdin(path));
  IntMatrix rows = read_matrix(in);
  LatticeBasis b{rows.transpose(), 0, std::nullopt};
  auto [reduced, report] = bkz(b, beta);
  Output out(out_path);
  write_matrix(out.stream(), reduced.basis.transpose());
  std::cerr << "block " << report.block_size_beta << " tours " << report.tours << " first norm bound "
            << (report.bound_holds ? "holds" : "VIOLATED") << '\n';
  return report.bound_holds ? kExitAccept : kExitFailure;
}

int cmd_params(const Options& o, const std::string& mode) {
  FieldPtr field = field_of(o);
  std::optional<PlanMode> m;
  if (!mode.empty()) m = parse_plan_mode(mode);
  PlanReport p = select_params(*field, o.omega, m);
  Output out(o.out);
  out.stream() << to_json(p).dump(2) << '\n';
  return kExitAccept;
}

int cmd_classify(const Options& o, double n0, double d0) {
  FieldPtr field = field_of(o);
  Output out(o.out);
  out.stream() << to_json(classify_D(*field, n0, d0)).dump(2) << '\n';
  return kExitAccept;
}

Interval parse_interval(const std::string& s, mpfr_prec_t prec) {
  Real lo(prec), hi(prec);
  if (mpfr_set_str(lo.get(), s.c_str(), 10, MPFR_RNDD) != 0 || mpfr_set_str(hi.get(), s.c_str(), 10, MPFR_RNDU) != 0)
    throw Error(ErrorCode::InputError, "not a decimal number: " + s);
  // The last printed digit is uncertain.
  auto dot = s.find('.');
  long digits = dot == std::string::npos ? 0 : static_cast<long>(s.size() - dot - 1);
  Real ulp(std::pow(10.0, -static_cast<double>(digits)), prec);
  return Interval(lo, hi).inflate(ulp);
}

int cmd_verify(const Options& o, const std::string& h, const std::string& reg) {
  FieldPtr field = field_of(o);
  RunConfig rc = to_config(o);
  validate(rc);
  std::uint64_t bound = o.prime_bound ? o.prime_bound : default_prime_bound(*field);
  AnalyticData a = analytic_data(*field, bound, o.threads);
  Interval r = reg.empty() ? Interval(Integer(1), field->precision()) : parse_interval(reg, field->precision());
  Verification v = verify(parse_integer(h), r, a, *field);
  Output out(o.out);
  out.stream() << verification_json(v, a, r).dump(2) << '\n';
  return v.verdict == Verdict::Accept ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class groups and regulators of number fields by lattice-reduction index calculus"};
  app.require_subcommand(1);
  Options o;
  bool quiet = false;

  auto* compute = app.add_subcommand("compute", "class group, regulator and analytic check");
  add_run_flags(compute, o);
  compute->add_option("--prime-bound", o.prime_bound, "Euler product cutoff");
  compute->add_option("--omega", o.omega, "matrix multiplication exponent for the parameter plan");
  compute->add_option("--rounds", o.rounds, "retries after a rejected check");
  compute->add_flag("--quiet", quiet, "no progress on standard error");

  auto* fbase = app.add_subcommand("factorbase", "prime ideals of norm up to B as JSON lines");
  fbase->add_option("field", o.field)->required();
  fbase->add_option("--B", o.B, "norm bound (default: Bach bound)");
  fbase->add_option("--precision", o.precision);
  fbase->add_option("--out", o.out);

  auto* coll = app.add_subcommand("collect", "relation matrix as JSON lines");
  add_run_flags(coll, o);
  coll->add_option("--omega", o.omega);

  std::string matrix_path;
  int reduce_beta = 2;
  auto* reduce = app.add_subcommand("reduce", "BKZ on the rows of an integer matrix");
  reduce->add_option("matrix", matrix_path, "matrix file, '-' for standard input")->required();
  reduce->add_option("--beta", reduce_beta, "block size")->check(CLI::Range(2, kMaxBlock));
  reduce->add_option("--out", o.out);

  std::string plan_mode;
  auto* params = app.add_subcommand("params", "factor base bound, block size and predicted cost");
  params->add_option("field", o.field)->required();
  params->add_option("--omega", o.omega)->check(CLI::Range(2.0, 3.0));
  params->add_option("--mode", plan_mode)->check(CLI::IsMember({"medium", "large", "cheon"}));
  params->add_option("--out", o.out);

  double n0 = 2, d0 = 1;
  auto* classify = app.add_subcommand("classify", "degree and height exponents");
  classify->add_option("field", o.field)->required();
  classify->add_option("--n0", n0);
  classify->add_option("--d0", d0);
  classify->add_option("--out", o.out);

  std::string h = "1", reg;
  auto* ver = app.add_subcommand("verify", "analytic class number formula check");
  ver->add_option("field", o.field)->required();
  ver->add_option("--class-number", h, "class number");
  ver->add_option("--regulator", reg, "regulator as a decimal");
  ver->add_option("--prime-bound", o.prime_bound);
  ver->add_option("--threads", o.threads);
  ver->add_option("--precision", o.precision);
  ver->add_option("--out", o.out);

  double u = 0;
  auto* rho = app.add_subcommand("rho", "Dickman rho");
  rho->add_option("u", u)->required();

  double la = 0, lc = 0;
  std::string ln;
  auto* lnot = app.add_subcommand("lnot", "L_N(alpha, c) without the o(1)");
  lnot->add_option("alpha", la)->required();
  lnot->add_option("c", lc)->required();
  lnot->add_option("N", ln)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*compute) return cmd_compute(o, quiet);
    if (*fbase) return cmd_factorbase(o);
    if (*coll) return cmd_collect(o);
    if (*reduce) return cmd_reduce(matrix_path, reduce_beta, o.out);
    if (*params) return cmd_params(o, plan_mode);
    if (*classify) return cmd_classify(o, n0, d0);
    if (*ver) return cmd_verify(o, h, reg);
    if (*rho) {
      std::printf("%.17g\n", dickman_rho(u));
      return kExitAccept;
    }
    if (*lnot) {
      Integer n = parse_integer(ln);
      std::printf("%.17g\n", eval_L(LExpr{la, lc, false}, n));
      return kExitAccept;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
