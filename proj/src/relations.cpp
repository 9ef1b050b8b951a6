#include "clgrp/relations.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <sstream>

#include "clgrp/error.hpp"
#include "clgrp/linalg.hpp"
#include "clgrp/smoothness.hpp"

namespace clgrp {

std::string to_string(CollectMode m) {
  switch (m) {
    case CollectMode::Plain: return "plain";
    case CollectMode::Multi: return "multi";
    case CollectMode::Cheon: return "cheon";
  }
  return "plain";
}

CollectMode parse_mode(const std::string& s) {
  if (s == "plain") return CollectMode::Plain;
  if (s == "multi") return CollectMode::Multi;
  if (s == "cheon") return CollectMode::Cheon;
  throw Error(ErrorCode::InputError, "unknown mode '" + s + "'");
}

IntMatrix RelationMatrix::dense() const {
  IntMatrix m(rows.size(), columns());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, e] : rows[i].exponents) m(i, c) = e;
  return m;
}

namespace {

constexpr std::size_t kBatch = 64;
constexpr std::uint64_t kRankPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kRankPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_mod(int e) {
  return e >= 0 ? static_cast<std::uint64_t>(e) : kRankPrime - static_cast<std::uint64_t>(-static_cast<long>(e));
}

// Incremental row echelon form over GF(2^61 - 1) on sparse rows.
class RankTracker {
 public:
  bool add(std::map<std::size_t, std::uint64_t> row) {
    while (!row.empty()) {
      auto [lead, v] = *row.begin();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        std::uint64_t inv = powmod(v, kRankPrime - 2);
        for (auto& [c, x] : row) x = mulmod(x, inv);
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      for (const auto& [c, x] : it->second) {
        std::uint64_t sub = mulmod(v, x);
        auto& slot = row[c];
        slot = slot >= sub ? slot - sub : slot + kRankPrime - sub;
        if (slot == 0) row.erase(c);
      }
    }
    return false;
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, std::map<std::size_t, std::uint64_t>> pivots_;
};

using SparseExp = std::vector<std::pair<std::size_t, int>>;

SparseExp sparse_sum(const std::vector<int>& dense, const std::vector<std::size_t>& idx, const std::vector<int>& e) {
  std::map<std::size_t, int> acc;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) acc[i] += dense[i];
  for (std::size_t t = 0; t < idx.size(); ++t) acc[idx[t]] += e[t];
  SparseExp out;
  for (const auto& [c, v] : acc)
    if (v) out.emplace_back(c, v);
  return out;
}

bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b) { return a.p == b.p && a.gen_poly == b.gen_poly; }

// Relation check against an explicit auxiliary list.
bool verify_with(const NumberField& field, const FactorBase& fb, std::size_t base, const std::vector<PrimeIdeal>& aux,
                 const Relation& r) {
  if (!r.generator.is_integral() || r.generator.is_zero()) return false;
  auto prime_at = [&](std::size_t c) -> const PrimeIdeal& { return c < base ? fb.primes[c] : aux[c - base]; };
  Integer expect = 1;
  for (const auto& [c, e] : r.exponents) {
    if (e < 0 || c >= base + aux.size()) return false;
    for (int k = 0; k < e; ++k) expect *= prime_at(c).norm;
  }
  Rational nx = abs(norm_of(r.generator));
  if (nx != Rational(expect)) return false;
  for (const auto& [c, e] : r.exponents)
    if (valuation(field, r.generator, prime_at(c)) != e) return false;
  return true;
}

struct Reduced {
  IntMatrix gram;  // reduced Gram
  IntMatrix elems; // columns: reduced basis elements over the integral basis
  ReductionReport report;
};

Reduced reduce_ideal(const NumberField& field, const Ideal& a, const CollectionConfig& cfg) {
  LatticeBasis lb = ideal_lattice(field, a, cfg.scale_bits);
  int beta = std::clamp(cfg.beta, 2, std::max(2, field.degree()));
  Reduced out;
  GramReduction g = bkz_gram(gram_of(lb.basis), beta, &out.report);
  out.gram = std::move(g.gram);
  out.elems = a.hnf * g.U;
  return out;
}

struct Tail {
  std::optional<Relation> relation;
  bool index_divisor = false;
  Integer cofactor_norm;
};

// Factor <x> / a over the base. Exponents of a come from the sample.
Tail relation_from_element(const NumberField& field, const FactorBase& fb, const SampledIdeal& s, const IntVector& x) {
  Tail t;
  std::vector<const PrimeIdeal*> ps;
  for (std::size_t i : s.indices) ps.push_back(&fb.primes[i]);
  AlgebraicNumber xv = field.from_integers(x);
  Ideal b = cofactor_ideal(field, xv, ps, s.exponents);
  t.cofactor_norm = b.norm;
  std::optional<std::vector<int>> e;
  try {
    e = is_smooth_ideal(field, b, fb);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::IndexDivisor) throw;
    t.index_divisor = true;
    return t;
  }
  if (!e) return t;
  t.relation = Relation{sparse_sum(*e, s.indices, s.exponents), xv, {}};
  return t;
}

Provenance provenance_of(const SampledIdeal& s, const std::string& mode) { return {-1, s.indices, s.exponents, mode}; }

void check_eq5(const NumberField& field, const CollectionConfig& cfg, const Integer& nb, TrialOutput& out) {
  out.eq5_checked = true;
  out.eq5_ok = log_abs(nb) <= log_eq5_bound(field, cfg.beta) + 1e-9;
}

IntVector column(const IntMatrix& m, std::size_t j) {
  IntVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

}  // namespace

double log_eq5_bound(const NumberField& field, int beta) {
  const int n = field.degree();
  beta = std::clamp(beta, 2, std::max(2, n));
  return n * (n - 1) / (2.0 * (beta - 1)) * std::log(static_cast<double>(beta)) + 0.5 * field.log_abs_disc();
}

SampledIdeal sample_ideal(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg,
                          std::mt19937_64& rng) {
  if (fb.size() == 0) throw Error(ErrorCode::EmptyFactorBase, "cannot sample from an empty factor base");
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.k)), fb.size());
  std::vector<std::size_t> pool(fb.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  SampledIdeal s;
  std::uniform_int_distribution<int> ex(1, std::max(1, cfg.A));
  for (std::size_t t = 0; t < k; ++t) {
    std::uniform_int_distribution<std::size_t> pick(t, pool.size() - 1);
    std::swap(pool[t], pool[pick(rng)]);
    s.indices.push_back(pool[t]);
    s.exponents.push_back(ex(rng));
  }
  s.ideal = ideal_from_power_product(field, fb, s.indices, s.exponents);
  return s;
}

TrialOutput derive_relation(const NumberField& field, const FactorBase& fb, const SampledIdeal& s,
                            const CollectionConfig& cfg) {
  TrialOutput out;
  Reduced red = reduce_ideal(field, s.ideal, cfg);
  IntVector x = column(red.elems, shortest_index(red.gram));
  Tail t = relation_from_element(field, fb, s, x);
  check_eq5(field, cfg, t.cofactor_norm, out);
  out.index_divisor = t.index_divisor;
  if (t.relation && verify_with(field, fb, fb.size(), {}, *t.relation)) {
    t.relation->provenance = provenance_of(s, "plain");
    out.relations.push_back(std::move(*t.relation));
  }
  return out;
}

TrialOutput derive_relation_multi(const NumberField& field, const FactorBase& fb, const SampledIdeal& s,
                                  const CollectionConfig& cfg) {
  TrialOutput out;
  Reduced red = reduce_ideal(field, s.ideal, cfg);
  const std::size_t n = red.gram.rows();
  const std::size_t first = shortest_index(red.gram);
  const int box = std::max(1, cfg.multi_box);
  std::set<SparseExp> seen;

  auto try_element = [&](const IntVector& x, bool is_first) {
    Tail t = relation_from_element(field, fb, s, x);
    if (is_first) check_eq5(field, cfg, t.cofactor_norm, out);
    out.index_divisor = out.index_divisor || t.index_divisor;
    if (!t.relation || seen.count(t.relation->exponents)) return;
    if (!verify_with(field, fb, fb.size(), {}, *t.relation)) return;
    seen.insert(t.relation->exponents);
    t.relation->provenance = provenance_of(s, "multi");
    out.relations.push_back(std::move(*t.relation));
  };

  try_element(column(red.elems, first), true);
  const double log_bound = red.report.log_hermite_bound + 1e-9;
  IntVector c(n, Integer(-box));
  while (true) {
    // First nonzero coordinate positive: one of each +-c pair.
    auto lead = std::find_if(c.begin(), c.end(), [](const Integer& v) { return v != 0; });
    if (lead != c.end() && *lead > 0) {
      bool is_first = c[first] == 1;
      for (std::size_t i = 0; i < n && is_first; ++i)
        if (i != first && c[i] != 0) is_first = false;
      if (!is_first) {
        IntVector gc = mat_vec(red.gram, c);
        Integer q = dot(c, gc);
        if (0.5 * log_abs(q) <= log_bound) {
          ++out.candidates;
          try_element(mat_vec(red.elems, c), false);
        }
      }
    }
    std::size_t i = 0;
    while (i < n && c[i] == box) c[i++] = -box;
    if (i == n) break;
    c[i] += 1;
  }
  return out;
}

namespace {

// Columns of a trial: base primes by index, B~-smooth primes above B appended as auxiliaries.
struct CheonColumns {
  const FactorBase& fb;
  std::vector<PrimeIdeal> aux;

  std::size_t column(const PrimeIdeal& P) {
    if (P.norm <= fb.bound_B) {
      auto it = fb.by_p.find(P.p);
      if (it != fb.by_p.end())
        for (std::size_t idx : it->second)
          if (same_prime(fb.primes[idx], P)) return idx;
    }
    for (std::size_t j = 0; j < aux.size(); ++j)
      if (same_prime(aux[j], P)) return fb.size() + j;
    aux.push_back(P);
    return fb.size() + aux.size() - 1;
  }
};

enum class Factored { Ok, NotSmooth, IndexDivisor };

Factored factor_presmooth(const NumberField& field, const Ideal& b, std::uint64_t bt, CheonColumns& cols,
                          std::map<std::size_t, int>& exps) {
  if (b.norm == 1) return Factored::Ok;
  auto sp = smooth_part(b.norm, bt);
  if (!sp.smooth()) return Factored::NotSmooth;
  Integer rebuilt = 1;
  for (const auto& [p, mult] : sp.smooth_part) {
    std::vector<PrimeIdeal> above;
    try {
      above = factor_prime(p, field);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::IndexDivisor) throw;
      return Factored::IndexDivisor;
    }
    for (const auto& P : above) {
      int v = valuation(field, b, P);
      if (v == 0) continue;
      for (int k = 0; k < v; ++k) rebuilt *= P.norm;
      exps[cols.column(P)] += v;
    }
  }
  return rebuilt == b.norm ? Factored::Ok : Factored::NotSmooth;
}

SparseExp to_sparse(const std::map<std::size_t, int>& m) {
  SparseExp out;
  for (const auto& [c, v] : m)
    if (v) out.emplace_back(c, v);
  return out;
}

}  // namespace

TrialOutput derive_relation_cheon(const NumberField& field, const FactorBase& fb, const SampledIdeal& s,
                                  const CollectionConfig& cfg) {
  TrialOutput out;
  Reduced red = reduce_ideal(field, s.ideal, cfg);
  IntVector x = column(red.elems, shortest_index(red.gram));
  std::vector<const PrimeIdeal*> ps;
  for (std::size_t i : s.indices) ps.push_back(&fb.primes[i]);
  AlgebraicNumber xv = field.from_integers(x);
  Ideal b = cofactor_ideal(field, xv, ps, s.exponents);
  check_eq5(field, cfg, b.norm, out);

  Integer bt_full = cfg.presmooth_bound > 0 ? cfg.presmooth_bound : abs(field.discriminant());
  std::uint64_t bt = mpz_fits_ulong_p(bt_full.get_mpz_t()) ? bt_full.get_ui() : ~std::uint64_t{0};
  bt = std::max<std::uint64_t>(bt, fb.bound_B);
  CheonColumns cols{fb, {}};
  std::map<std::size_t, int> main_exp;
  for (std::size_t t = 0; t < s.indices.size(); ++t) main_exp[s.indices[t]] += s.exponents[t];
  Factored fm = factor_presmooth(field, b, bt, cols, main_exp);
  if (fm == Factored::IndexDivisor) out.index_divisor = true;
  if (fm != Factored::Ok) return out;
  std::vector<Relation> rels{Relation{to_sparse(main_exp), xv, provenance_of(s, "cheon")}};

  // Each large factor q of b gets its own relation <x_q> = q * c_q with c_q B~-smooth.
  const std::size_t first_level = cols.aux.size();
  const int beta = std::clamp(cfg.beta, 2, std::max(2, field.degree()));
  for (std::size_t j = 0; j < first_level; ++j) {
    const PrimeIdeal Q = cols.aux[j];
    LatticeBasis lb = ideal_lattice(field, Q.ideal(), cfg.scale_bits);
    IntVector coeffs;
    try {
      coeffs = cheon_reduce(lb, beta).coefficients;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DeterminantTooLarge) throw;
      out.cheon_fallback = true;
      GramReduction g = bkz_gram(gram_of(lb.basis), beta);
      coeffs = column(g.U, shortest_index(g.gram));
    }
    AlgebraicNumber xq = field.from_integers(mat_vec(Q.hnf_basis, coeffs));
    Ideal c = cofactor_ideal(field, xq, {&Q}, {1});
    std::map<std::size_t, int> e{{fb.size() + j, 1}};
    Factored fq = factor_presmooth(field, c, bt, cols, e);
    if (fq == Factored::IndexDivisor) out.index_divisor = true;
    if (fq == Factored::Ok) rels.push_back(Relation{to_sparse(e), xq, provenance_of(s, "cheon-aux")});
  }

  for (auto& r : rels)
    if (verify_with(field, fb, fb.size(), cols.aux, r)) out.relations.push_back(std::move(r));
  out.new_aux = std::move(cols.aux);
  return out;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

TrialOutput run_trial(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg, long trial) {
  auto rng = trial_rng(cfg.rng_seed, static_cast<std::uint64_t>(trial));
  SampledIdeal s = sample_ideal(field, fb, cfg, rng);
  TrialOutput out;
  switch (cfg.mode) {
    case CollectMode::Plain: out = derive_relation(field, fb, s, cfg); break;
    case CollectMode::Multi: out = derive_relation_multi(field, fb, s, cfg); break;
    case CollectMode::Cheon: out = derive_relation_cheon(field, fb, s, cfg); break;
  }
  for (auto& r : out.relations) r.provenance.trial = trial;
  return out;
}

bool verify_relation(const NumberField& field, const FactorBase& fb, const RelationMatrix& m, const Relation& r) {
  return verify_with(field, fb, m.base_size, m.aux, r);
}

namespace {

struct Collector {
  const NumberField& field;
  const FactorBase& fb;
  const CollectionConfig& cfg;
  RelationMatrix m;
  RankTracker bach, full;
  std::set<std::size_t> used;

  Collector(const NumberField& f, const FactorBase& b, const CollectionConfig& c, std::optional<RelationMatrix> resume)
      : field(f), fb(b), cfg(c) {
    if (resume) {
      m = std::move(*resume);
      std::vector<Relation> rows = std::move(m.rows);
      m.rows.clear();
      m.bach_rank = m.full_rank = m.nonzero_columns = 0;
      for (auto& r : rows) append(std::move(r));
    } else {
      m.base_size = fb.size();
      double lb = std::log(static_cast<double>(std::max<std::uint64_t>(fb.bound_B, 2)));
      double u = std::min(log_eq5_bound(field, cfg.beta) / lb, kDickmanCap);
      m.stats.predicted_hit_rate = dickman_rho(std::max(u, 0.0));
    }
  }

  void append(Relation r) {
    std::map<std::size_t, std::uint64_t> row, prefix;
    for (const auto& [c, e] : r.exponents) {
      row[c] = to_mod(e);
      if (c < fb.bach_prefix) prefix[c] = to_mod(e);
      used.insert(c);
    }
    if (!prefix.empty()) bach.add(std::move(prefix));
    if (!row.empty()) full.add(std::move(row));
    m.rows.push_back(std::move(r));
    m.bach_rank = bach.rank();
    m.full_rank = full.rank();
    m.nonzero_columns = used.size();
  }

  void merge(TrialOutput&& t) {
    ++m.stats.trials;
    if (!t.relations.empty()) ++m.stats.hits;
    if (t.eq5_checked) ++m.stats.eq5_checked;
    if (!t.eq5_ok) ++m.stats.eq5_violations;
    if (t.index_divisor) ++m.stats.index_divisor_skips;
    if (t.cheon_fallback) ++m.stats.cheon_fallbacks;
    std::vector<std::size_t> remap;
    for (auto& P : t.new_aux) {
      auto it = std::find_if(m.aux.begin(), m.aux.end(), [&](const PrimeIdeal& Q) { return same_prime(P, Q); });
      if (it == m.aux.end()) {
        remap.push_back(m.base_size + m.aux.size());
        m.aux.push_back(std::move(P));
      } else {
        remap.push_back(m.base_size + static_cast<std::size_t>(it - m.aux.begin()));
      }
    }
    for (auto& r : t.relations) {
      for (auto& [c, e] : r.exponents)
        if (c >= m.base_size) c = remap[c - m.base_size];
      std::sort(r.exponents.begin(), r.exponents.end());
      append(std::move(r));
    }
  }

  bool done() const {
    return m.rows.size() >= static_cast<std::size_t>(std::max(1, cfg.multiplier_K)) * m.columns() &&
           m.bach_rank == fb.bach_prefix && m.full_rank == m.nonzero_columns;
  }

  [[noreturn]] void stall() const {
    std::ostringstream os;
    os << "relation collection stalled after " << m.stats.trials << " trials: " << m.rows.size() << " relations, "
       << m.stats.hits << " hits (rate " << m.stats.hit_rate() << ", predicted " << m.stats.predicted_hit_rate
       << "), bach rank " << m.bach_rank << "/" << fb.bach_prefix << ", rank " << m.full_rank << "/"
       << m.nonzero_columns;
    throw Error(ErrorCode::Stalled, os.str());
  }

  template <class RunBatch>
  RelationMatrix run(RunBatch&& batch) {
    while (!done()) {
      if (m.stats.trials >= cfg.max_trials) stall();
      long start = m.stats.trials;
      long count = std::min<long>(static_cast<long>(kBatch), cfg.max_trials - start);
      std::vector<TrialOutput> outs(static_cast<std::size_t>(count));
      std::vector<std::exception_ptr> errs(static_cast<std::size_t>(count));
      batch(start, count, outs, errs);
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
      for (auto& o : outs) merge(std::move(o));
      if (cfg.progress) cfg.progress(m);
    }
    return std::move(m);
  }
};

}  // namespace

RelationMatrix collect(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg,
                       std::optional<RelationMatrix> resume) {
  Collector col(field, fb, cfg, std::move(resume));
  int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  return col.run([&](long start, long count, std::vector<TrialOutput>& outs, std::vector<std::exception_ptr>& errs) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) {
      try {
        outs[static_cast<std::size_t>(i)] = run_trial(field, fb, cfg, start + i);
      } catch (...) {
        errs[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  });
}

RelationMatrix collect_serial(const NumberField& field, const FactorBase& fb, const CollectionConfig& cfg,
                              std::optional<RelationMatrix> resume) {
  Collector col(field, fb, cfg, std::move(resume));
  return col.run([&](long start, long count, std::vector<TrialOutput>& outs, std::vector<std::exception_ptr>& errs) {
    for (long i = 0; i < count; ++i) {
      try {
        outs[static_cast<std::size_t>(i)] = run_trial(field, fb, cfg, start + i);
      } catch (...) {
        errs[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  });
}

}  // namespace clgrp
