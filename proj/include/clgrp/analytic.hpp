#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clgrp/field.hpp"
#include "clgrp/real.hpp"
#include "clgrp/relations.hpp"

namespace clgrp {

/// max(10^4, ceil(12 log^2 |disc|)).
std::uint64_t default_prime_bound(const NumberField& field);

/// Truncated Euler product for the residue of the Dedekind zeta function at s = 1.
/// Primes dividing the index are skipped and reported.
struct EulerProduct {
  Interval value;
  std::uint64_t prime_bound = 0;
  std::vector<std::uint64_t> skipped;
};
EulerProduct euler_residue(const NumberField& field, std::uint64_t prime_bound, int threads = 0);
EulerProduct euler_residue_serial(const NumberField& field, std::uint64_t prime_bound);

/// Local factor (1 - 1/p) / prod_{P | p} (1 - 1/N(P)) for p not dividing the index.
Rational euler_factor(const NumberField& field, std::uint64_t p);

/// Log embedding (d_i log |sigma_i(x)|), i = 1..r1+r2.
std::vector<Interval> log_embedding(const NumberField& field, const AlgebraicNumber& x, mpfr_prec_t bits);

struct RegulatorResult {
  Interval value;
  std::vector<std::vector<Interval>> basis;  // unit-log lattice basis
  mpfr_prec_t precision = 0;
};

/// Units prod x_j^{v_j} for each kernel vector v, reduced to a basis of the lattice they
/// span in log space. A multiple of the true regulator when the kernel under-generates.
RegulatorResult regulator_from_kernel(const NumberField& field, const std::vector<IntVector>& kernel,
                                      const std::vector<AlgebraicNumber>& generators);
RegulatorResult regulator_from_kernel(const NumberField& field, const std::vector<IntVector>& kernel,
                                      const RelationMatrix& relations);

/// Order of the torsion subgroup of O_K^*.
int count_roots_of_unity(const NumberField& field);

struct AnalyticData {
  Interval residue;
  std::uint64_t prime_bound = 0;
  std::vector<std::uint64_t> skipped;
  int w = 2;
  int unit_rank = 0;
};
AnalyticData analytic_data(const NumberField& field, std::uint64_t prime_bound, int threads = 0);

enum class Verdict { Accept, Reject };
std::string to_string(Verdict v);

struct Verification {
  Interval ratio;
  Verdict verdict = Verdict::Reject;

  double value() const { return ratio.mid().to_double(); }
};

/// ratio = 2^r1 (2 pi)^r2 h Reg / (w sqrt|disc| residue); ACCEPT iff it lies in (2^-1/2, 2^1/2).
Verification verify(const Integer& h, const Interval& regulator, const AnalyticData& analytic,
                    const NumberField& field);

}  // namespace clgrp
