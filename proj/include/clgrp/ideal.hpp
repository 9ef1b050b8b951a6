#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "clgrp/field.hpp"
#include "clgrp/lattice.hpp"

namespace clgrp {

/// Integral ideal as an upper-triangular column HNF over the integral basis.
struct Ideal {
  IntMatrix hnf;
  Integer norm;

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.hnf == b.hnf; }
};

struct PrimeIdeal {
  std::uint64_t p = 0;
  ModPoly gen_poly;   // monic irreducible factor of T mod p
  int ram_e = 1;
  int res_f = 1;
  Integer norm;       // p^f
  IntMatrix hnf_basis;
  IntVector alpha;    // second generator g(theta) over the integral basis
  IntVector beta;     // p * P^{-1} = (p, beta)

  Ideal ideal() const { return {hnf_basis, norm}; }
};

struct FactorBase {
  std::uint64_t bound_B = 0;
  std::vector<PrimeIdeal> primes;  // sorted by norm
  std::size_t bach_prefix = 0;     // primes of norm <= ceil(12 log^2 |disc|)
  Integer bach_bound;
  std::map<std::uint64_t, std::vector<std::size_t>> by_p;
  double landau_ratio = 0;  // |B| / (B / log B)
  bool landau_in_band = true;

  std::size_t size() const { return primes.size(); }
};

/// Primes above p via Dedekind-Kummer; p must not divide the index.
std::vector<PrimeIdeal> factor_prime(std::uint64_t p, const NumberField& field);

/// All prime ideals of norm <= B. The Landau band is advisory.
FactorBase build_factor_base(const NumberField& field, std::uint64_t bound, double landau_band = 0.5);

Integer bach_bound(const NumberField& field);

Ideal unit_ideal(const NumberField& field);
/// O_K-ideal generated by integral elements (coordinates over the integral basis).
Ideal ideal_from_generators(const NumberField& field, const std::vector<IntVector>& gens);
Ideal principal_ideal(const NumberField& field, const AlgebraicNumber& x);
Ideal multiply(const NumberField& field, const Ideal& a, const Ideal& b);
Ideal multiply_prime(const NumberField& field, const Ideal& a, const PrimeIdeal& p);
Ideal ideal_from_power_product(const NumberField& field, const FactorBase& fb,
                               const std::vector<std::size_t>& indices, const std::vector<int>& exponents);

/// The integral ideal b with <x> = a * b, where a = prod P_i^{e_i} and x in a.
Ideal cofactor_ideal(const NumberField& field, const AlgebraicNumber& x, const std::vector<const PrimeIdeal*>& primes,
                     const std::vector<int>& exponents);

bool contains(const Ideal& a, const IntVector& x);

int valuation(const NumberField& field, const Ideal& a, const PrimeIdeal& p);
int valuation(const NumberField& field, const AlgebraicNumber& x, const PrimeIdeal& p);

/// Columns round(2^s sigma(basis element)) with the rounding error certified below 1/4.
LatticeBasis ideal_lattice(const NumberField& field, const Ideal& a, long scale_bits);

/// Dense exponent vector over the factor base when the ideal factors over it.
std::optional<std::vector<int>> is_smooth_ideal(const NumberField& field, const Ideal& a, const FactorBase& fb);

}  // namespace clgrp
