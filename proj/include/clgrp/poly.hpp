#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "clgrp/bigint.hpp"

namespace clgrp {

/// Dense polynomial over Q, constant term first, no trailing zeros (zero polynomial is empty).
using QPoly = std::vector<Rational>;

void trim(QPoly& p);
int degree(const QPoly& p);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_scale(const QPoly& a, const Rational& c);
/// Quotient and remainder; b must be nonzero.
std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b);
QPoly poly_mod(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& a);
Rational evaluate(const QPoly& a, const Rational& x);
/// Resultant by the Euclidean recurrence over Q.
Rational resultant(const QPoly& a, const QPoly& b);

/// Count of distinct real roots by Sturm sign variations.
int count_real_roots(const QPoly& a);
/// Integer roots of a nonzero polynomial (isolated by Sturm bisection, then tested exactly).
std::vector<Integer> integer_roots(const QPoly& a);

/// Monic integer polynomial, constant term first.
struct IntPolynomial {
  std::vector<Integer> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool is_monic() const { return !coefficients.empty() && coefficients.back() == 1; }
  /// Largest absolute coefficient.
  Integer height() const;
  QPoly to_q() const;
};

/// Discriminant of a monic polynomial, (-1)^{n(n-1)/2} Res(T, T').
Integer discriminant(const IntPolynomial& t);

// --- polynomials over Z/p, p < 2^63 -----------------------------------------

using ModPoly = std::vector<std::uint64_t>;

struct ModField {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t reduce(const Integer& a) const;
};

void trim(ModPoly& a);
int degree(const ModPoly& a);
ModPoly mod_poly(const IntPolynomial& t, const ModField& f);
ModPoly make_monic(const ModPoly& a, const ModField& f);
ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModField& f);
ModPoly mod_sub(const ModPoly& a, const ModPoly& b, const ModField& f);
std::pair<ModPoly, ModPoly> mod_divmod(const ModPoly& a, const ModPoly& b, const ModField& f);
ModPoly mod_rem(const ModPoly& a, const ModPoly& b, const ModField& f);
ModPoly mod_gcd(ModPoly a, ModPoly b, const ModField& f);
ModPoly mod_derivative(const ModPoly& a, const ModField& f);
/// base^e mod m.
ModPoly mod_powmod(const ModPoly& base, const Integer& e, const ModPoly& m, const ModField& f);

struct ModFactor {
  ModPoly factor;  // monic irreducible
  int multiplicity;
};

/// Complete factorization of a nonzero polynomial over Z/p into monic irreducibles,
/// sorted by (degree, coefficients). Deterministic for a given input.
std::vector<ModFactor> factor_mod_p(const ModPoly& a, const ModField& f);

/// Degrees of the distinct irreducible factors (with repetition for distinct
/// factors of equal degree), via squarefree + distinct-degree factorization only.
std::vector<int> distinct_factor_degrees(const ModPoly& a, const ModField& f);

/// Irreducibility over Q: integer-root test plus a modular degree-pattern screen.
/// Returns false when a factor is found, or when the screen is inconclusive for
/// degree >= 4 (the polynomial is then reported as not certified).
bool is_irreducible(const IntPolynomial& t, bool* certified = nullptr);

}  // namespace clgrp
