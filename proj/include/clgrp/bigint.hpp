#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace clgrp {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer abs_int(const Integer& a) { return abs(a); }

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Round-half-to-even division of integers.
Integer round_div(const Integer& num, const Integer& den);

/// Nearest integer to a rational, ties to even.
Integer round_rational(const Rational& q);

Integer floor_div(const Integer& num, const Integer& den);

/// Natural log of |a| for a != 0, robust for huge values.
double log_abs(const Integer& a);

bool is_perfect_square(const Integer& a, Integer* root = nullptr);

std::string to_decimal(const Integer& a);
std::string to_decimal(const Rational& q);

/// Accepts "123", "-4", "3/5".
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

bool is_prime_u64(std::uint64_t n);

}  // namespace clgrp
