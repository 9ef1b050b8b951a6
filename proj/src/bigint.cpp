#include "clgrp/bigint.hpp"

#include <cmath>
#include <stdexcept>

#include "clgrp/error.hpp"

namespace clgrp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::BasisNotUnimodularScaling: return "BasisNotUnimodularScaling";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::IndexDivisor: return "IndexDivisor";
    case ErrorCode::EmptyFactorBase: return "EmptyFactorBase";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DeterminantTooLarge: return "DeterminantTooLarge";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::AlphaOrder: return "AlphaOrder";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::DegreeOne: return "DegreeOne";
    case ErrorCode::Stalled: return "Stalled";
    case ErrorCode::ZeroVolume: return "ZeroVolume";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer round_div(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return round_rational(q);
}

Integer round_rational(const Rational& q) {
  // floor(q + 1/2), with exact ties sent to the even neighbour.
  Integer twice_num = 2 * q.get_num() + q.get_den();
  Integer two_den = 2 * q.get_den();
  Integer r = floor_div(twice_num, two_den);
  if (twice_num % two_den == 0 && r % 2 != 0) r -= 1;
  return r;
}

double log_abs(const Integer& a) {
  if (a == 0) throw std::domain_error("log_abs(0)");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

bool is_perfect_square(const Integer& a, Integer* root) {
  if (a < 0) return false;
  if (mpz_perfect_square_p(a.get_mpz_t()) == 0) return false;
  if (root != nullptr) mpz_sqrt(root->get_mpz_t(), a.get_mpz_t());
  return true;
}

std::string to_decimal(const Integer& a) { return a.get_str(10); }

std::string to_decimal(const Rational& q) { return q.get_str(10); }

Integer parse_integer(const std::string& s) {
  Integer out;
  if (s.empty() || out.set_str(s, 10) != 0) throw Error(ErrorCode::InputError, "not an integer: '" + s + "'");
  return out;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::InputError, "zero denominator: '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime_u64(std::uint64_t n) {
  Integer z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

}  // namespace clgrp
