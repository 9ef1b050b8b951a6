#include "clgrp/smoothness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "clgrp/error.hpp"
#include "clgrp/real.hpp"

namespace clgrp {

namespace {

class PrimeTable {
 public:
  // Primes <= bound, grown on demand under an exclusive lock.
  std::vector<std::uint64_t> upto(std::uint64_t bound) {
    {
      std::shared_lock lock(mutex_);
      if (limit_ >= bound) return slice(bound);
    }
    std::unique_lock lock(mutex_);
    if (limit_ < bound) {
      std::uint64_t next = std::max<std::uint64_t>(bound, 2 * limit_);
      primes_ = primes_up_to(next);
      limit_ = next;
    }
    return slice(bound);
  }

 private:
  std::vector<std::uint64_t> slice(std::uint64_t bound) const {
    auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return std::vector<std::uint64_t>(primes_.begin(), end);
  }

  std::shared_mutex mutex_;
  std::vector<std::uint64_t> primes_;
  std::uint64_t limit_ = 0;
};

PrimeTable& prime_table() {
  static PrimeTable table;
  return table;
}

}  // namespace

SmoothnessResult smooth_part(const Integer& n, std::uint64_t bound) {
  if (n < 1) throw Error(ErrorCode::InputError, "smooth_part needs N >= 1");
  SmoothnessResult out;
  Integer rest = n;
  for (std::uint64_t p : prime_table().upto(bound)) {
    if (rest == 1) break;
    Integer pp(static_cast<unsigned long>(p));
    if (pp * pp > rest) {
      if (rest <= Integer(static_cast<unsigned long>(bound))) {
        out.smooth_part[rest.get_ui()] += 1;
        rest = 1;
      }
      break;
    }
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
      ++e;
    }
    if (e) out.smooth_part[p] = e;
  }
  out.cofactor = rest;
  return out;
}

namespace {

constexpr int kTerms = 90;
constexpr int kIntervals = 20;

// coeff[k][i]: rho(u) = sum_i coeff[k][i] (k+1-u)^i on [k, k+1].
const std::array<std::array<long double, kTerms>, kIntervals>& rho_table() {
  static const auto table = [] {
    constexpr mpfr_prec_t prec = 256;
    std::vector<std::vector<Real>> c(kIntervals, std::vector<Real>(kTerms, Real(0.0, prec)));
    c[0][0] = Real(1.0, prec);
    for (int k = 1; k < kIntervals; ++k) {
      Real tail(0.0, prec);
      for (int i = 0; i + 1 < kTerms; ++i) {
        c[k][i + 1] = (c[k - 1][i] + Real(static_cast<double>(i), prec) * c[k][i]) /
                      Real(static_cast<double>((k + 1) * (i + 1)), prec);
        tail += c[k][i + 1];
      }
      c[k][0] = c[k - 1][0] - tail;
    }
    std::array<std::array<long double, kTerms>, kIntervals> out{};
    for (int k = 0; k < kIntervals; ++k)
      for (int i = 0; i < kTerms; ++i) out[k][i] = mpfr_get_ld(c[k][i].get(), MPFR_RNDN);
    return out;
  }();
  return table;
}

}  // namespace

double dickman_rho(double u) {
  if (u < 0) throw Error(ErrorCode::InputError, "dickman_rho needs u >= 0");
  if (u > kDickmanCap) throw Error(ErrorCode::InputError, "dickman_rho argument above cap");
  if (u <= 1) return 1.0;
  int k = static_cast<int>(std::floor(u));
  if (k >= kIntervals) k = kIntervals - 1;
  long double z = k + 1 - static_cast<long double>(u);
  const auto& c = rho_table()[k];
  long double acc = 0;
  for (int i = kTerms - 1; i >= 0; --i) acc = acc * z + c[i];
  return static_cast<double>(acc);
}

std::string LExpr::describe() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s(%.6g, %.6g)", with_o1 ? "L" : "Ł", alpha, c);
  return buf;
}

LExpr smooth_probability(const LExpr& x, const LExpr& y) {
  if (!(x.alpha > y.alpha)) throw Error(ErrorCode::AlphaOrder, "smoothness estimate needs alpha1 > alpha2");
  if (y.c <= 0) throw Error(ErrorCode::InputError, "smoothness bound constant must be positive");
  double a = x.alpha - y.alpha;
  return LExpr{a, a * x.c / y.c, true};
}

double log_smooth_heuristic(double log_x, double log_y) {
  double u = log_x / log_y;
  if (u <= 1) return 0.0;
  return -u * std::log(u);
}

double log_eval_L(const LExpr& e, double log_n) {
  if (log_n < std::log(16.0)) throw Error(ErrorCode::DomainTooSmall, "L-notation needs N >= 16");
  double ll = std::log(log_n);
  return e.c * std::pow(log_n, e.alpha) * std::pow(ll, 1 - e.alpha);
}

double log_eval_L(const LExpr& e, const Integer& n) {
  if (n < 16) throw Error(ErrorCode::DomainTooSmall, "L-notation needs N >= 16");
  return log_eval_L(e, log_abs(n));
}

double eval_L(const LExpr& e, const Integer& n) { return std::exp(log_eval_L(e, n)); }

}  // namespace clgrp
