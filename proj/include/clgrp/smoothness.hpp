#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "clgrp/bigint.hpp"

namespace clgrp {

struct SmoothnessResult {
  std::map<std::uint64_t, int> smooth_part;
  Integer cofactor;

  bool smooth() const { return cofactor == 1; }
};

/// B-smooth part of N >= 1 by trial division over the primes up to B.
SmoothnessResult smooth_part(const Integer& n, std::uint64_t bound);

/// Dickman rho for 0 <= u <= 20, piecewise power series on unit intervals.
double dickman_rho(double u);
constexpr double kDickmanCap = 20.0;

/// L_N(alpha, c); with_o1 marks the L form (with o(1)) as opposed to the exact one.
struct LExpr {
  double alpha = 0;
  double c = 0;
  bool with_o1 = false;

  std::string describe() const;
};

/// For x = L(a1, c1), y = L(a2, c2) with a1 > a2: 1/P(x is y-smooth) = L(a1 - a2, (a1 - a2) c1 / c2).
LExpr smooth_probability(const LExpr& x, const LExpr& y);

/// Raw heuristic exponent log(u^{-u}) with u = log x / log y.
double log_smooth_heuristic(double log_x, double log_y);

/// log of L_N(alpha, c) = c (log N)^alpha (log log N)^{1-alpha}; N >= 16.
double log_eval_L(const LExpr& e, const Integer& n);
double log_eval_L(const LExpr& e, double log_n);
double eval_L(const LExpr& e, const Integer& n);

}  // namespace clgrp
