#pragma once

#include <optional>

#include "clgrp/bigint.hpp"
#include "clgrp/int_matrix.hpp"

namespace clgrp {

/// Integer lattice basis, columns are basis vectors. Embedded ideal lattices
/// carry the fixed-point exponent used when rounding real coordinates.
struct LatticeBasis {
  IntMatrix basis;
  long scale_bits = 0;
  std::optional<IntMatrix> gram;

  std::size_t dim() const { return basis.cols(); }
};

/// B^T B.
IntMatrix gram_of(const IntMatrix& basis);

struct GramReduction {
  IntMatrix gram;  // U^T G U
  IntMatrix U;     // columns express the new basis in the old one
};

struct ReductionReport {
  int block_size_beta = 0;
  double log_first_norm = 0;    // natural log of the shortest output norm
  double log_hermite_bound = 0; // natural log of beta^{(n-1)/(2(beta-1))} det^{1/n}
  long enumeration_nodes = 0;
  int tours = 0;
  bool bound_holds = true;
};

/// Integral LLL (exact, on the Gram matrix) with parameter delta.
GramReduction lll_gram(const IntMatrix& gram, const Rational& delta = Rational(99, 100));
LatticeBasis lll(const LatticeBasis& b, const Rational& delta = Rational(99, 100));

/// BKZ with exact-checked block enumeration. Asserts the block-Hermite bound on the output.
GramReduction bkz_gram(const IntMatrix& gram, int beta, ReductionReport* report = nullptr);
std::pair<LatticeBasis, ReductionReport> bkz(const LatticeBasis& b, int beta);

/// Index of the shortest column of a Gram matrix (exact comparison, first on ties).
std::size_t shortest_index(const IntMatrix& gram);

/// Natural log of the block-Hermite bound beta^{(n-1)/(2(beta-1))} (det G)^{1/(2n)}.
double log_block_hermite_bound(int n, int beta, const Integer& gram_det);

/// Upper-triangular column HNF of an integer lattice.
LatticeBasis hnf_lattice(const LatticeBasis& b);

/// Dimension of the Cheon prefix: round-half-even(sqrt(2 beta log_beta det)) clamped to [beta, n].
int cheon_dimension(int beta, double log_beta_det, int n);

struct CheonResult {
  IntVector vector;        // short lattice vector (ambient coordinates)
  IntVector coefficients;  // expression in the input basis
  int m = 0;
  ReductionReport report;
  double log_beta_norm = 0;
  double log_beta_det = 0;
};

/// Short vector from BKZ on the m-dimensional HNF prefix sublattice. Requires a
/// square basis with det L <= beta^{n^2/(2 beta)}, otherwise DeterminantTooLarge.
CheonResult cheon_reduce(const LatticeBasis& b, int beta);

struct SvpResult {
  IntVector coefficients;  // in the input Gram's basis
  Integer norm2;
  long nodes = 0;
};

/// Exact shortest nonzero vector by enumeration (dimension capped, default 30).
SvpResult enumerate_svp(const IntMatrix& gram, int cap = 30);

/// All nonzero x (one of each pair +-x) with x^T G x <= bound, exact.
std::vector<IntVector> enumerate_ball(const IntMatrix& gram, const Integer& bound, std::size_t limit = 100000);

/// Integral Gram-Schmidt data: d[0] = 1, d[i] = det of leading i x i Gram block,
/// lambda(i, j) = d[j+1] * mu(i, j) for j < i.
struct IntegralGso {
  std::vector<Integer> d;
  IntMatrix lambda;
};
IntegralGso integral_gso(const IntMatrix& gram);

}  // namespace clgrp
