#pragma once

#include <vector>

#include "clgrp/int_matrix.hpp"

namespace clgrp {

struct HnfResult {
  IntMatrix H;  // row Hermite form, H = U * M
  IntMatrix U;  // unimodular
  std::size_t rank = 0;
};

/// Row Hermite normal form: nonzero rows on top with strictly increasing pivot
/// columns, positive pivots, entries above each pivot reduced into [0, pivot).
HnfResult hnf_with_transform(const IntMatrix& m);
/// Same without accumulating the transform.
IntMatrix hnf(const IntMatrix& m, std::size_t* rank = nullptr);

/// Exact check that a square integer matrix has determinant +-1.
bool is_unimodular(const IntMatrix& u);

struct GroupStructure {
  /// Non-trivial invariant factors d1 | d2 | ...; zeros (free factors) come last.
  std::vector<Integer> elementary_divisors;
  /// Order of the torsion-free quotient when finite, otherwise 0.
  Integer class_number = 1;
};

/// Full Smith diagonal (length min(rows, cols)), divisibility chain with zeros last.
std::vector<Integer> smith_diagonal(const IntMatrix& m);
/// Structure of Z^cols / (row lattice of m).
GroupStructure snf(const IntMatrix& m);

/// Basis of {v : v M = 0} read off the transform of the row HNF.
std::vector<IntVector> left_kernel(const IntMatrix& m);

struct ClassGroupReport {
  GroupStructure group;
  std::vector<std::size_t> dropped_columns;  // all-zero columns removed before elimination
  std::size_t unit_pivots = 0;               // generators eliminated through +-1 entries
};

/// Z^N / (row lattice of the relation matrix), with all-zero columns dropped.
/// Throws RankDeficient when the remaining columns are not of full rank.
ClassGroupReport class_group_from_relations(const IntMatrix& relations);

}  // namespace clgrp

namespace clgrp {

/// Upper-triangular column Hermite form of the lattice spanned by the columns of
/// `gens` (positive diagonal, 0 <= h(i,j) < h(i,i) for j > i). Throws RankDeficient
/// when the columns do not span a full-rank lattice.
IntMatrix column_hnf(const IntMatrix& gens);

/// Integer solution c of H c = v for an upper-triangular column HNF H, if any.
bool solve_upper(const IntMatrix& h, const IntVector& v, IntVector* c = nullptr);

}  // namespace clgrp
