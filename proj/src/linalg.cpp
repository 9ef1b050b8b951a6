#include "clgrp/linalg.hpp"

#include <algorithm>

#include "clgrp/error.hpp"

namespace clgrp {

namespace {

// row[dst] -= q * row[src]
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

template <bool WithU>
std::size_t hnf_core(IntMatrix& h, IntMatrix* u) {
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (best == rows || cmpabs(h(i, c), h(best, c)) < 0) best = i;
      }
      if (best == rows) break;
      h.swap_rows(r, best);
      if constexpr (WithU) u->swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(r, c));
        row_axpy(h, i, r, q);
        if constexpr (WithU) row_axpy(*u, i, r, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      row_negate(h, r);
      if constexpr (WithU) row_negate(*u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      row_axpy(h, i, r, q);
      if constexpr (WithU) row_axpy(*u, i, r, q);
    }
    ++r;
  }
  return r;
}

}  // namespace

HnfResult hnf_with_transform(const IntMatrix& m) {
  HnfResult out{m, IntMatrix::identity(m.rows()), 0};
  out.rank = hnf_core<true>(out.H, &out.U);
  return out;
}

IntMatrix hnf(const IntMatrix& m, std::size_t* rank) {
  IntMatrix h(m);
  std::size_t r = hnf_core<false>(h, nullptr);
  if (rank) *rank = r;
  return h;
}

bool is_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) return false;
  Integer d = determinant(u);
  return d == 1 || d == -1;
}

std::vector<Integer> smith_diagonal(const IntMatrix& m_in) {
  IntMatrix a(m_in);
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t k = std::min(rows, cols);
  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Pivot: smallest nonzero magnitude in the trailing block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || cmpabs(a(i, j), a(pi, pj)) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      a.swap_rows(t, pi);
      a.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_axpy(a, i, t, floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = floor_div(a(t, j), a(t, t));
        for (std::size_t i = t; i < rows; ++i)
          if (a(i, t) != 0) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  std::vector<Integer> d(k);
  for (std::size_t t = 0; t < k; ++t) d[t] = abs(a(t, t));
  // Enforce d_i | d_{i+1}; zeros behave as the top of the divisibility order.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = (g == 0) ? Integer(0) : Integer(d[i] / g * d[j]);
      d[i] = g;
      d[j] = abs(l);
    }
  std::stable_partition(d.begin(), d.end(), [](const Integer& x) { return x != 0; });
  return d;
}

GroupStructure snf(const IntMatrix& m) {
  GroupStructure g;
  auto d = smith_diagonal(m);
  std::size_t nonzero = 0;
  for (const auto& x : d) {
    if (x == 0) continue;
    ++nonzero;
    if (x != 1) g.elementary_divisors.push_back(x);
    g.class_number *= x;
  }
  for (std::size_t i = nonzero; i < m.cols(); ++i) g.elementary_divisors.push_back(0);
  if (nonzero < m.cols()) g.class_number = 0;
  return g;
}

std::vector<IntVector> left_kernel(const IntMatrix& m) {
  auto res = hnf_with_transform(m);
  std::vector<IntVector> out;
  for (std::size_t i = res.rank; i < m.rows(); ++i) out.push_back(res.U.row(i));
  return out;
}

ClassGroupReport class_group_from_relations(const IntMatrix& rel) {
  ClassGroupReport rep;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    bool any = false;
    for (std::size_t i = 0; i < rel.rows() && !any; ++i) any = rel(i, j) != 0;
    if (any)
      keep.push_back(j);
    else
      rep.dropped_columns.push_back(j);
  }
  // Sparse row storage for the elimination of unit pivots.
  using SparseRow = std::vector<std::pair<std::size_t, Integer>>;
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    SparseRow r;
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (rel(i, keep[k]) != 0) r.emplace_back(k, rel(i, keep[k]));
    if (!r.empty()) rows.push_back(std::move(r));
  }
  std::vector<bool> col_alive(keep.size(), true);
  auto entry = [](const SparseRow& r, std::size_t c) -> const Integer* {
    auto it = std::lower_bound(r.begin(), r.end(), c,
                               [](const auto& e, std::size_t key) { return e.first < key; });
    return (it != r.end() && it->first == c) ? &it->second : nullptr;
  };
  while (true) {
    std::vector<std::size_t> col_count(keep.size(), 0);
    for (const auto& r : rows)
      for (const auto& [c, v] : r) ++col_count[c];
    std::size_t best_row = rows.size(), best_col = 0, best_cost = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [c, v] : rows[i]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (rows[i].size() - 1) * (col_count[c] - 1);
        if (best_row == rows.size() || cost < best_cost) {
          best_row = i;
          best_col = c;
          best_cost = cost;
        }
      }
    if (best_row == rows.size()) break;
    SparseRow pivot = std::move(rows[best_row]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best_row));
    Integer s = *entry(pivot, best_col);  // +-1
    for (auto& r : rows) {
      const Integer* a = entry(r, best_col);
      if (!a) continue;
      Integer q = *a * s;
      SparseRow merged;
      std::size_t p = 0, t = 0;
      while (p < r.size() || t < pivot.size()) {
        if (t == pivot.size() || (p < r.size() && r[p].first < pivot[t].first)) {
          merged.push_back(r[p++]);
        } else if (p == r.size() || pivot[t].first < r[p].first) {
          merged.emplace_back(pivot[t].first, -q * pivot[t].second);
          ++t;
        } else {
          Integer v = r[p].second - q * pivot[t].second;
          if (v != 0) merged.emplace_back(r[p].first, v);
          ++p;
          ++t;
        }
      }
      r = std::move(merged);
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const SparseRow& r) { return r.empty(); }),
               rows.end());
    col_alive[best_col] = false;
    ++rep.unit_pivots;
  }
  std::vector<std::size_t> alive;
  std::vector<long> pos(keep.size(), -1);
  for (std::size_t c = 0; c < keep.size(); ++c)
    if (col_alive[c]) {
      pos[c] = static_cast<long>(alive.size());
      alive.push_back(c);
    }
  if (alive.empty()) return rep;
  IntMatrix rest(rows.size(), alive.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) rest(i, static_cast<std::size_t>(pos[c])) = v;
  std::size_t rank = 0;
  IntMatrix h = hnf(rest, &rank);
  if (rank < alive.size())
    throw Error(ErrorCode::RankDeficient, "relation lattice has rank " + std::to_string(rank + rep.unit_pivots) +
                                              " < " + std::to_string(keep.size()));
  IntMatrix square(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) square(i, j) = h(i, j);
  rep.group = snf(square);
  return rep;
}

}  // namespace clgrp

namespace clgrp {

IntMatrix column_hnf(const IntMatrix& gens) {
  const std::size_t n = gens.rows(), k = gens.cols();
  IntMatrix rows(k, n);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < n; ++i) rows(c, n - 1 - i) = gens(i, c);
  std::size_t rank = 0;
  IntMatrix r = hnf(rows, &rank);
  if (rank < n) throw Error(ErrorCode::RankDeficient, "generators do not span a full-rank lattice");
  IntMatrix h(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t j = n - 1 - t;
    for (std::size_t i = 0; i < n; ++i) h(i, j) = r(t, n - 1 - i);
  }
  return h;
}

bool solve_upper(const IntMatrix& h, const IntVector& v, IntVector* c) {
  const std::size_t n = h.rows();
  IntVector x(n);
  IntVector rest(v);
  for (std::size_t t = n; t-- > 0;) {
    if (h(t, t) == 0) return false;
    if (!mpz_divisible_p(rest[t].get_mpz_t(), h(t, t).get_mpz_t())) return false;
    x[t] = rest[t] / h(t, t);
    for (std::size_t i = 0; i <= t; ++i) rest[i] -= x[t] * h(i, t);
  }
  if (c) *c = x;
  return true;
}

}  // namespace clgrp
