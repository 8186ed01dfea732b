#pragma once

// Modified Macdonald polynomials in the monomial basis, computed from
// fillings of the French diagram: the coefficient of m_lambda in H~_mu is
// the sum of q^inv t^maj over fillings of mu with content lambda.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "partitions.hpp"
#include "qtpoly.hpp"

namespace rectlab {

/// H~_mu for every mu of one degree: rows[i][j] is the m_{parts[j]}
/// coefficient of H~_{parts[i]}.
struct HTildeTable {
  int degree = 0;
  std::vector<Partition> parts;
  std::vector<std::vector<QTPoly>> rows;
};

namespace detail {

struct FillingShape {
  // Cells in reading order: rows top to bottom, each left to right.
  std::vector<int> row, col, arm, leg;
  std::vector<std::vector<int>> attackers;  // earlier cells attacking this one
  std::vector<int> above;                   // cell directly above, or -1
};

inline FillingShape filling_shape(const Partition& mu) {
  FillingShape s;
  const Partition conj = mu.conjugate();
  std::map<std::pair<int, int>, int> at;
  for (int r = mu.length() - 1; r >= 0; --r) {
    for (int c = 0; c < mu[r]; ++c) {
      at[{r, c}] = static_cast<int>(s.row.size());
      s.row.push_back(r);
      s.col.push_back(c);
      s.arm.push_back(mu[r] - c - 1);
      s.leg.push_back(conj[c] - r - 1);
    }
  }
  const int n = static_cast<int>(s.row.size());
  s.attackers.resize(n);
  s.above.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      const bool same_row = s.row[u] == s.row[v];
      // u one row up and strictly to the right of v.
      const bool row_above_right = s.row[u] == s.row[v] + 1 && s.col[u] > s.col[v];
      if (same_row || row_above_right) s.attackers[v].push_back(u);
    }
    auto it = at.find({s.row[v] + 1, s.col[v]});
    if (it != at.end()) s.above[v] = it->second;
  }
  return s;
}

/// Sum of q^inv t^maj over fillings of mu with content lambda.
inline QTPoly htilde_coefficient(const Partition& mu, const Partition& lambda, const FillingShape& shape) {
  const int n = mu.size();
  const int max_q = mu.conjugate().n_stat();
  const int max_t = mu.n_stat();
  // Running inv can exceed its final bound before arm corrections land.
  const int inv_span = n * n + 1;
  std::vector<long long> counts(static_cast<std::size_t>(max_t + 1) * inv_span, 0);
  std::vector<int> remaining(lambda.parts());
  std::vector<int> value(n, 0);

  auto rec = [&](auto&& self, int k, int inv, int maj) -> void {
    if (k == n) {
      counts[static_cast<std::size_t>(maj) * inv_span + inv] += 1;
      return;
    }
    for (int v = 0; v < static_cast<int>(remaining.size()); ++v) {
      if (remaining[v] == 0) continue;
      int d_inv = 0;
      int d_maj = 0;
      for (int u : shape.attackers[k])
        if (value[u] > v) ++d_inv;
      const int up = shape.above[k];
      if (up >= 0 && value[up] > v) {
        d_maj += shape.leg[up] + 1;
        d_inv -= shape.arm[up];
      }
      --remaining[v];
      value[k] = v;
      self(self, k + 1, inv + d_inv, maj + d_maj);
      ++remaining[v];
    }
  };
  rec(rec, 0, 0, 0);

  std::vector<Term> terms;
  for (int tm = 0; tm <= max_t; ++tm)
    for (int qi = 0; qi <= max_q && qi < inv_span; ++qi) {
      long long c = counts[static_cast<std::size_t>(tm) * inv_span + qi];
      if (c) terms.push_back(Term{qi, tm, mpz_class(static_cast<long>(c))});
    }
  return QTPoly::from_terms(std::move(terms));
}

inline HTildeTable build_htilde_table(int n) {
  HTildeTable t;
  t.degree = n;
  t.parts = partitions_of(n);
  for (const auto& mu : t.parts) {
    const FillingShape shape = filling_shape(mu);
    std::vector<QTPoly> row;
    for (const auto& lambda : t.parts) row.push_back(htilde_coefficient(mu, lambda, shape));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace detail

/// Single H~_mu as a map lambda -> coefficient (zero coefficients omitted).
inline std::map<Partition, QTPoly> htilde_monomial(const Partition& mu) {
  const auto shape = detail::filling_shape(mu);
  std::map<Partition, QTPoly> out;
  for (const auto& lambda : partitions_of(mu.size())) {
    QTPoly c = detail::htilde_coefficient(mu, lambda, shape);
    if (!c.is_zero()) out.emplace(lambda, std::move(c));
  }
  return out;
}

}  // namespace rectlab
