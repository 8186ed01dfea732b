#pragma once

// Combinatorial side: sums of q^dinv t^area x^w over labelled paths,
// collected into the monomial basis.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "paths.hpp"
#include "symfunc.hpp"

namespace rectlab {

enum class PathFamily { dyck, all };

struct CombOptions {
  std::uint64_t labelling_budget = 2'000'000'000ULL;
  /// Largest degree at which every ordering of each content is aggregated
  /// for the symmetry check; above it only the reversed ordering is.
  int full_symmetry_degree = 6;
};

struct CombResult {
  SymFunc<ExactField> gf;  // monomial basis
  std::uint64_t paths = 0;
  std::uint64_t labellings = 0;
};

/// Laurent polynomial in q, t as exponent-pair counts.
using ExponentCounts = std::map<std::pair<int, int>, long long>;

inline QTRational counts_to_rational(const ExponentCounts& counts) {
  int min_q = 0;
  for (const auto& [e, c] : counts)
    if (c != 0) min_q = std::min(min_q, e.first);
  std::vector<Term> terms;
  for (const auto& [e, c] : counts)
    if (c != 0) terms.push_back(Term{e.first - min_q, e.second, mpz_class(static_cast<long>(c))});
  QTPoly num = QTPoly::from_terms(std::move(terms));
  if (min_q == 0) return QTRational(num);
  return QTRational(num, QTPoly::monomial(1, -min_q, 0));
}

namespace detail {

/// Distinct orderings of a partition's parts used as label contents.
inline std::vector<std::vector<int>> content_orderings(const Partition& lambda, bool all) {
  std::vector<int> v = lambda.parts();
  std::vector<std::vector<int>> out{v};
  if (all) {
    std::sort(v.begin(), v.end());
    do {
      if (v != lambda.parts()) out.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
  } else {
    std::reverse(v.begin(), v.end());
    if (v != lambda.parts()) out.push_back(v);
  }
  return out;
}

/// For a path and a label content, the counts of tdinv values over all
/// labellings with that content. With track_dinv false only the total count
/// (at tdinv 0) is produced.
class LabellingCounter {
 public:
  LabellingCounter(const RectPath& p, bool track_dinv) : n_(p.n()), track_(track_dinv) {
    int row = 0;
    char prev = 'E';
    for (char s : p.steps()) {
      if (s == 'N') {
        follows_.push_back(prev == 'N');
        ++row;
      }
      prev = s;
    }
    if (track_) {
      // earlier[j]: pairs (i, sign) with i < j; sign +1 if i attacks j (needs w_i < w_j),
      // -1 if j attacks i (needs w_j < w_i).
      earlier_.resize(n_);
      for (const auto& [i, j] : attack_pairs(p)) {
        const int a = i - 1;
        const int b = j - 1;
        if (a < b)
          earlier_[b].emplace_back(a, +1);
        else
          earlier_[a].emplace_back(b, -1);
      }
    }
  }

  std::vector<long long> count(const std::vector<int>& content, std::uint64_t& visited, std::uint64_t budget) {
    remaining_ = content;
    w_.assign(n_, 0);
    result_.assign(static_cast<std::size_t>(n_) * n_ + 1, 0);
    visited_ = &visited;
    budget_ = budget;
    rec(0, 0);
    return result_;
  }

 private:
  void rec(int row, int tdinv) {
    if (row == n_) {
      ++result_[tdinv];
      if (++*visited_ > budget_) throw BudgetExceeded("labelling budget of " + std::to_string(budget_) + " exhausted");
      return;
    }
    const int lo = follows_[row] ? w_[row - 1] + 1 : 1;
    for (int v = lo; v <= static_cast<int>(remaining_.size()); ++v) {
      if (remaining_[v - 1] == 0) continue;
      int d = 0;
      if (track_) {
        for (const auto& [i, sign] : earlier_[row]) {
          if (sign > 0 && w_[i] < v) ++d;
          if (sign < 0 && v < w_[i]) ++d;
        }
      }
      --remaining_[v - 1];
      w_[row] = v;
      rec(row + 1, tdinv + d);
      ++remaining_[v - 1];
    }
  }

  int n_;
  bool track_;
  std::vector<bool> follows_;
  std::vector<std::vector<std::pair<int, int>>> earlier_;
  std::vector<int> remaining_;
  std::vector<int> w_;
  std::vector<long long> result_;
  std::uint64_t* visited_ = nullptr;
  std::uint64_t budget_ = 0;
};

}  // namespace detail

/// Sum over labelled m x n paths of q^dinv t^area x^w (k = 0), or over
/// labelled (m+k) x (n+k) paths with k decorated rises of t^area x^w (k >= 1,
/// the q = 1 specialization). Labels range over [n+k]. The symmetric result
/// is read off contents that are partitions; other orderings of each
/// content are aggregated too and must agree.
inline CombResult comb_gf(PathFamily family, int m, int n, int k, const CombOptions& opt = {}) {
  const bool decorated = k > 0;
  const int degree = n + k;
  const auto lambdas = partitions_of(degree);
  const bool all_orders = degree <= opt.full_symmetry_degree;

  std::vector<std::vector<std::vector<int>>> orderings;
  for (const auto& lambda : lambdas) orderings.push_back(detail::content_orderings(lambda, all_orders));
  std::vector<std::vector<ExponentCounts>> acc(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) acc[i].resize(orderings[i].size());

  CombResult res{SymFunc<ExactField>(Basis::monomial, degree), 0, 0};

  auto add_path = [&](const RectPath& p, long area, long q_offset) {
    ++res.paths;
    detail::LabellingCounter counter(p, !decorated);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      for (std::size_t o = 0; o < orderings[i].size(); ++o) {
        const auto counts = counter.count(orderings[i][o], res.labellings, opt.labelling_budget);
        for (std::size_t td = 0; td < counts.size(); ++td)
          if (counts[td]) acc[i][o][{static_cast<int>(q_offset + static_cast<long>(td)), static_cast<int>(area)}] += counts[td];
      }
  };

  if (decorated) {
    for (const auto& d : decorated_paths(m, n, k, family == PathFamily::dyck)) add_path(d.path, area_data(d).area, 0);
  } else {
    for_each_rect_path(m, n, family == PathFamily::dyck, [&](const RectPath& p) {
      const StatRecord s = path_stats(p);
      add_path(p, s.area, s.cdinv + s.bonus);
    });
  }

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (auto& ec : acc[i])
      for (auto it = ec.begin(); it != ec.end();) it = it->second == 0 ? ec.erase(it) : std::next(it);
    for (std::size_t o = 1; o < acc[i].size(); ++o)
      if (acc[i][o] != acc[i][0])
        throw std::logic_error("combinatorial sum is not symmetric at content " + lambdas[i].to_string());
    res.gf.add(lambdas[i], counts_to_rational(acc[i][0]));
  }
  return res;
}

/// Sum over labellings of a single path (labels in [n]) of q^dinv t^area x^w.
inline SymFunc<ExactField> path_gf(const RectPath& p) {
  const StatRecord s = path_stats(p);
  const int degree = p.n();
  SymFunc<ExactField> out(Basis::monomial, degree);
  detail::LabellingCounter counter(p, true);
  std::uint64_t visited = 0;
  for (const auto& lambda : partitions_of(degree)) {
    const auto counts = counter.count(lambda.parts(), visited, ~0ULL);
    ExponentCounts ec;
    for (std::size_t td = 0; td < counts.size(); ++td)
      if (counts[td]) ec[{static_cast<int>(s.cdinv + s.bonus + static_cast<long>(td)), static_cast<int>(s.area)}] += counts[td];
    out.add(lambda, counts_to_rational(ec));
  }
  return out;
}

}  // namespace rectlab
