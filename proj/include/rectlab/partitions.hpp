#pragma once

// Integer partitions and the cell statistics used by the Macdonald constants.

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtpoly.hpp"

namespace rectlab {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Sorts and drops zeros.
  static Partition from_unsorted(std::vector<int> parts) {
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }

  Partition conjugate() const {
    std::vector<int> c;
    if (!parts_.empty()) {
      c.assign(parts_.front(), 0);
      for (int p : parts_)
        for (int j = 0; j < p; ++j) ++c[j];
    }
    return Partition(std::move(c));
  }

  /// Union of multisets of parts (the index of p_lambda * p_mu).
  Partition join(const Partition& o) const {
    std::vector<int> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return from_unsorted(std::move(all));
  }

  /// Multiplicity of each part value: result[i] = m_i.
  std::vector<int> multiplicities() const {
    std::vector<int> m(parts_.empty() ? 1 : parts_.front() + 1, 0);
    for (int p : parts_) ++m[p];
    return m;
  }

  /// n(mu) = sum (i-1) mu_i.
  int n_stat() const {
    int s = 0;
    for (int i = 0; i < length(); ++i) s += i * parts_[i];
    return s;
  }

  /// Rendered as "[3,2]"; the empty partition is "[]".
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Parses "[3,2,1]", "3,2,1" or "[]".
inline Partition parse_partition(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '[' && c != ']' && c != ' ') s += c;
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    parts.push_back(std::stoi(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return Partition(std::move(parts));
}

/// Cell of a Ferrers diagram with its co-arm, co-leg, arm and leg. The
/// co-arm runs along the first row.
struct CellStats {
  int coarm = 0;
  int coleg = 0;
  int arm = 0;
  int leg = 0;
  friend bool operator==(const CellStats&, const CellStats&) = default;
};

/// One record per cell, row by row, left to right.
inline std::vector<CellStats> cells_with_arm_leg(const Partition& mu) {
  const Partition conj = mu.conjugate();
  std::vector<CellStats> cells;
  for (int row = 0; row < mu.length(); ++row)
    for (int col = 0; col < mu[row]; ++col) cells.push_back(CellStats{col, row, mu[row] - col - 1, conj[col] - row - 1});
  return cells;
}

/// B_mu = sum over cells of q^coarm t^coleg.
inline QTPoly b_mu(const Partition& mu) {
  std::vector<Term> terms;
  for (const auto& c : cells_with_arm_leg(mu)) terms.push_back(Term{c.coarm, c.coleg, 1});
  return QTPoly::from_terms(std::move(terms));
}

/// Pi_mu = product over cells other than (0,0) of (1 - q^coarm t^coleg); Pi of the empty partition is 1.
inline QTPoly pi_mu(const Partition& mu) {
  QTPoly r(1);
  for (const auto& c : cells_with_arm_leg(mu)) {
    if (c.coarm == 0 && c.coleg == 0) continue;
    r *= QTPoly(1) - QTPoly::monomial(1, c.coarm, c.coleg);
  }
  return r;
}

/// All partitions of n, in reverse lexicographic order ([n] first, [1^n] last).
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative size");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// z_lambda = prod_i i^{m_i} m_i!.
inline mpz_class z_lambda(const Partition& lambda) {
  mpz_class z = 1;
  const auto m = lambda.multiplicities();
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (int k = 1; k <= m[i]; ++k) z *= static_cast<unsigned long>(i) * static_cast<unsigned long>(k);
  }
  return z;
}

/// Index of each partition of n in partitions_of(n).
inline std::map<Partition, int> partition_index(int n) {
  std::map<Partition, int> idx;
  const auto all = partitions_of(n);
  for (int i = 0; i < static_cast<int>(all.size()); ++i) idx.emplace(all[i], i);
  return idx;
}

}  // namespace rectlab
