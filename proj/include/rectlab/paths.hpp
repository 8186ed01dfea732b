#pragma once

// Rectangular lattice paths (plain and with decorated rises), their scaled
// area words, labellings, and the dinv family of statistics.
//
// Every comparison against a diagonal is done on integers: the horizontal
// distance a_i is stored as c_i = n * a_i, where n is the base height.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "partitions.hpp"
#include "qtrational.hpp"

namespace rectlab {

/// Lattice path of N/E steps from (0,0) to (m,n) ending with an E step.
class RectPath {
 public:
  RectPath() = default;
  RectPath(int m, int n, std::string steps) : m_(m), n_(n), steps_(std::move(steps)) { validate(); }

  /// Size inferred from the word.
  static RectPath from_word(const std::string& steps) {
    const int n = static_cast<int>(std::count(steps.begin(), steps.end(), 'N'));
    return RectPath(static_cast<int>(steps.size()) - n, n, steps);
  }

  int m() const { return m_; }
  int n() const { return n_; }
  const std::string& steps() const { return steps_; }

  /// x-coordinate where the i-th N step starts (0-based i).
  std::vector<int> north_abscissae() const {
    std::vector<int> xs;
    int x = 0;
    for (char s : steps_) {
      if (s == 'E')
        ++x;
      else
        xs.push_back(x);
    }
    return xs;
  }

  /// Lengths of maximal runs of consecutive N steps, bottom to top.
  std::vector<int> north_runs() const {
    std::vector<int> runs;
    char prev = 'E';
    for (char s : steps_) {
      if (s == 'N') {
        if (prev == 'N')
          ++runs.back();
        else
          runs.push_back(1);
      }
      prev = s;
    }
    return runs;
  }

  /// Rows (1-based) whose N step directly follows another N step.
  std::vector<int> rises() const {
    std::vector<int> out;
    int row = 0;
    char prev = 'E';
    for (char s : steps_) {
      if (s == 'N') {
        ++row;
        if (prev == 'N') out.push_back(row);
      }
      prev = s;
    }
    return out;
  }

  /// Cells of the m x n grid above the path, as a partition: row lengths are
  /// the abscissae of the N steps.
  Partition mu() const { return Partition::from_unsorted(north_abscissae()); }

  friend bool operator==(const RectPath&, const RectPath&) = default;
  friend auto operator<=>(const RectPath& a, const RectPath& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.steps_ <=> b.steps_;
  }

 private:
  void validate() const {
    if (m_ < 1 || n_ < 0) throw InvalidPath("size " + std::to_string(m_) + "x" + std::to_string(n_));
    int ns = 0;
    int es = 0;
    for (char s : steps_) {
      if (s == 'N')
        ++ns;
      else if (s == 'E')
        ++es;
      else
        throw InvalidPath(std::string("bad step '") + s + "' in " + steps_);
    }
    if (ns != n_ || es != m_) throw InvalidPath(steps_ + " is not " + std::to_string(m_) + "x" + std::to_string(n_));
    if (steps_.back() != 'E') throw InvalidPath(steps_ + " does not end with an E step");
  }

  int m_ = 1;
  int n_ = 0;
  std::string steps_ = "E";
};

/// A path of size (m+k) x (n+k) with k decorated rises. With k = 0 this is a
/// plain m x n path.
struct DecoratedPath {
  RectPath path;
  std::vector<int> dr;  // sorted 1-based rows

  DecoratedPath() = default;
  explicit DecoratedPath(RectPath p, std::vector<int> rows = {}) : path(std::move(p)), dr(std::move(rows)) {
    std::sort(dr.begin(), dr.end());
    if (std::adjacent_find(dr.begin(), dr.end()) != dr.end()) throw InvalidPath("repeated decorated row");
    const auto r = path.rises();
    for (int row : dr)
      if (!std::binary_search(r.begin(), r.end(), row)) throw InvalidPath("row " + std::to_string(row) + " is not a rise of " + path.steps());
    if (base_m() < 1 || base_n() < 1) throw InvalidPath("too many decorations for " + path.steps());
  }

  int k() const { return static_cast<int>(dr.size()); }
  int base_m() const { return path.m() - k(); }
  int base_n() const { return path.n() - k(); }
  bool decorated(int row) const { return std::binary_search(dr.begin(), dr.end(), row); }
};

/// Area word scaled by the base height n: c_i = n * a_i.
struct AreaData {
  std::vector<long> c;
  long scale = 1;
  long shift = 0;  // scaled
  long area = 0;
  bool dyck = true;
};

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline AreaData area_data(const DecoratedPath& p) {
  const long m = p.base_m();
  const long n = p.base_n();
  const auto xs = p.path.north_abscissae();
  AreaData d;
  d.scale = n;
  long diag = 0;  // n times the broken diagonal's abscissa at the current height
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d.c.push_back(diag - n * xs[i]);
    diag += p.decorated(static_cast<int>(i) + 1) ? n : m;
  }
  const long lo = d.c.empty() ? 0 : *std::min_element(d.c.begin(), d.c.end());
  d.shift = lo < 0 ? -lo : 0;
  d.dyck = lo >= 0;
  for (std::size_t i = 0; i < d.c.size(); ++i)
    if (!p.decorated(static_cast<int>(i) + 1)) d.area += floor_div(d.c[i] + d.shift, n);
  return d;
}

inline AreaData area_data(const RectPath& p) { return area_data(DecoratedPath(p)); }

// ---- enumeration ----

/// All m x n rectangular paths in lexicographic order of their words (E < N).
inline void for_each_rect_path(int m, int n, bool dyck_only, const std::function<void(const RectPath&)>& visit) {
  if (m < 1 || n < 1) throw std::invalid_argument("paths need m, n >= 1");
  std::string w;
  auto rec = [&](auto&& self, int es, int ns) -> void {
    if (es == m - 1 && ns == n) {
      RectPath p(m, n, w + "E");
      if (!dyck_only || area_data(p).dyck) visit(p);
      return;
    }
    if (es < m - 1) {
      w.push_back('E');
      self(self, es + 1, ns);
      w.pop_back();
    }
    if (ns < n) {
      w.push_back('N');
      self(self, es, ns + 1);
      w.pop_back();
    }
  };
  rec(rec, 0, 0);
}

inline std::vector<RectPath> rect_paths(int m, int n, bool dyck_only) {
  std::vector<RectPath> out;
  for_each_rect_path(m, n, dyck_only, [&](const RectPath& p) { out.push_back(p); });
  return out;
}

/// Decorated paths of size (m+k) x (n+k) with k decorated rises; Dyck means
/// weakly above the broken diagonal.
inline std::vector<DecoratedPath> decorated_paths(int m, int n, int k, bool dyck_only) {
  if (m < 1 || n < 1 || k < 0) throw std::invalid_argument("decorated paths need m, n >= 1, k >= 0");
  std::vector<DecoratedPath> out;
  for_each_rect_path(m + k, n + k, false, [&](const RectPath& p) {
    const auto r = p.rises();
    if (static_cast<int>(r.size()) < k) return;
    std::vector<int> chosen;
    auto pick = [&](auto&& self, std::size_t from) -> void {
      if (static_cast<int>(chosen.size()) == k) {
        DecoratedPath d(p, chosen);
        if (!dyck_only || area_data(d).dyck) out.push_back(std::move(d));
        return;
      }
      for (std::size_t i = from; i < r.size(); ++i) {
        chosen.push_back(r[i]);
        self(self, i + 1);
        chosen.pop_back();
      }
    };
    pick(pick, 0);
  });
  return out;
}

/// Labellings with labels in [1, max_label], strictly increasing up each N run.
inline void for_each_labelling(const RectPath& p, int max_label, const std::function<void(const std::vector<int>&)>& visit) {
  const auto runs = p.north_runs();
  std::vector<int> w;
  auto rec = [&](auto&& self, std::size_t run, int pos) -> void {
    if (run == runs.size()) {
      visit(w);
      return;
    }
    const int lo = pos == 0 ? 1 : w.back() + 1;
    // Leave room for the rest of the run.
    for (int v = lo; v <= max_label - (runs[run] - pos - 1); ++v) {
      w.push_back(v);
      if (pos + 1 == runs[run])
        self(self, run + 1, 0);
      else
        self(self, run, pos + 1);
      w.pop_back();
    }
  };
  rec(rec, 0, 0);
}

inline bool is_valid_labelling(const RectPath& p, const std::vector<int>& w) {
  if (static_cast<int>(w.size()) != p.n()) return false;
  int row = 0;
  char prev = 'E';
  for (char s : p.steps()) {
    if (s == 'N') {
      if (w[row] < 1) return false;
      if (prev == 'N' && w[row] <= w[row - 1]) return false;
      ++row;
    }
    prev = s;
  }
  return true;
}

// ---- statistics ----

/// Ordered pairs (i, j), 1-based, with (a_i, i) <lex (a_j, j) <lex (a_i + m/n, i).
inline std::vector<std::pair<int, int>> attack_pairs(const RectPath& p) {
  const auto d = area_data(p);
  const long m = p.m();
  std::vector<std::pair<int, int>> out;
  const int n = p.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool lower = d.c[i] < d.c[j] || (d.c[i] == d.c[j] && i < j);
      const bool upper = d.c[j] < d.c[i] + m || (d.c[j] == d.c[i] + m && j < i);
      if (lower && upper) out.emplace_back(i + 1, j + 1);
    }
  return out;
}

struct StatRecord {
  long area = 0;
  long tdinv = 0;
  long maxtdinv = 0;
  long pdinv = 0;
  long cdinv = 0;
  long bonus = 0;
  long deep_bonus = 0;
  long dinv = 0;
  friend bool operator==(const StatRecord&, const StatRecord&) = default;
};

/// Path dinv: cells of mu with a/(l+1) <= m/n < (a+1)/l.
inline long pdinv(const RectPath& p) {
  const long m = p.m();
  const long n = p.n();
  long count = 0;
  for (const auto& c : cells_with_arm_leg(p.mu())) {
    const long a = c.arm;
    const long l = c.leg;
    if (a * n <= m * (l + 1) && m * l < (a + 1) * n) ++count;
  }
  return count;
}

/// Dinv correction from its two cell sets.
inline long cdinv(const RectPath& p) {
  const long m = p.m();
  const long n = p.n();
  long plus = 0;
  long minus = 0;
  for (const auto& c : cells_with_arm_leg(p.mu())) {
    const long a = c.arm;
    const long l = c.leg;
    if ((a + 1) * n <= m * (l + 1) && m * l < a * n) ++plus;
    if (a * n <= m * l && m * (l + 1) < (a + 1) * n) ++minus;
  }
  return plus - minus;
}

/// Label-independent part of the statistics; tdinv is left at zero.
inline StatRecord path_stats(const RectPath& p) {
  const auto d = area_data(p);
  StatRecord s;
  s.area = d.area;
  s.maxtdinv = static_cast<long>(attack_pairs(p).size());
  s.pdinv = pdinv(p);
  s.cdinv = cdinv(p);
  for (long c : d.c) {
    if (c < 0) ++s.bonus;
    if (c < -static_cast<long>(p.m())) ++s.deep_bonus;
  }
  const long expected = s.pdinv - s.maxtdinv - s.bonus - s.deep_bonus;
  if (expected != s.cdinv)
    throw InconsistentCdinv(p.steps() + ": cells give " + std::to_string(s.cdinv) + ", pdinv - maxtdinv - bonus - deep bonus gives " + std::to_string(expected));
  s.dinv = s.cdinv + s.bonus;
  return s;
}

inline StatRecord path_stats(const RectPath& p, const std::vector<int>& w) {
  if (!is_valid_labelling(p, w)) throw InvalidPath("labelling does not fit " + p.steps());
  StatRecord s = path_stats(p);
  for (const auto& [i, j] : attack_pairs(p))
    if (w[i - 1] < w[j - 1]) ++s.tdinv;
  s.dinv = s.tdinv + s.cdinv + s.bonus;
  return s;
}

// ---- path literals: word[*{i,j}][|w1,w2,...] ----

struct PathLiteral {
  std::string word;
  std::vector<int> dr;
  std::optional<std::vector<int>> labels;
  bool has_decorations = false;

  std::string to_string() const {
    std::string s = word;
    if (has_decorations) {
      s += "*{";
      for (std::size_t i = 0; i < dr.size(); ++i) s += (i ? "," : "") + std::to_string(dr[i]);
      s += "}";
    }
    if (labels) {
      s += "|";
      for (std::size_t i = 0; i < labels->size(); ++i) s += (i ? "," : "") + std::to_string((*labels)[i]);
    }
    return s;
  }
};

namespace detail {
inline std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    const std::string tok = s.substr(pos, next - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad " + what + " entry '" + tok + "'");
    out.push_back(std::stoi(tok));
    pos = next + 1;
  }
  return out;
}
}  // namespace detail

inline PathLiteral parse_path_literal(const std::string& text) {
  PathLiteral lit;
  std::string rest = text;
  if (auto bar = rest.find('|'); bar != std::string::npos) {
    lit.labels = detail::parse_int_list(rest.substr(bar + 1), "label");
    rest = rest.substr(0, bar);
  }
  if (auto star = rest.find('*'); star != std::string::npos) {
    const std::string dec = rest.substr(star + 1);
    if (dec.size() < 2 || dec.front() != '{' || dec.back() != '}') throw ParseError("decorations must look like *{i,j}: " + text);
    lit.dr = detail::parse_int_list(dec.substr(1, dec.size() - 2), "decoration");
    lit.has_decorations = true;
    rest = rest.substr(0, star);
  }
  if (rest.empty() || rest.find_first_not_of("NE") != std::string::npos) throw ParseError("path word must be over {N,E}: " + text);
  lit.word = rest;
  return lit;
}

}  // namespace rectlab
