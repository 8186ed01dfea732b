#pragma once

// Exponent bookkeeping of the sweep over a rectangular path, and the cyclic
// rotations phi_k that partition all m x n paths into orbits of Dyck paths.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "paths.hpp"

namespace rectlab {

/// How a swept lattice point is treated: by the pair of steps around it
/// (A = NE, B = EN, C = NN, D = EE) or as a point strictly below the path.
enum class PointClass { A, B, C, D, below };

inline const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::A: return "A";
    case PointClass::B: return "B";
    case PointClass::C: return "C";
    case PointClass::D: return "D";
    case PointClass::below: return "E";
  }
  return "?";
}

struct SweptPoint {
  int x = 0;
  int y = 0;
  PointClass cls = PointClass::below;
  int a = 0;  // vertical steps to the right crossed by the sweep line at this point
};

struct SweepResult {
  long q_exp = 0;
  long t_exp = 0;
  std::vector<SweptPoint> points;  // in sweep order
};

/// Runs the sweep and returns the q and t exponents with the audit trail.
/// With K = m y - n x, a point is swept when it is a vertex other than (m,n),
/// or lies strictly right of the path at a height below n, and its K is at
/// least the smallest K over the vertices. Points right of x = m count: the
/// area includes whole squares past the rectangle when the path dips below
/// the diagonal. Sweep order is by (K, x) decreasing.
inline SweepResult sweep(const RectPath& p) {
  const int m = p.m();
  const int n = p.n();
  const auto& steps = p.steps();

  std::vector<std::pair<int, int>> vertex{{0, 0}};
  std::vector<std::pair<int, int>> north;  // (x', y') of each N step start
  int x = 0;
  int y = 0;
  for (char s : steps) {
    if (s == 'N') {
      north.emplace_back(x, y);
      ++y;
    } else {
      ++x;
    }
    vertex.emplace_back(x, y);
  }

  auto key = [&](int px, int py) { return std::pair<long, int>{static_cast<long>(m) * py - static_cast<long>(n) * px, px}; };
  long stop = 0;
  for (const auto& [vx, vy] : vertex) stop = std::min(stop, key(vx, vy).first);

  auto crossed = [&](int px, int py) {
    const long k = key(px, py).first;
    int a = 0;
    for (const auto& [nx, ny] : north) {
      if (nx <= px) continue;
      const long kb = key(nx, ny).first;
      if (kb < k && k <= kb + m) ++a;
    }
    return a;
  };

  SweepResult res;
  for (std::size_t j = 0; j + 1 < vertex.size(); ++j) {
    const auto [vx, vy] = vertex[j];
    const char in = j == 0 ? 'E' : steps[j - 1];
    const char out = steps[j];
    PointClass c = in == 'N' ? (out == 'E' ? PointClass::A : PointClass::C) : (out == 'N' ? PointClass::B : PointClass::D);
    res.points.push_back(SweptPoint{vx, vy, c, crossed(vx, vy)});
  }
  // Rightmost abscissa of the path at each height.
  std::vector<int> right(n + 1, m);
  for (int j = 0; j + 1 < static_cast<int>(vertex.size()); ++j)
    if (steps[j] == 'N') right[vertex[j].second] = vertex[j].first;
  for (int py = 0; py < n; ++py)
    for (int px = right[py] + 1; key(px, py).first >= stop; ++px) res.points.push_back(SweptPoint{px, py, PointClass::below, crossed(px, py)});

  std::sort(res.points.begin(), res.points.end(), [&](const SweptPoint& u, const SweptPoint& v) { return key(u.x, u.y) > key(v.x, v.y); });
  for (const auto& sp : res.points) {
    if (sp.cls == PointClass::C) res.q_exp -= sp.a;
    if (sp.cls == PointClass::D) res.q_exp += sp.a;
    if (sp.cls == PointClass::below) ++res.t_exp;
  }
  return res;
}

inline std::pair<long, long> sweep_exponents(const RectPath& p) {
  const auto r = sweep(p);
  return {r.q_exp, r.t_exp};
}

namespace detail {

inline void check_split_index(const RectPath& p, int k) {
  if (k < 0 || k >= p.m())
    throw IndexOutOfRange("split index " + std::to_string(k) + " outside [0, " + std::to_string(p.m()) + ")");
}

/// Position just after the k-th E step (0 for k = 0).
inline std::size_t after_kth_east(const RectPath& p, int k) {
  if (k == 0) return 0;
  int seen = 0;
  for (std::size_t i = 0; i < p.steps().size(); ++i)
    if (p.steps()[i] == 'E' && ++seen == k) return i + 1;
  return p.steps().size();
}

}  // namespace detail

/// Splits the path after its k-th E step and swaps the two pieces.
inline RectPath phi_k(const RectPath& p, int k) {
  detail::check_split_index(p, k);
  const std::size_t cut = detail::after_kth_east(p, k);
  const std::string& s = p.steps();
  return RectPath(p.m(), p.n(), s.substr(cut) + s.substr(0, cut));
}

/// Signed rank of the k-th E endpoint's distance from the diagonal among the
/// distances of all E endpoints.
inline int r_k(const RectPath& p, int k) {
  detail::check_split_index(p, k);
  if (k == 0) return 0;
  std::vector<long> d;
  int x = 0;
  int y = 0;
  for (char s : p.steps()) {
    if (s == 'N') {
      ++y;
    } else {
      ++x;
      d.push_back(static_cast<long>(p.m()) * y - static_cast<long>(p.n()) * x);
    }
  }
  const long dk = d[k - 1];
  int r = 0;
  if (dk >= 0) {
    for (long di : d)
      if (dk > di && di >= 0) ++r;
  } else {
    for (long di : d)
      if (0 >= di && di > dk) --r;
  }
  return r;
}

struct Orbit {
  RectPath base;
  std::vector<RectPath> members;  // members[k] = phi_k(base)
  std::vector<int> r;             // r[k] = r_k(base)
};

/// Orbits {phi_k(pi) : 0 <= k < m} of the Dyck paths pi, in path order.
inline std::vector<Orbit> orbit_partition(int m, int n) {
  if (std::gcd(m, n) != 1) throw NotCoprime("orbit partition needs coprime (m, n), got (" + std::to_string(m) + "," + std::to_string(n) + ")");
  std::vector<Orbit> out;
  for_each_rect_path(m, n, true, [&](const RectPath& p) {
    Orbit o{p, {}, {}};
    for (int k = 0; k < m; ++k) {
      o.members.push_back(phi_k(p, k));
      o.r.push_back(r_k(p, k));
    }
    out.push_back(std::move(o));
  });
  return out;
}

}  // namespace rectlab
