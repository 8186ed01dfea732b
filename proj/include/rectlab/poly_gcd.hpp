#pragma once

// GCD and exact division in Z[q,t].
//
// The fast path is the heuristic GCD of Char, Geddes and Gonnet applied one
// variable at a time (evaluate the outer variable at a large integer, recurse,
// then recover the answer from its balanced xi-adic expansion and confirm it by
// trial division). A primitive pseudo-remainder sequence is kept as the fallback
// and as an independent route for testing.

#include <optional>
#include <utility>
#include <vector>

#include "qtpoly.hpp"

namespace rectlab {
namespace detail {

using UPoly = std::vector<mpz_class>;  // dense, index = exponent, no trailing zeros
using BPoly = std::vector<UPoly>;      // index = q exponent, coefficient in Z[t]

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline void trim(BPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}
inline int deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }
inline int deg(const BPoly& a) { return static_cast<int>(a.size()) - 1; }

inline UPoly u_add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}
inline UPoly u_sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}
inline UPoly u_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  return r;
}
inline UPoly u_scale(const UPoly& a, const mpz_class& c) {
  if (c == 0) return {};
  UPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}
inline UPoly u_divexact_ground(const UPoly& a, const mpz_class& c) {
  UPoly r = a;
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}
inline mpz_class u_content(const UPoly& a) {
  mpz_class g = 0;
  for (const auto& x : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}
inline UPoly u_primitive(const UPoly& a) {
  if (a.empty()) return a;
  mpz_class c = u_content(a);
  if (a.back() < 0) c = -c;
  return u_divexact_ground(a, c);
}
inline mpz_class u_max_norm(const UPoly& a) {
  mpz_class m = 0;
  for (const auto& x : a)
    if (abs(x) > m) m = abs(x);
  return m;
}
inline mpz_class u_eval(const UPoly& a, const mpz_class& x) {
  mpz_class r = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    r *= x;
    r += a[i];
  }
  return r;
}

/// Quotient a / b if b divides a exactly in Z[x].
inline std::optional<UPoly> u_divexact(const UPoly& a, const UPoly& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return UPoly{};
  if (a.size() < b.size()) return std::nullopt;
  UPoly r = a;
  UPoly quo(a.size() - b.size() + 1);
  const mpz_class& lc = b.back();
  mpz_class c;
  for (std::size_t i = quo.size(); i-- > 0;) {
    const mpz_class& top = r[i + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    quo[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(r[i + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
  }
  for (const auto& x : r)
    if (x != 0) return std::nullopt;
  trim(quo);
  return quo;
}

/// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b.
inline UPoly u_prem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  int da = deg(a);
  if (da < db) return a;
  const mpz_class& lc = b.back();
  int e = da - db + 1;
  while (!a.empty() && deg(a) >= db) {
    da = deg(a);
    mpz_class c = a.back();
    for (auto& x : a) x *= lc;
    for (int j = 0; j <= db; ++j) mpz_submul(a[da - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    trim(a);
    --e;
  }
  mpz_class f;
  mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), e);
  for (auto& x : a) x *= f;
  return a;
}

inline UPoly u_normalize_sign(UPoly a) {
  if (!a.empty() && a.back() < 0)
    for (auto& x : a) x = -x;
  return a;
}

/// Primitive PRS gcd in Z[x]; leading coefficient positive.
inline UPoly u_gcd_prs(const UPoly& a0, const UPoly& b0) {
  if (a0.empty()) return u_normalize_sign(a0.empty() ? b0 : a0);
  if (b0.empty()) return u_normalize_sign(a0);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), u_content(a0).get_mpz_t(), u_content(b0).get_mpz_t());
  UPoly a = u_primitive(a0);
  UPoly b = u_primitive(b0);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    UPoly r = u_prem(a, b);
    a = std::move(b);
    b = u_primitive(r);
  }
  return u_scale(u_primitive(a), c);
}

inline mpz_class symmetric_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

inline UPoly u_interpolate(mpz_class h, const mpz_class& x) {
  UPoly f;
  while (h != 0) {
    mpz_class g = symmetric_mod(h, x);
    f.push_back(g);
    h -= g;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
  }
  return u_normalize_sign(f);
}

inline mpz_class heuristic_start(const mpz_class& fnorm, const mpz_class& gnorm, const mpz_class& flc,
                                 const mpz_class& glc, int slack) {
  mpz_class b = 2 * std::min(fnorm, gnorm) + 29;
  mpz_class sq = sqrt(b);
  mpz_class x = std::min<mpz_class>(b, mpz_class(99 * sq));
  mpz_class alt = 2 * std::min(fnorm / abs(flc), gnorm / abs(glc)) + slack;
  return std::max(x, alt);
}

inline mpz_class heuristic_grow(const mpz_class& x) {
  mpz_class s = sqrt(sqrt(x));
  return 73794 * x * s / 27011;
}

constexpr int kHeuristicAttempts = 6;

inline std::optional<UPoly> u_gcd_heuristic(const UPoly& f0, const UPoly& g0) {
  mpz_class cont;
  mpz_gcd(cont.get_mpz_t(), u_content(f0).get_mpz_t(), u_content(g0).get_mpz_t());
  UPoly f = u_divexact_ground(f0, cont);
  UPoly g = u_divexact_ground(g0, cont);
  if (deg(f) == 0 || deg(g) == 0) return UPoly{cont};
  const mpz_class fn = u_max_norm(f);
  const mpz_class gn = u_max_norm(g);
  mpz_class x = heuristic_start(fn, gn, f.back(), g.back(), 2);
  for (int attempt = 0; attempt < kHeuristicAttempts; ++attempt) {
    mpz_class ff = u_eval(f, x);
    mpz_class gg = u_eval(g, x);
    if (ff != 0 && gg != 0) {
      mpz_class h;
      mpz_gcd(h.get_mpz_t(), ff.get_mpz_t(), gg.get_mpz_t());
      mpz_class cff = ff / h;
      mpz_class cfg = gg / h;
      UPoly hp = u_primitive(u_interpolate(h, x));
      if (auto qf = u_divexact(f, hp)) {
        if (auto qg = u_divexact(g, hp)) return u_scale(hp, cont);
      }
      UPoly cf = u_interpolate(cff, x);
      if (auto hh = u_divexact(f, cf)) {
        if (auto qg = u_divexact(g, *hh)) return u_scale(u_normalize_sign(*hh), cont);
      }
      UPoly cg = u_interpolate(cfg, x);
      if (auto hh = u_divexact(g, cg)) {
        if (auto qf = u_divexact(f, *hh)) return u_scale(u_normalize_sign(*hh), cont);
      }
    }
    x = heuristic_grow(x);
  }
  return std::nullopt;
}

inline UPoly u_gcd(const UPoly& a, const UPoly& b) {
  if (a.empty()) return u_normalize_sign(b);
  if (b.empty()) return u_normalize_sign(a);
  if (auto h = u_gcd_heuristic(a, b)) return *h;
  return u_gcd_prs(a, b);
}

// ---- bivariate (outer variable q, coefficients in Z[t]) ----

inline BPoly to_bpoly(const QTPoly& p) {
  BPoly r(p.is_zero() ? 0 : p.degree_q() + 1);
  for (const auto& x : p.terms()) {
    auto& row = r[x.q];
    if (static_cast<int>(row.size()) <= x.t) row.resize(x.t + 1);
    row[x.t] = x.coeff;
  }
  return r;
}

inline QTPoly from_bpoly(const BPoly& b) {
  std::vector<std::vector<mpz_class>> dense(b.begin(), b.end());
  return QTPoly::from_dense(dense);
}

inline mpz_class b_content(const BPoly& a) {
  mpz_class g = 0;
  for (const auto& row : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), u_content(row).get_mpz_t());
    if (g == 1) break;
  }
  return g;
}
inline BPoly b_divexact_ground(const BPoly& a, const mpz_class& c) {
  BPoly r = a;
  for (auto& row : r) row = u_divexact_ground(row, c);
  return r;
}
inline mpz_class b_max_norm(const BPoly& a) {
  mpz_class m = 0;
  for (const auto& row : a) m = std::max(m, u_max_norm(row));
  return m;
}
inline const mpz_class& b_ground_lc(const BPoly& a) { return a.back().back(); }

inline UPoly b_eval_outer(const BPoly& a, const mpz_class& x) {
  UPoly r;
  for (std::size_t i = a.size(); i-- > 0;) {
    for (auto& c : r) c *= x;
    r = u_add(r, a[i]);
  }
  return r;
}

inline BPoly b_normalize_sign(BPoly a) {
  if (!a.empty() && b_ground_lc(a) < 0)
    for (auto& row : a)
      for (auto& c : row) c = -c;
  return a;
}

inline BPoly b_primitive_ground(const BPoly& a) {
  if (a.empty()) return a;
  mpz_class c = b_content(a);
  if (b_ground_lc(a) < 0) c = -c;
  return b_divexact_ground(a, c);
}

/// Recovers a bivariate polynomial from h(t) = H(xi, t) by balanced xi-adic expansion.
inline BPoly b_interpolate(UPoly h, const mpz_class& x) {
  BPoly f;
  while (!h.empty()) {
    UPoly g(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) g[i] = symmetric_mod(h[i], x);
    trim(g);
    f.push_back(g);
    h = u_sub(h, g);
    for (auto& c : h) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
  }
  return b_normalize_sign(f);
}

/// Quotient a / b if b divides a exactly in Z[t][q].
inline std::optional<BPoly> b_divexact(const BPoly& a, const BPoly& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return BPoly{};
  if (a.size() < b.size()) return std::nullopt;
  BPoly r = a;
  BPoly quo(a.size() - b.size() + 1);
  const UPoly& lc = b.back();
  for (std::size_t i = quo.size(); i-- > 0;) {
    const UPoly& top = r[i + b.size() - 1];
    if (top.empty()) continue;
    auto c = u_divexact(top, lc);
    if (!c) return std::nullopt;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = u_sub(r[i + j], u_mul(*c, b[j]));
    quo[i] = std::move(*c);
  }
  for (const auto& row : r)
    if (!row.empty()) return std::nullopt;
  trim(quo);
  return quo;
}

inline BPoly b_scale_ground(const BPoly& a, const mpz_class& c) {
  BPoly r = a;
  for (auto& row : r) row = u_scale(row, c);
  trim(r);
  return r;
}

inline std::optional<BPoly> b_gcd_heuristic(const BPoly& f0, const BPoly& g0) {
  mpz_class cont;
  mpz_gcd(cont.get_mpz_t(), b_content(f0).get_mpz_t(), b_content(g0).get_mpz_t());
  BPoly f = b_divexact_ground(f0, cont);
  BPoly g = b_divexact_ground(g0, cont);
  const mpz_class fn = b_max_norm(f);
  const mpz_class gn = b_max_norm(g);
  mpz_class x = heuristic_start(fn, gn, b_ground_lc(f), b_ground_lc(g), 4);
  for (int attempt = 0; attempt < kHeuristicAttempts; ++attempt) {
    UPoly ff = b_eval_outer(f, x);
    UPoly gg = b_eval_outer(g, x);
    if (!ff.empty() && !gg.empty()) {
      UPoly h = u_gcd(ff, gg);
      BPoly hp = b_primitive_ground(b_interpolate(h, x));
      if (!hp.empty()) {
        if (auto qf = b_divexact(f, hp)) {
          if (auto qg = b_divexact(g, hp)) return b_scale_ground(hp, cont);
        }
      }
      if (auto cff = u_divexact(ff, h)) {
        BPoly cf = b_interpolate(*cff, x);
        if (!cf.empty()) {
          if (auto hh = b_divexact(f, cf)) {
            if (auto qg = b_divexact(g, *hh)) return b_scale_ground(b_normalize_sign(*hh), cont);
          }
        }
      }
      if (auto cfg = u_divexact(gg, h)) {
        BPoly cg = b_interpolate(*cfg, x);
        if (!cg.empty()) {
          if (auto hh = b_divexact(g, cg)) {
            if (auto qf = b_divexact(f, *hh)) return b_scale_ground(b_normalize_sign(*hh), cont);
          }
        }
      }
    }
    x = heuristic_grow(x);
  }
  return std::nullopt;
}

// Primitive PRS over Z[t][q], the slow but unconditional route.

inline UPoly b_content_t(const BPoly& a) {
  UPoly g;
  for (const auto& row : a) {
    g = u_gcd_prs(g, row);
    if (g.size() == 1 && g[0] == 1) break;
  }
  return g;
}

inline BPoly b_divexact_by_upoly(const BPoly& a, const UPoly& c) {
  BPoly r;
  r.reserve(a.size());
  for (const auto& row : a) {
    auto d = u_divexact(row, c);
    if (!d) throw std::logic_error("b_divexact_by_upoly: not divisible");
    r.push_back(std::move(*d));
  }
  trim(r);
  return r;
}

inline BPoly b_primitive_t(const BPoly& a) {
  if (a.empty()) return a;
  UPoly c = b_content_t(a);
  if (a.back().back() < 0) c = u_scale(c, mpz_class(-1));
  return b_divexact_by_upoly(a, c);
}

inline BPoly b_prem(BPoly a, const BPoly& b) {
  const int db = deg(b);
  const UPoly& lc = b.back();
  while (!a.empty() && deg(a) >= db) {
    const int da = deg(a);
    UPoly c = a.back();
    for (auto& row : a) row = u_mul(row, lc);
    for (int j = 0; j <= db; ++j) a[da - db + j] = u_sub(a[da - db + j], u_mul(c, b[j]));
    trim(a);
  }
  return a;
}

inline BPoly b_gcd_prs(const BPoly& a0, const BPoly& b0) {
  if (a0.empty()) return b_normalize_sign(b0);
  if (b0.empty()) return b_normalize_sign(a0);
  UPoly cg = u_gcd_prs(b_content_t(a0), b_content_t(b0));
  BPoly a = b_primitive_t(a0);
  BPoly b = b_primitive_t(b0);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    BPoly r = b_prem(a, b);
    a = std::move(b);
    b = b_primitive_t(r);
  }
  a = b_primitive_t(a);
  BPoly out;
  for (const auto& row : a) out.push_back(u_mul(row, cg));
  trim(out);
  return b_normalize_sign(out);
}

}  // namespace detail

/// Exact quotient a / b in Z[q,t], or nullopt when b does not divide a.
inline std::optional<QTPoly> divide_exact(const QTPoly& a, const QTPoly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
  if (a.is_zero()) return QTPoly{};
  if (b.is_constant()) {
    const mpz_class& c = b.leading().coeff;
    for (const auto& x : a.terms())
      if (!mpz_divisible_p(x.coeff.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
    return a.divided_exact(c);
  }
  if (b.is_monomial()) {
    const Term& m = b.leading();
    std::vector<Term> terms;
    for (const auto& x : a.terms()) {
      if (x.q < m.q || x.t < m.t || !mpz_divisible_p(x.coeff.get_mpz_t(), m.coeff.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), x.coeff.get_mpz_t(), m.coeff.get_mpz_t());
      terms.push_back(Term{x.q - m.q, x.t - m.t, c});
    }
    return QTPoly::from_terms(std::move(terms));
  }
  auto r = detail::b_divexact(detail::to_bpoly(a), detail::to_bpoly(b));
  if (!r) return std::nullopt;
  return detail::from_bpoly(*r);
}

inline QTPoly make_leading_positive(QTPoly p) {
  if (!p.is_zero() && p.leading().coeff < 0) return -p;
  return p;
}

enum class GcdRoute { heuristic, prs };

/// gcd in Z[q,t], normalized to a positive graded-lex leading coefficient.
/// gcd(0, 0) = 0.
inline QTPoly gcd(const QTPoly& a, const QTPoly& b, GcdRoute route = GcdRoute::heuristic) {
  if (a.is_zero()) return make_leading_positive(b);
  if (b.is_zero()) return make_leading_positive(a);
  if (a.is_monomial() || b.is_monomial()) {
    const QTPoly& m = a.is_monomial() ? a : b;
    const QTPoly& o = a.is_monomial() ? b : a;
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), m.leading().coeff.get_mpz_t(), o.content().get_mpz_t());
    return QTPoly::monomial(c, std::min(m.leading().q, o.min_q()), std::min(m.leading().t, o.min_t()));
  }
  // Pull out common monomial factors so both dense forms start at degree 0.
  const int mq = std::min(a.min_q(), b.min_q());
  const int mt = std::min(a.min_t(), b.min_t());
  const QTPoly as = a.shifted(-a.min_q(), -a.min_t());
  const QTPoly bs = b.shifted(-b.min_q(), -b.min_t());
  detail::BPoly g;
  if (route == GcdRoute::heuristic) {
    auto h = detail::b_gcd_heuristic(detail::to_bpoly(as), detail::to_bpoly(bs));
    g = h ? *h : detail::b_gcd_prs(detail::to_bpoly(as), detail::to_bpoly(bs));
  } else {
    g = detail::b_gcd_prs(detail::to_bpoly(as), detail::to_bpoly(bs));
  }
  return make_leading_positive(detail::from_bpoly(g).shifted(mq, mt));
}

}  // namespace rectlab
