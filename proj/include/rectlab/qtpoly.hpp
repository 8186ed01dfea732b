#pragma once

// Bivariate polynomials in q, t with arbitrary-precision integer coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rectlab {

struct Term {
  int q = 0;
  int t = 0;
  mpz_class coeff;
};

// Graded-lex with q > t: total degree first, then the q exponent.
inline bool graded_lex_greater(int q1, int t1, int q2, int t2) {
  const int d1 = q1 + t1;
  const int d2 = q2 + t2;
  if (d1 != d2) return d1 > d2;
  return q1 > q2;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t mpz_mod(const mpz_class& c, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8, "needs a 64-bit unsigned long");
  return mpz_fdiv_ui(c.get_mpz_t(), p);
}

/// Element of Z[q,t]. Terms are kept sorted descending in graded-lex order with
/// no zero coefficients, so structural equality is value equality.
class QTPoly {
 public:
  QTPoly() = default;
  explicit QTPoly(long c) {
    if (c != 0) terms_.push_back(Term{0, 0, mpz_class(c)});
  }
  explicit QTPoly(mpz_class c) {
    if (c != 0) terms_.push_back(Term{0, 0, std::move(c)});
  }

  static QTPoly monomial(mpz_class c, int qe, int te) {
    if (qe < 0 || te < 0) throw std::invalid_argument("QTPoly: negative exponent");
    QTPoly r;
    if (c != 0) r.terms_.push_back(Term{qe, te, std::move(c)});
    return r;
  }
  static QTPoly q() { return monomial(1, 1, 0); }
  static QTPoly t() { return monomial(1, 0, 1); }

  /// Builds a polynomial from unsorted terms, merging duplicates and dropping zeros.
  static QTPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return graded_lex_greater(a.q, a.t, b.q, b.t);
    });
    QTPoly r;
    for (auto& term : terms) {
      if (term.q < 0 || term.t < 0) throw std::invalid_argument("QTPoly: negative exponent");
      if (!r.terms_.empty() && r.terms_.back().q == term.q && r.terms_.back().t == term.t) {
        r.terms_.back().coeff += term.coeff;
        if (r.terms_.back().coeff == 0) r.terms_.pop_back();
      } else if (term.coeff != 0) {
        r.terms_.push_back(std::move(term));
      }
    }
    return r;
  }

  /// Dense constructor: dense[i][j] is the coefficient of q^i t^j.
  static QTPoly from_dense(const std::vector<std::vector<mpz_class>>& dense) {
    std::vector<Term> terms;
    for (int i = 0; i < static_cast<int>(dense.size()); ++i)
      for (int j = 0; j < static_cast<int>(dense[i].size()); ++j)
        if (dense[i][j] != 0) terms.push_back(Term{i, j, dense[i][j]});
    QTPoly r;
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return graded_lex_greater(a.q, a.t, b.q, b.t);
    });
    r.terms_ = std::move(terms);
    return r;
  }

  std::vector<std::vector<mpz_class>> to_dense() const {
    std::vector<std::vector<mpz_class>> dense(degree_q() + 1, std::vector<mpz_class>(degree_t() + 1));
    for (const auto& term : terms_) dense[term.q][term.t] = term.coeff;
    return dense;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].q == 0 && terms_[0].t == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }
  bool has_q() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& x) { return x.q > 0; });
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  mpz_class constant_term() const {
    if (!terms_.empty() && terms_.back().q == 0 && terms_.back().t == 0) return terms_.back().coeff;
    return 0;
  }

  int degree_q() const {
    int d = 0;
    for (const auto& x : terms_) d = std::max(d, x.q);
    return d;
  }
  int degree_t() const {
    int d = 0;
    for (const auto& x : terms_) d = std::max(d, x.t);
    return d;
  }
  int min_q() const {
    if (terms_.empty()) return 0;
    int d = terms_.front().q;
    for (const auto& x : terms_) d = std::min(d, x.q);
    return d;
  }
  int min_t() const {
    if (terms_.empty()) return 0;
    int d = terms_.front().t;
    for (const auto& x : terms_) d = std::min(d, x.t);
    return d;
  }
  int total_degree() const { return terms_.empty() ? 0 : terms_.front().q + terms_.front().t; }

  /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& x : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.coeff.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  QTPoly operator-() const {
    QTPoly r = *this;
    for (auto& x : r.terms_) x.coeff = -x.coeff;
    return r;
  }

  QTPoly& operator+=(const QTPoly& o) {
    *this = merge(*this, o, false);
    return *this;
  }
  QTPoly& operator-=(const QTPoly& o) {
    *this = merge(*this, o, true);
    return *this;
  }
  friend QTPoly operator+(const QTPoly& a, const QTPoly& b) { return merge(a, b, false); }
  friend QTPoly operator-(const QTPoly& a, const QTPoly& b) { return merge(a, b, true); }

  friend QTPoly operator*(const QTPoly& a, const QTPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
    if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
    if (a.terms_.size() * b.terms_.size() <= 16) {
      std::vector<Term> terms;
      terms.reserve(a.terms_.size() * b.terms_.size());
      for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) terms.push_back(Term{x.q + y.q, x.t + y.t, x.coeff * y.coeff});
      return from_terms(std::move(terms));
    }
    const int dq = a.degree_q() + b.degree_q();
    const int dt = a.degree_t() + b.degree_t();
    std::vector<std::vector<mpz_class>> acc(dq + 1, std::vector<mpz_class>(dt + 1));
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) mpz_addmul(acc[x.q + y.q][x.t + y.t].get_mpz_t(), x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
    return from_dense(acc);
  }
  QTPoly& operator*=(const QTPoly& o) {
    *this = *this * o;
    return *this;
  }

  QTPoly scaled(const mpz_class& c) const {
    if (c == 0) return {};
    QTPoly r = *this;
    for (auto& x : r.terms_) x.coeff *= c;
    return r;
  }
  /// Divides every coefficient by c; c must divide each of them.
  QTPoly divided_exact(const mpz_class& c) const {
    QTPoly r = *this;
    for (auto& x : r.terms_) mpz_divexact(x.coeff.get_mpz_t(), x.coeff.get_mpz_t(), c.get_mpz_t());
    return r;
  }
  QTPoly shifted(int dq, int dt) const {
    QTPoly r = *this;
    for (auto& x : r.terms_) {
      x.q += dq;
      x.t += dt;
      if (x.q < 0 || x.t < 0) throw std::invalid_argument("QTPoly: shift below zero");
    }
    return r;
  }

  /// Substitutes q -> q^k, t -> t^k.
  QTPoly dilate(int k) const {
    if (k < 1) throw std::invalid_argument("QTPoly::dilate: k must be positive");
    QTPoly r = *this;
    for (auto& x : r.terms_) {
      x.q *= k;
      x.t *= k;
    }
    return r;
  }
  /// Substitutes q -> t, t -> q.
  QTPoly swap_qt() const {
    std::vector<Term> terms = terms_;
    for (auto& x : terms) std::swap(x.q, x.t);
    return from_terms(std::move(terms));
  }
  /// Substitutes q = 1.
  QTPoly at_q_one() const {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& x : terms_) terms.push_back(Term{0, x.t, x.coeff});
    return from_terms(std::move(terms));
  }

  mpz_class eval(const mpz_class& qv, const mpz_class& tv) const {
    mpz_class r = 0;
    mpz_class pq, pt;
    for (const auto& x : terms_) {
      mpz_pow_ui(pq.get_mpz_t(), qv.get_mpz_t(), x.q);
      mpz_pow_ui(pt.get_mpz_t(), tv.get_mpz_t(), x.t);
      r += x.coeff * pq * pt;
    }
    return r;
  }

  std::uint64_t eval_mod(std::uint64_t p, std::uint64_t q0, std::uint64_t t0) const {
    std::uint64_t r = 0;
    for (const auto& x : terms_) {
      std::uint64_t v = mulmod(mpz_mod(x.coeff, p), mulmod(powmod(q0, x.q, p), powmod(t0, x.t, p), p), p);
      r += v;
      if (r >= p) r -= p;
    }
    return r;
  }

  /// Canonical rendering, e.g. "q^2 + q*t + 3*q + t + 2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& x : terms_) {
      const bool neg = x.coeff < 0;
      mpz_class mag = abs(x.coeff);
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      if (x.q > 0) mono += x.q == 1 ? "q" : "q^" + std::to_string(x.q);
      if (x.t > 0) {
        if (!mono.empty()) mono += "*";
        mono += x.t == 1 ? "t" : "t^" + std::to_string(x.t);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

  friend bool operator==(const QTPoly& a, const QTPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const auto& x = a.terms_[i];
      const auto& y = b.terms_[i];
      if (x.q != y.q || x.t != y.t || x.coeff != y.coeff) return false;
    }
    return true;
  }
  friend bool operator!=(const QTPoly& a, const QTPoly& b) { return !(a == b); }

 private:
  static QTPoly merge(const QTPoly& a, const QTPoly& b, bool subtract) {
    QTPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && graded_lex_greater(a.terms_[i].q, a.terms_[i].t, b.terms_[j].q, b.terms_[j].t))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() ||
                 graded_lex_greater(b.terms_[j].q, b.terms_[j].t, a.terms_[i].q, a.terms_[i].t)) {
        Term y = b.terms_[j++];
        if (subtract) y.coeff = -y.coeff;
        r.terms_.push_back(std::move(y));
      } else {
        Term x = a.terms_[i++];
        if (subtract)
          x.coeff -= b.terms_[j].coeff;
        else
          x.coeff += b.terms_[j].coeff;
        ++j;
        if (x.coeff != 0) r.terms_.push_back(std::move(x));
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

/// q-integer [k]_q = 1 + q + ... + q^{k-1}.
inline QTPoly q_integer(int k) {
  std::vector<Term> terms;
  for (int i = 0; i < k; ++i) terms.push_back(Term{i, 0, 1});
  return QTPoly::from_terms(std::move(terms));
}

/// [m]_q / [d]_q for d | m, i.e. 1 + q^d + ... + q^{m-d}.
inline QTPoly q_integer_ratio(int m, int d) {
  if (d <= 0 || m % d != 0) throw std::invalid_argument("q_integer_ratio: d must divide m");
  std::vector<Term> terms;
  for (int i = 0; i < m; i += d) terms.push_back(Term{i, 0, 1});
  return QTPoly::from_terms(std::move(terms));
}

}  // namespace rectlab
