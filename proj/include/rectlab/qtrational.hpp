#pragma once

// The field Q(q,t) as reduced fractions of Z[q,t] polynomials.

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "poly_gcd.hpp"
#include "qtpoly.hpp"

namespace rectlab {

/// Fraction num/den kept in canonical form: gcd(num, den) = 1 in Z[q,t]
/// (integer content included) and den has a positive graded-lex leading
/// coefficient. Zero is 0/1. Equality is structural.
class QTRational {
 public:
  QTRational() : num_(), den_(1) {}
  QTRational(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit QTRational(mpz_class c) : num_(std::move(c)), den_(1) {}
  QTRational(const QTPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  QTRational(mpq_class c) : num_(c.get_num()), den_(c.get_den()) {}  // NOLINT(google-explicit-constructor)
  QTRational(QTPoly num, QTPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize_in_place(); }

  /// Builds num/den without reducing; only for callers that already hold a reduced pair.
  static QTRational from_reduced(QTPoly num, QTPoly den) {
    QTRational r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  static QTRational q() { return QTRational(QTPoly::q()); }
  static QTRational t() { return QTRational(QTPoly::t()); }

  const QTPoly& num() const { return num_; }
  const QTPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool has_q() const { return num_.has_q() || den_.has_q(); }

  QTRational operator-() const { return from_reduced(-num_, den_); }

  friend QTRational operator+(const QTRational& a, const QTRational& b) { return add(a, b, false); }
  friend QTRational operator-(const QTRational& a, const QTRational& b) { return add(a, b, true); }
  friend QTRational operator*(const QTRational& a, const QTRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return from_reduced(a.num_ * b.num_, QTPoly(1));
    // (a/b)(c/d) with cross-cancellation keeps both factors reduced.
    QTPoly g1 = gcd(a.num_, b.den_);
    QTPoly g2 = gcd(b.num_, a.den_);
    QTPoly n1 = g1.is_one() ? a.num_ : *divide_exact(a.num_, g1);
    QTPoly d2 = g1.is_one() ? b.den_ : *divide_exact(b.den_, g1);
    QTPoly n2 = g2.is_one() ? b.num_ : *divide_exact(b.num_, g2);
    QTPoly d1 = g2.is_one() ? a.den_ : *divide_exact(a.den_, g2);
    return from_reduced(n1 * n2, d1 * d2);
  }
  friend QTRational operator/(const QTRational& a, const QTRational& b) { return a * b.inverse(); }

  QTRational& operator+=(const QTRational& o) { return *this = *this + o; }
  QTRational& operator-=(const QTRational& o) { return *this = *this - o; }
  QTRational& operator*=(const QTRational& o) { return *this = *this * o; }
  QTRational& operator/=(const QTRational& o) { return *this = *this / o; }

  QTRational inverse() const {
    if (num_.is_zero()) throw ZeroDenominator("inverse of zero");
    QTRational r = from_reduced(den_, num_);
    r.fix_sign();
    return r;
  }

  /// Substitutes q -> q^k, t -> t^k.
  QTRational dilate(int k) const {
    if (k == 1) return *this;
    return QTRational(num_.dilate(k), den_.dilate(k));
  }
  QTRational swap_qt() const { return QTRational(num_.swap_qt(), den_.swap_qt()); }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

  friend bool operator==(const QTRational& a, const QTRational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const QTRational& a, const QTRational& b) { return !(a == b); }

 private:
  void fix_sign() {
    if (den_.leading().coeff < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  void normalize_in_place() {
    if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = QTPoly(1);
      return;
    }
    QTPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
    fix_sign();
  }

  static QTRational add(const QTRational& a, const QTRational& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.den_ == b.den_) {
      QTPoly n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.den_.is_one()) return from_reduced(std::move(n), a.den_);
      return QTRational(std::move(n), a.den_);
    }
    QTPoly g = gcd(a.den_, b.den_);
    if (g.is_one()) {
      QTPoly n = subtract ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
      QTRational r = from_reduced(std::move(n), a.den_ * b.den_);
      if (r.num_.is_zero()) r.den_ = QTPoly(1);
      return r;
    }
    QTPoly ad = *divide_exact(a.den_, g);
    QTPoly bd = *divide_exact(b.den_, g);
    QTPoly n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    if (n.is_zero()) return {};
    QTPoly g2 = gcd(n, g);
    if (!g2.is_one()) {
      n = *divide_exact(n, g2);
      g = *divide_exact(g, g2);
    }
    QTRational r = from_reduced(std::move(n), ad * bd * g);
    r.fix_sign();
    return r;
  }

  QTPoly num_;
  QTPoly den_;
};

/// Canonical form of num/den.
inline QTRational normalize(const QTPoly& num, const QTPoly& den) { return QTRational(num, den); }

/// Specializes q = 1 after cancelling every common (1-q) factor. The result
/// depends on t only.
inline QTRational limit_q_one(const QTRational& r) {
  // In reduced form (1-q) cannot divide both parts; a surviving factor in the
  // denominator is a genuine pole.
  QTPoly den_at_one = r.den().at_q_one();
  if (den_at_one.is_zero()) throw PoleAtQOne("denominator " + r.den().to_string() + " vanishes at q = 1");
  return QTRational(r.num().at_q_one(), den_at_one);
}

// ---- text grammar ----
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ['^' integer]
//   atom   := integer | 'q' | 't' | '(' expr ')'

namespace detail {

class RationalParser {
 public:
  explicit RationalParser(std::string_view s) : s_(s) {}

  QTRational parse() {
    QTRational r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }
  QTRational expr() {
    bool neg = eat('-');
    QTRational r = term();
    if (neg) r = -r;
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  QTRational term() {
    QTRational r = factor();
    for (;;) {
      if (eat('*'))
        r *= factor();
      else if (eat('/'))
        r /= factor();
      else
        return r;
    }
  }
  QTRational factor() {
    QTRational base = atom();
    if (eat('^')) {
      mpz_class e = integer();
      if (!e.fits_sint_p() || e > 10000) fail("exponent too large");
      QTRational r(1);
      for (long i = 0; i < e.get_si(); ++i) r *= base;
      return r;
    }
    return base;
  }
  QTRational atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QTRational r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'q') {
      ++pos_;
      return QTRational::q();
    }
    if (c == 't') {
      ++pos_;
      return QTRational::t();
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return QTRational(integer());
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline QTRational parse_rational(std::string_view s) { return detail::RationalParser(s).parse(); }

inline QTPoly parse_poly(std::string_view s) {
  QTRational r = parse_rational(s);
  if (!r.is_polynomial()) throw ParseError("not a polynomial: \"" + std::string(s) + "\"");
  return r.num();
}

}  // namespace rectlab
