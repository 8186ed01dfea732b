#pragma once

// Residues modulo a prime, attached to an evaluation point (q0, t0). Used to
// test identities in Q(q,t) by evaluating both sides at random points.

#include <cstdint>
#include <random>
#include <string>

#include "errors.hpp"
#include "qtrational.hpp"

namespace rectlab {

/// 2^61 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

struct ModContext {
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t q0 = 0;
  std::uint64_t t0 = 0;

  friend bool operator==(const ModContext&, const ModContext&) = default;

  std::string to_string() const {
    return "p=" + std::to_string(prime) + ",q0=" + std::to_string(q0) + ",t0=" + std::to_string(t0);
  }
};

inline bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class ModScalar {
 public:
  ModScalar() = default;
  ModScalar(std::uint64_t value, const ModContext& ctx) : value_(value % ctx.prime), ctx_(ctx) {}

  std::uint64_t value() const { return value_; }
  const ModContext& context() const { return ctx_; }
  bool is_zero() const { return value_ == 0; }

  friend ModScalar operator+(const ModScalar& a, const ModScalar& b) {
    check(a, b);
    std::uint64_t v = a.value_ + b.value_;
    if (v >= a.ctx_.prime) v -= a.ctx_.prime;
    return raw(v, a.ctx_);
  }
  friend ModScalar operator-(const ModScalar& a, const ModScalar& b) {
    check(a, b);
    std::uint64_t v = a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.ctx_.prime - b.value_;
    return raw(v, a.ctx_);
  }
  friend ModScalar operator*(const ModScalar& a, const ModScalar& b) {
    check(a, b);
    return raw(mulmod(a.value_, b.value_, a.ctx_.prime), a.ctx_);
  }
  friend ModScalar operator/(const ModScalar& a, const ModScalar& b) { return a * b.inverse(); }
  ModScalar operator-() const { return raw(value_ == 0 ? 0 : ctx_.prime - value_, ctx_); }

  ModScalar& operator+=(const ModScalar& o) { return *this = *this + o; }
  ModScalar& operator-=(const ModScalar& o) { return *this = *this - o; }
  ModScalar& operator*=(const ModScalar& o) { return *this = *this * o; }
  ModScalar& operator/=(const ModScalar& o) { return *this = *this / o; }

  ModScalar inverse() const {
    if (value_ == 0) throw DenominatorVanishes("inverse of 0 mod " + std::to_string(ctx_.prime));
    return raw(powmod(value_, ctx_.prime - 2, ctx_.prime), ctx_);
  }

  std::string to_string() const { return std::to_string(value_); }

  friend bool operator==(const ModScalar& a, const ModScalar& b) {
    check(a, b);
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ModScalar& a, const ModScalar& b) { return !(a == b); }

 private:
  static ModScalar raw(std::uint64_t v, const ModContext& ctx) {
    ModScalar r;
    r.value_ = v;
    r.ctx_ = ctx;
    return r;
  }
  static void check(const ModScalar& a, const ModScalar& b) {
    if (!(a.ctx_ == b.ctx_)) throw ContextMismatch(a.ctx_.to_string() + " vs " + b.ctx_.to_string());
  }

  std::uint64_t value_ = 0;
  ModContext ctx_{};
};

/// num(q0,t0) / den(q0,t0) mod p.
inline ModScalar eval_mod(const QTRational& r, const ModContext& ctx) {
  std::uint64_t d = r.den().eval_mod(ctx.prime, ctx.q0, ctx.t0);
  if (d == 0) throw DenominatorVanishes(r.den().to_string() + " at " + ctx.to_string());
  return ModScalar(r.num().eval_mod(ctx.prime, ctx.q0, ctx.t0), ctx) / ModScalar(d, ctx);
}

inline ModScalar eval_mod(const QTPoly& p, const ModContext& ctx) {
  return ModScalar(p.eval_mod(ctx.prime, ctx.q0, ctx.t0), ctx);
}

/// Draws a point with q0, t0 in [2, p-1] from a seeded generator.
inline ModContext sample_point(std::mt19937_64& rng, std::uint64_t prime = kDefaultPrime) {
  std::uniform_int_distribution<std::uint64_t> dist(2, prime - 1);
  ModContext ctx;
  ctx.prime = prime;
  ctx.q0 = dist(rng);
  ctx.t0 = dist(rng);
  return ctx;
}

}  // namespace rectlab
