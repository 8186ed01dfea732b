#pragma once

// Coefficient fields for the symmetric-function layer. Each field type knows
// how to embed exact data (integers, rationals, elements of Q(q,t)) into its
// scalars, so algebraic code is written once against this contract.

#include <concepts>
#include <string>

#include "modular.hpp"
#include "qtrational.hpp"

namespace rectlab {

template <class F>
concept CoefficientField = requires(const F& f, const typename F::scalar& a, const QTRational& r, const mpq_class& c) {
  { f.zero() } -> std::same_as<typename F::scalar>;
  { f.one() } -> std::same_as<typename F::scalar>;
  { f.from_number(c) } -> std::same_as<typename F::scalar>;
  { f.embed(r) } -> std::same_as<typename F::scalar>;
  { f.embed(r, 2) } -> std::same_as<typename F::scalar>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.render(a) } -> std::convertible_to<std::string>;
  { a + a } -> std::same_as<typename F::scalar>;
  { a - a } -> std::same_as<typename F::scalar>;
  { a * a } -> std::same_as<typename F::scalar>;
  { a / a } -> std::same_as<typename F::scalar>;
  { -a } -> std::same_as<typename F::scalar>;
  { a == a } -> std::convertible_to<bool>;
};

/// Q(q,t) itself.
struct ExactField {
  using scalar = QTRational;
  static constexpr const char* name = "exact";

  scalar zero() const { return {}; }
  scalar one() const { return 1; }
  scalar from_number(const mpq_class& c) const { return QTRational(c); }
  scalar embed(const QTRational& r) const { return r; }
  /// r(q^k, t^k).
  scalar embed(const QTRational& r, int k) const { return r.dilate(k); }
  bool is_zero(const scalar& a) const { return a.is_zero(); }
  std::string render(const scalar& a) const { return a.to_string(); }
  std::string key() const { return "exact"; }
  friend bool operator==(const ExactField&, const ExactField&) { return true; }
};

/// Z/p with q, t specialised to (q0, t0).
struct ModularField {
  using scalar = ModScalar;
  static constexpr const char* name = "modular";

  ModContext ctx;

  explicit ModularField(ModContext c) : ctx(c) {}

  scalar zero() const { return ModScalar(0, ctx); }
  scalar one() const { return ModScalar(1, ctx); }
  scalar from_number(const mpq_class& c) const {
    return ModScalar(mpz_mod(c.get_num(), ctx.prime), ctx) / ModScalar(mpz_mod(c.get_den(), ctx.prime), ctx);
  }
  scalar embed(const QTRational& r) const { return eval_mod(r, ctx); }
  scalar embed(const QTRational& r, int k) const {
    ModContext c = ctx;
    c.q0 = powmod(ctx.q0, k, ctx.prime);
    c.t0 = powmod(ctx.t0, k, ctx.prime);
    std::uint64_t d = r.den().eval_mod(c.prime, c.q0, c.t0);
    if (d == 0) throw DenominatorVanishes(r.den().to_string() + " at " + c.to_string());
    return ModScalar(r.num().eval_mod(c.prime, c.q0, c.t0), ctx) / ModScalar(d, ctx);
  }
  bool is_zero(const scalar& a) const { return a.is_zero(); }
  std::string render(const scalar& a) const { return a.to_string(); }
  std::string key() const { return "modular:" + ctx.to_string(); }
  friend bool operator==(const ModularField& a, const ModularField& b) { return a.ctx == b.ctx; }
};

static_assert(CoefficientField<ExactField>);
static_assert(CoefficientField<ModularField>);

}  // namespace rectlab
