#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace rectlab;

namespace {

QTPoly one_minus(const QTPoly& p) { return QTPoly(1) - p; }
const QTPoly q = QTPoly::q();
const QTPoly t = QTPoly::t();

QTPoly pow(const QTPoly& p, int k) {
  QTPoly out(1);
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

}  // namespace

TEST(Normalize, CancelsCommonFactor) {
  EXPECT_EQ(QTRational(one_minus(q * q), one_minus(q)), QTRational(QTPoly(1) + q));
}

TEST(Normalize, IdentityCase) {
  const QTPoly m = one_minus(q) * one_minus(t);
  EXPECT_TRUE(QTRational(m, m).is_one());
}

TEST(Normalize, SignGoesToNumerator) {
  EXPECT_EQ(QTRational(q - t, t - q), QTRational(-1));
  const QTRational r(QTPoly(1), -q);
  EXPECT_GT(r.den().leading().coeff, 0);
}

TEST(Normalize, ZeroDenominatorThrows) { EXPECT_THROW(QTRational(q, QTPoly()), ZeroDenominator); }

TEST(EvalMod, PolynomialAtPoint) {
  const ModContext ctx{101, 2, 5};
  EXPECT_EQ(eval_mod(QTRational(QTPoly(1) + q), ctx).value(), 3u);
}

TEST(EvalMod, VanishingDenominator) {
  const ModContext ctx{101, 1, 5};
  EXPECT_THROW(eval_mod(QTRational(QTPoly(1), one_minus(q)), ctx), DenominatorVanishes);
}

TEST(EvalMod, NormalizesBeforeEvaluating) {
  const ModContext ctx{101, 1, 5};
  EXPECT_EQ(eval_mod(QTRational(one_minus(q * q), one_minus(q)), ctx).value(), 2u);
}

TEST(EvalMod, MixedContextsThrow) {
  const ModScalar a(3, ModContext{101, 2, 5});
  const ModScalar b(3, ModContext{101, 2, 6});
  EXPECT_THROW(a + b, ContextMismatch);
}

TEST(LimitQOne, CancelsOneMinusQ) {
  EXPECT_EQ(limit_q_one(QTRational(one_minus(pow(q, 6)), one_minus(pow(q, 2)))), QTRational(3));
}

TEST(LimitQOne, PlainSubstitution) {
  EXPECT_EQ(limit_q_one(QTRational((q + t + QTPoly(2)) * (QTPoly(1) + q))), QTRational(QTPoly(6) + QTPoly::monomial(2, 0, 1)));
}

TEST(LimitQOne, PoleThrows) { EXPECT_THROW(limit_q_one(QTRational(QTPoly(1), one_minus(q))), PoleAtQOne); }

TEST(QInteger, RatioExpansion) {
  EXPECT_EQ(q_integer(3), QTPoly(1) + q + q * q);
  EXPECT_EQ(q_integer_ratio(6, 2), QTPoly(1) + pow(q, 2) + pow(q, 4));
  EXPECT_THROW(q_integer_ratio(5, 2), std::invalid_argument);
}

TEST(TextGrammar, RenderParseRoundtrip) {
  oracle::Gen gen(11);
  for (int i = 0; i < 60; ++i) {
    const QTRational r = gen.rational(3);
    EXPECT_EQ(parse_rational(r.to_string()), r) << r.to_string();
  }
  EXPECT_EQ(parse_poly("q^2*t + 3*q - 1").to_string(), (q * q * t + QTPoly::monomial(3, 1, 0) - QTPoly(1)).to_string());
  EXPECT_THROW(parse_rational("q +* t"), ParseError);
}

TEST(TextGrammar, GradedLexOrder) {
  EXPECT_EQ((QTPoly(1) + t + q + q * t + q * q).to_string(), "q^2 + q*t + q + t + 1");
}

// ---- properties on seeded random values ----

TEST(FieldProperties, Axioms) {
  oracle::Gen gen(2024);
  for (int i = 0; i < 40; ++i) {
    const QTRational a = gen.rational();
    const QTRational b = gen.rational();
    const QTRational c = gen.rational();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    const QTRational nz = gen.nonzero_rational();
    EXPECT_TRUE((nz * nz.inverse()).is_one());
  }
}

TEST(FieldProperties, AgreesWithRationalEvaluation) {
  oracle::Gen gen(7);
  const mpq_class q0(3, 7);
  const mpq_class t0(-5, 2);
  for (int i = 0; i < 40; ++i) {
    const QTRational a = gen.rational();
    const QTRational b = gen.rational();
    if (oracle::eval(a.den(), q0, t0) == 0 || oracle::eval(b.den(), q0, t0) == 0) continue;
    EXPECT_EQ(oracle::eval(a + b, q0, t0), oracle::eval(a, q0, t0) + oracle::eval(b, q0, t0));
    EXPECT_EQ(oracle::eval(a * b, q0, t0), oracle::eval(a, q0, t0) * oracle::eval(b, q0, t0));
  }
}

TEST(FieldProperties, NormalFormIsReducedAndIdempotent) {
  oracle::Gen gen(99);
  for (int i = 0; i < 40; ++i) {
    const QTRational a = gen.rational();
    const QTPoly common = gen.nonzero_poly(2);
    const QTRational b(a.num() * common, a.den() * common);
    EXPECT_EQ(a, b);
    EXPECT_EQ(QTRational(a.num(), a.den()), a);
    EXPECT_GT(a.den().leading().coeff, 0);
  }
}

TEST(FieldProperties, ModularEvaluationIsAHomomorphism) {
  oracle::Gen gen(5);
  for (int i = 0; i < 40; ++i) {
    const ModContext ctx = sample_point(gen.rng());
    const QTRational a = gen.rational();
    const QTRational b = gen.rational();
    try {
      const ModScalar ea = eval_mod(a, ctx);
      const ModScalar eb = eval_mod(b, ctx);
      EXPECT_EQ(eval_mod(a + b, ctx), ea + eb);
      EXPECT_EQ(eval_mod(a * b, ctx), ea * eb);
    } catch (const DenominatorVanishes&) {
    }
  }
}

TEST(FieldProperties, LimitQOneIsMultiplicative) {
  oracle::Gen gen(17);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const QTRational r = gen.rational();
    const QTRational s = gen.rational();
    try {
      const QTRational lr = limit_q_one(r);
      const QTRational ls = limit_q_one(s);
      EXPECT_EQ(lr * ls, limit_q_one(r * s));
      ++checked;
    } catch (const PoleAtQOne&) {
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Modular, DefaultPrimeIs61Bit) {
  EXPECT_TRUE(is_probable_prime(kDefaultPrime));
  EXPECT_EQ(kDefaultPrime, (1ULL << 61) - 1);
  EXPECT_FALSE(is_probable_prime(kDefaultPrime + 2));
}
