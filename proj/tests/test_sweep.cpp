#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace rectlab;

namespace {

QTRational q_power(long e) {
  return e >= 0 ? QTRational(QTPoly::monomial(1, e, 0)) : QTRational(QTPoly(1), QTPoly::monomial(1, -e, 0));
}

}  // namespace

TEST(Sweep, UnitSquare) {
  const auto r = sweep(RectPath::from_word("NE"));
  EXPECT_EQ(r.q_exp, 0);
  EXPECT_EQ(r.t_exp, 0);
  for (const auto& sp : r.points) EXPECT_FALSE(sp.x == 1 && sp.y == 0);
}

TEST(Sweep, FiveBySevenExample) {
  EXPECT_EQ(sweep_exponents(RectPath::from_word("NNENEENNENNE")), std::make_pair(-1L, 3L));
}

TEST(Sweep, SevenByFiveFigure) {
  const RectPath p = RectPath::from_word("ENENNENENEEE");
  ASSERT_EQ(p.m(), 7);
  ASSERT_EQ(p.n(), 5);
  const auto r = sweep(p);
  EXPECT_EQ(r.points.size(), 17u);
  std::set<std::pair<int, int>> distinct;
  for (const auto& sp : r.points) distinct.insert({sp.x, sp.y});
  EXPECT_EQ(distinct.size(), r.points.size());
  const auto np = oracle::naive(p);
  EXPECT_EQ(r.t_exp, np.area());
  EXPECT_EQ(r.q_exp, np.cdinv() + np.bonus());
}

TEST(Sweep, PointClassNames) {
  EXPECT_STREQ(point_class_name(PointClass::A), "A");
  EXPECT_STREQ(point_class_name(PointClass::D), "D");
  EXPECT_STREQ(point_class_name(PointClass::below), "E");
}

TEST(Rotation, PhiExamples) {
  const RectPath p = RectPath::from_word("NNENNEENNEE");
  EXPECT_EQ(phi_k(p, 0), p);
  EXPECT_EQ(phi_k(p, 3).steps(), "NNEENNENNEE");
  EXPECT_THROW(phi_k(p, p.m()), IndexOutOfRange);
  EXPECT_THROW(phi_k(p, -1), IndexOutOfRange);
}

TEST(Rotation, RValues) {
  const RectPath p = RectPath::from_word("NNENNEENNEE");
  std::vector<int> r;
  for (int k = 0; k < p.m(); ++k) r.push_back(r_k(p, k));
  EXPECT_EQ(r, (std::vector<int>{0, 2, 4, 1, 3}));
  EXPECT_EQ(r_k(RectPath::from_word("ENNNE"), 1), -1);
  EXPECT_THROW(r_k(p, 5), IndexOutOfRange);
}

TEST(Orbits, TwoByThree) {
  const auto orbits = orbit_partition(2, 3);
  ASSERT_EQ(orbits.size(), 2u);
  for (const auto& o : orbits) {
    EXPECT_EQ(o.members.size(), 2u);
    EXPECT_TRUE(area_data(o.base).dyck);
  }
}

TEST(Orbits, SingleColumn) {
  for (int n = 1; n <= 5; ++n) {
    const auto orbits = orbit_partition(1, n);
    ASSERT_EQ(orbits.size(), 1u);
    EXPECT_EQ(orbits[0].members.size(), 1u);
  }
}

TEST(Orbits, NotCoprime) {
  EXPECT_THROW(orbit_partition(2, 4), NotCoprime);
  EXPECT_THROW(orbit_partition(3, 3), NotCoprime);
}

// ---- properties ----

TEST(SweepProperties, ExponentsMatchOracleStatistics) {
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; m + n <= 9; ++n)
      for (const auto& p : rect_paths(m, n, false)) {
        const auto np = oracle::naive(p);
        const auto [qe, te] = sweep_exponents(p);
        EXPECT_EQ(qe, np.cdinv() + np.bonus()) << p.steps();
        EXPECT_EQ(te, np.area()) << p.steps();
      }
}

TEST(SweepProperties, RotationShiftsQExponentOnly) {
  for (int m = 1; m <= 9; ++m)
    for (int n = 1; m + n <= 10; ++n) {
      if (std::gcd(m, n) != 1) continue;
      for (const auto& p : rect_paths(m, n, true)) {
        const auto [bq, bt] = sweep_exponents(p);
        std::vector<int> rs;
        for (int k = 0; k < m; ++k) {
          const int r = r_k(p, k);
          rs.push_back(r);
          const auto [q, t] = sweep_exponents(phi_k(p, k));
          EXPECT_EQ(q - bq, r) << p.steps() << " k=" << k;
          EXPECT_EQ(t, bt) << p.steps() << " k=" << k;
        }
        std::sort(rs.begin(), rs.end());
        for (int k = 0; k < m; ++k) EXPECT_EQ(rs[k], k) << p.steps();
      }
    }
}

TEST(SweepProperties, RotationScalesLabelledSum) {
  for (int m = 1; m <= 7; ++m)
    for (int n = 1; m + n <= 8; ++n) {
      if (std::gcd(m, n) != 1) continue;
      for (const auto& p : rect_paths(m, n, true)) {
        const auto base = path_gf(p);
        for (int k = 1; k < m; ++k) EXPECT_EQ(path_gf(phi_k(p, k)), base.scaled(q_power(r_k(p, k)))) << p.steps() << " k=" << k;
      }
    }
}

TEST(SweepProperties, RotatedSumAgainstBruteForce) {
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {3, 4}, {4, 3}}) {
    for (const auto& p : rect_paths(m, n, true))
      for (int k = 1; k < m; ++k) {
        const auto rotated = oracle::labelled_gf({oracle::naive(phi_k(p, k))}, n, true);
        const auto base = oracle::labelled_gf({oracle::naive(p)}, n, true);
        ASSERT_EQ(rotated.size(), base.size());
        for (const auto& [lambda, c] : base) EXPECT_EQ(rotated.at(lambda), c * q_power(r_k(p, k))) << p.steps();
      }
  }
}

TEST(SweepProperties, OrbitsPartitionAllPaths) {
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; m + n <= 9; ++n) {
      if (std::gcd(m, n) != 1) continue;
      std::set<std::string> covered;
      for (const auto& o : orbit_partition(m, n)) {
        int dyck = 0;
        for (const auto& mem : o.members) {
          EXPECT_TRUE(covered.insert(mem.steps()).second) << mem.steps();
          if (area_data(mem).dyck) ++dyck;
        }
        EXPECT_EQ(dyck, 1) << o.base.steps();
      }
      std::set<std::string> all;
      for (const auto& np : oracle::all_paths(m, n, false)) all.insert(np.word);
      EXPECT_EQ(covered, all) << m << "x" << n;
    }
}
