#pragma once

// Operators diagonal (or conjugated-diagonal) in the modified Macdonald
// basis, the Q_{m,n} tower built from them, and e_{m,n}, p_{m,n}.
//
// Coordinates in the H~ basis are read off power sums with the *-scalar
// product, for which the H~_mu are orthogonal:
//   <p_l, p_m>_* = (-1)^{|m|-l(m)} z_m prod_i (1-q^{m_i})(1-t^{m_i}) delta_{lm},
//   <H~_l, H~_m>_* = w_m delta_{lm},  w_m = prod_c (q^a - t^{l+1})(t^l - q^{a+1}).

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "htilde.hpp"
#include "symfunc.hpp"
#include "transition_cache.hpp"

namespace rectlab {

/// M = (1-q)(1-t).
inline QTPoly macdonald_m() { return (QTPoly(1) - QTPoly::q()) * (QTPoly(1) - QTPoly::t()); }

/// Norm of H~_mu under the *-scalar product.
inline QTPoly star_norm(const Partition& mu) {
  QTPoly w(1);
  for (const auto& c : cells_with_arm_leg(mu)) {
    w *= QTPoly::monomial(1, c.arm, 0) - QTPoly::monomial(1, 0, c.leg + 1);
    w *= QTPoly::monomial(1, 0, c.leg) - QTPoly::monomial(1, c.arm + 1, 0);
  }
  return w;
}

/// <p_nu, p_nu>_*.
inline QTRational star_weight(const Partition& nu) {
  QTPoly w(z_lambda(nu));
  if ((nu.size() - nu.length()) % 2 != 0) w = -w;
  for (int part : nu.parts()) {
    w *= QTPoly(1) - QTPoly::monomial(1, part, 0);
    w *= QTPoly(1) - QTPoly::monomial(1, 0, part);
  }
  return QTRational(w);
}

/// Process-wide H~ tables, optionally backed by a disk cache.
inline const ExactTransition& htilde_store(int n, const std::optional<TransitionCache>& disk, bool want_dual) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ExactTransition>> mem;
  std::lock_guard<std::mutex> lock(mu);
  auto it = mem.find(n);
  if (it != mem.end() && (!want_dual || !it->second->dual.empty())) return *it->second;
  if (it == mem.end() && disk) {
    if (auto loaded = disk->load(n)) it = mem.emplace(n, std::make_unique<ExactTransition>(std::move(*loaded))).first;
  }
  if (it == mem.end()) {
    auto tr = std::make_unique<ExactTransition>();
    tr->htilde = detail::build_htilde_table(n);
    it = mem.emplace(n, std::move(tr)).first;
    if (disk && !want_dual) disk->store(*it->second);
  }
  if (want_dual && it->second->dual.empty()) {
    ExactTransition& tr = *it->second;
    const ExactField ex;
    const auto& m2p = classical_tables(n).to_p.at(Basis::monomial);
    const std::size_t dim = tr.htilde.parts.size();
    tr.dual.assign(dim, std::vector<QTRational>(dim));
    for (std::size_t m = 0; m < dim; ++m) {
      std::vector<QTRational> hp(dim);
      for (std::size_t la = 0; la < dim; ++la) {
        if (tr.htilde.rows[m][la].is_zero()) continue;
        for (std::size_t nu = 0; nu < dim; ++nu)
          if (m2p[la][nu] != 0) hp[nu] += QTRational(tr.htilde.rows[m][la]) * ex.from_number(m2p[la][nu]);
      }
      const QTRational inv_norm = QTRational(QTPoly(1), star_norm(tr.htilde.parts[m]));
      for (std::size_t nu = 0; nu < dim; ++nu)
        if (!hp[nu].is_zero()) tr.dual[nu][m] = hp[nu] * star_weight(tr.htilde.parts[nu]) * inv_norm;
    }
    if (disk) disk->store(tr);
  }
  return *it->second;
}

template <CoefficientField F>
class MacdonaldOps {
 public:
  using scalar = typename F::scalar;
  using Vec = std::vector<scalar>;
  using Matrix = std::vector<Vec>;

  explicit MacdonaldOps(F field, std::optional<std::filesystem::path> cache_dir = std::nullopt, int degree_cap = kDefaultDegreeCap)
      : alg_(std::move(field), degree_cap) {
    if (cache_dir) disk_.emplace(*cache_dir);
  }

  const Algebra<F>& algebra() const { return alg_; }
  const F& field() const { return alg_.field(); }

  /// Transition data for one degree in field coordinates: hp[mu][nu] is the
  /// p_nu coefficient of H~_mu and dual[nu][mu] inverts it.
  struct Tables {
    std::vector<Partition> parts;
    Matrix hp;
    Matrix dual;
    Vec pi;     // Pi_mu
    std::vector<QTRational> b;  // B_mu, exact
  };

  const Tables& tables(int n) const {
    alg_.check_degree(n);
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = state_->tables.find(n);
    if (it != state_->tables.end()) return *it->second;
    return *state_->tables.emplace(n, build_tables(n)).first->second;
  }

  // ---- H~ and conversions ----

  /// H~_mu in the monomial basis.
  SymFunc<F> htilde(const Partition& mu) const {
    const int n = mu.size();
    alg_.check_degree(n);
    const auto& tr = htilde_store(n, disk_, false);
    const int i = alg_.index_of(mu);
    SymFunc<F> out(Basis::monomial, n);
    for (std::size_t j = 0; j < tr.htilde.parts.size(); ++j)
      out.add(tr.htilde.parts[j], field().embed(QTRational(tr.htilde.rows[i][j])));
    return out;
  }

  Vec to_macdonald_vector(const SymFunc<F>& f) const {
    const auto& tab = tables(f.degree());
    Vec out(tab.parts.size(), field().zero());
    if (f.basis() == Basis::macdonald) {
      for (const auto& [mu, c] : f.coeffs()) out[alg_.index_of(mu)] = c;
      return out;
    }
    const Vec p = alg_.to_p_vector(f);
    for (std::size_t nu = 0; nu < p.size(); ++nu) {
      if (p[nu].is_zero()) continue;
      for (std::size_t mu = 0; mu < out.size(); ++mu)
        if (!tab.dual[nu][mu].is_zero()) out[mu] = out[mu] + p[nu] * tab.dual[nu][mu];
    }
    return out;
  }

  SymFunc<F> from_macdonald_vector(const Vec& v, int n) const {
    const auto& tab = tables(n);
    SymFunc<F> out(Basis::macdonald, n);
    for (std::size_t i = 0; i < v.size(); ++i) out.add(tab.parts[i], v[i]);
    return out;
  }

  SymFunc<F> to_macdonald(const SymFunc<F>& f) const { return from_macdonald_vector(to_macdonald_vector(f), f.degree()); }

  SymFunc<F> convert(const SymFunc<F>& f, Basis target) const {
    if (f.basis() == target) return f;
    if (target == Basis::macdonald) return to_macdonald(f);
    if (f.basis() != Basis::macdonald) return alg_.convert(f, target);
    const auto& tab = tables(f.degree());
    Vec p(tab.parts.size(), field().zero());
    for (const auto& [mu, c] : f.coeffs()) {
      const auto& row = tab.hp[alg_.index_of(mu)];
      for (std::size_t nu = 0; nu < p.size(); ++nu)
        if (!row[nu].is_zero()) p[nu] = p[nu] + c * row[nu];
    }
    return alg_.from_p_vector(p, f.degree(), target);
  }

  bool equal(const SymFunc<F>& a, const SymFunc<F>& b) const {
    if (a.degree() != b.degree()) return a.is_zero() && b.is_zero();
    return convert(a, Basis::powersum) == convert(b, Basis::powersum);
  }

  scalar hall(const SymFunc<F>& a, const SymFunc<F>& b) const {
    return alg_.hall(convert(a, Basis::powersum), convert(b, Basis::powersum));
  }

  // ---- diagonal operators (results in the H~ basis) ----

  /// nabla H~_mu = e_n[B_mu] H~_mu.
  SymFunc<F> nabla(const SymFunc<F>& f) const {
    const int n = f.degree();
    const auto en = alg_.e(n);
    return diagonal(f, [&](std::size_t i) { return alg_.scalar_plethysm(en, tables(n).b[i]); });
  }

  /// Delta_g H~_mu = g[B_mu] H~_mu; the primed version uses B_mu - 1.
  SymFunc<F> delta(const SymFunc<F>& g, const SymFunc<F>& f, bool primed = false) const {
    const SymFunc<F> gp = convert(g, Basis::powersum);
    const int n = f.degree();
    return diagonal(f, [&](std::size_t i) {
      QTRational alphabet = tables(n).b[i];
      if (primed) alphabet -= QTRational(1);
      return alg_.scalar_plethysm(gp, alphabet);
    });
  }

  /// Pi H~_mu = Pi_mu H~_mu, or its inverse.
  SymFunc<F> pi(const SymFunc<F>& f, bool inverse = false) const {
    const int n = f.degree();
    return diagonal(f, [&](std::size_t i) {
      const scalar& v = tables(n).pi[i];
      if (!inverse) return v;
      if (v.is_zero()) throw SingularEigenvalue("Pi_" + tables(n).parts[i].to_string() + " vanishes");
      return field().one() / v;
    });
  }

  /// Q_{1,0}: D_0 H~_mu = (1 - M B_mu) H~_mu.
  SymFunc<F> d0(const SymFunc<F>& f) const {
    const int n = f.degree();
    const QTRational m = QTRational(macdonald_m());
    return diagonal(f, [&](std::size_t i) { return field().embed(QTRational(1) - m * tables(n).b[i]); });
  }

  /// Multiplication by e_1 = p_1, computed in the H~ basis.
  SymFunc<F> times_e1(const SymFunc<F>& f) const {
    const int n = f.degree();
    const Vec v = to_macdonald_vector(f);
    const Matrix& pieri = pieri_matrix(n);
    Vec out(tables(n + 1).parts.size(), field().zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!pieri[i][j].is_zero()) out[j] = out[j] + v[i] * pieri[i][j];
    }
    return from_macdonald_vector(out, n + 1);
  }

  /// Theta_g F = Pi g[X/M] Pi^{-1} F, with Theta_g 1 = 0 for deg g >= 1.
  SymFunc<F> theta(const SymFunc<F>& g, const SymFunc<F>& f) const {
    const int k = g.degree();
    const int n = f.degree();
    alg_.check_degree(n + k);
    if (n == 0) {
      if (k >= 1) return SymFunc<F>(Basis::macdonald, k);
      return to_macdonald(alg_.multiply(convert(g, Basis::powersum), convert(f, Basis::powersum)));
    }
    const SymFunc<F> inner = convert(pi(f, true), Basis::powersum);
    const SymFunc<F> scaled = alg_.scale_alphabet(convert(g, Basis::powersum), QTRational(QTPoly(1), macdonald_m()));
    return pi(to_macdonald(alg_.multiply(scaled, inner)));
  }

  // ---- the Q_{m,n} tower ----

  /// (a, b, c, d) with a + c = m, b + d = n and ad - bc = gcd(m, n).
  static std::vector<std::array<int, 4>> valid_splits(int m, int n) {
    std::vector<std::array<int, 4>> out;
    const int g = std::gcd(m, n);
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= n; ++b) {
        const int c = m - a;
        const int d = n - b;
        if ((a == 0 && b == 0) || (c == 0 && d == 0)) continue;
        if (a * d - b * c == g) out.push_back({a, b, c, d});
      }
    return out;
  }

  /// The splitting used by default: the unique a in (0, m/g] with a n - b m = g.
  static std::array<int, 4> default_split(int m, int n) {
    const int g = std::gcd(m, n);
    for (int a = 1; a <= m / g; ++a) {
      const long num = static_cast<long>(a) * n - g;
      if (num % m == 0) {
        const int b = static_cast<int>(num / m);
        if (b >= 0 && b <= n) return {a, b, m - a, n - b};
      }
    }
    throw std::invalid_argument("no splitting for Q_{" + std::to_string(m) + "," + std::to_string(n) + "}");
  }

  /// Q_{m,n} f = (1/M) (Q_{c,d} Q_{a,b} - Q_{a,b} Q_{c,d}) f, down to Q_{1,0} = D_0
  /// and Q_{0,1} = -e_1.
  SymFunc<F> qmn(int m, int n, const SymFunc<F>& f) const {
    if (m < 0 || n < 0 || (m == 0 && n == 0)) throw std::invalid_argument("Q_{m,n} needs (m,n) != (0,0) with m, n >= 0");
    if (m == 1 && n == 0) return d0(f);
    if (m == 0 && n == 1) return -times_e1(f);
    if (n == 0 || m == 0) throw std::invalid_argument("Q_{" + std::to_string(m) + "," + std::to_string(n) + "} is not reachable by the recursion");
    const auto s = default_split(m, n);
    return qmn_with_split(s, f);
  }

  /// One commutator step with an explicit top-level splitting; the pieces
  /// recurse with the default splitting.
  SymFunc<F> qmn_with_split(const std::array<int, 4>& s, const SymFunc<F>& f) const {
    const auto [a, b, c, d] = s;
    const SymFunc<F> cd_ab = qmn(c, d, qmn(a, b, f));
    const SymFunc<F> ab_cd = qmn(a, b, qmn(c, d, f));
    const scalar inv_m = field().one() / field().embed(QTRational(macdonald_m()));
    return (to_macdonald(cd_ab) - to_macdonald(ab_cd)).scaled(inv_m);
  }

  /// F_{a,b}(f) = (-1)^{d(b+1)} sum_l c_l (Q_{l_1 a, l_1 b} ... Q_{l_k a, l_k b})(1)
  /// where f[X qt/(1-qt)] = sum_l c'_l h_l and c_l = c'_l ((qt-1)/qt)^{l(l)}.
  /// Operators of one slope commute, so the order of composition is immaterial.
  SymFunc<F> fab(int a, int b, const SymFunc<F>& f) const {
    if (std::gcd(a, b) != 1) throw NotCoprime("F_{" + std::to_string(a) + "," + std::to_string(b) + "}");
    const int deg = f.degree();
    const QTPoly qt = QTPoly::monomial(1, 1, 1);
    const SymFunc<F> scaled = alg_.scale_alphabet(convert(f, Basis::powersum), QTRational(qt, QTPoly(1) - qt));
    const SymFunc<F> hcoef = alg_.convert(scaled, Basis::homogeneous);
    const scalar ratio = field().embed(QTRational(qt - QTPoly(1), qt));

    std::map<std::vector<int>, SymFunc<F>> memo;  // parts -> composed operators applied to 1
    auto apply = [&](auto&& self, const std::vector<int>& parts) -> SymFunc<F> {
      if (parts.empty()) return from_macdonald_vector(Vec{field().one()}, 0);
      auto it = memo.find(parts);
      if (it != memo.end()) return it->second;
      const std::vector<int> rest(parts.begin() + 1, parts.end());
      SymFunc<F> r = to_macdonald(qmn(parts.front() * a, parts.front() * b, self(self, rest)));
      return memo.emplace(parts, std::move(r)).first->second;
    };

    SymFunc<F> out(Basis::macdonald, deg * b);
    for (const auto& [lambda, c] : hcoef.coeffs()) {
      scalar coeff = c;
      for (int i = 0; i < lambda.length(); ++i) coeff = coeff * ratio;
      out = out + apply(apply, lambda.parts()).scaled(coeff);
    }
    return (deg * (b + 1)) % 2 ? -out : out;
  }

  /// e_{m,n} = F_{m/d, n/d}(e_d), d = gcd(m, n). Degree n.
  SymFunc<F> emn(int m, int n) const { return family(m, n, alg_.e(std::gcd(m, n))); }
  /// p_{m,n} = (-1)^{d-1} F_{m/d, n/d}(p_d). The extra sign puts p_{m,n} on
  /// the normalization where [m]_q/[d]_q p_{m,n} enumerates labelled paths.
  SymFunc<F> pmn(int m, int n) const {
    const int d = std::gcd(m, n);
    SymFunc<F> r = family(m, n, alg_.p(d));
    return d % 2 ? r : -r;
  }

 private:
  SymFunc<F> family(int m, int n, const SymFunc<F>& seed) const {
    if (m < 1 || n < 1) throw std::invalid_argument("e_{m,n}, p_{m,n} need m, n >= 1");
    const int d = std::gcd(m, n);
    return fab(m / d, n / d, seed);
  }

  template <class Eigen>
  SymFunc<F> diagonal(const SymFunc<F>& f, Eigen eigen) const {
    const Vec v = to_macdonald_vector(f);
    Vec out(v.size(), field().zero());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) out[i] = v[i] * eigen(i);
    return from_macdonald_vector(out, f.degree());
  }

  std::unique_ptr<Tables> build_tables(int n) const {
    const F& fld = field();
    auto tab = std::make_unique<Tables>();
    tab->parts = partitions_of(n);
    const std::size_t dim = tab->parts.size();
    const auto& m2p = classical_tables(n).to_p.at(Basis::monomial);
    constexpr bool exact = std::is_same_v<F, ExactField>;
    const ExactTransition& tr = htilde_store(n, disk_, exact);

    tab->hp.assign(dim, Vec(dim, fld.zero()));
    for (std::size_t mu = 0; mu < dim; ++mu)
      for (std::size_t la = 0; la < dim; ++la) {
        if (tr.htilde.rows[mu][la].is_zero()) continue;
        const scalar c = fld.embed(QTRational(tr.htilde.rows[mu][la]));
        for (std::size_t nu = 0; nu < dim; ++nu)
          if (m2p[la][nu] != 0) tab->hp[mu][nu] = tab->hp[mu][nu] + c * fld.from_number(m2p[la][nu]);
      }

    tab->dual.assign(dim, Vec(dim, fld.zero()));
    if constexpr (exact) {
      for (std::size_t nu = 0; nu < dim; ++nu)
        for (std::size_t mu = 0; mu < dim; ++mu) tab->dual[nu][mu] = tr.dual[nu][mu];
    } else {
      for (std::size_t mu = 0; mu < dim; ++mu) {
        const scalar norm = fld.embed(QTRational(star_norm(tab->parts[mu])));
        if (norm.is_zero()) throw SingularTransition("H~ norm of " + tab->parts[mu].to_string() + " vanishes at the evaluation point");
        const scalar inv_norm = fld.one() / norm;
        for (std::size_t nu = 0; nu < dim; ++nu)
          if (!tab->hp[mu][nu].is_zero())
            tab->dual[nu][mu] = tab->hp[mu][nu] * fld.embed(star_weight(tab->parts[nu])) * inv_norm;
      }
    }

    for (const auto& mu : tab->parts) {
      tab->b.emplace_back(b_mu(mu));
      tab->pi.push_back(fld.embed(QTRational(pi_mu(mu))));
    }
    return tab;
  }

  /// pieri[i][j]: H~_{parts_{n+1}[j]} coefficient of p_1 H~_{parts_n[i]}.
  const Matrix& pieri_matrix(int n) const {
    const Tables& lo = tables(n);
    const Tables& hi = tables(n + 1);
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = state_->pieri.find(n);
    if (it != state_->pieri.end()) return it->second;
    Matrix pm(lo.parts.size(), Vec(hi.parts.size(), field().zero()));
    for (std::size_t i = 0; i < lo.parts.size(); ++i)
      for (std::size_t nu = 0; nu < lo.parts.size(); ++nu) {
        if (lo.hp[i][nu].is_zero()) continue;
        const int rho = classical_tables(n + 1).index.at(lo.parts[nu].join(Partition{1}));
        for (std::size_t j = 0; j < hi.parts.size(); ++j)
          if (!hi.dual[rho][j].is_zero()) pm[i][j] = pm[i][j] + lo.hp[i][nu] * hi.dual[rho][j];
      }
    return state_->pieri.emplace(n, std::move(pm)).first->second;
  }

  struct State {
    std::map<int, std::unique_ptr<Tables>> tables;
    std::map<int, Matrix> pieri;
  };

  Algebra<F> alg_;
  std::optional<TransitionCache> disk_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<State> state_ = std::make_shared<State>();
};

}  // namespace rectlab
