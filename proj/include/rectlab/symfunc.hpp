#pragma once

// Homogeneous symmetric functions over a pluggable coefficient field.
//
// Power sums are the hub: every classical basis is stored by its rational
// transition to and from p, computed once per degree. Schur functions enter
// only through the Jacobi-Trudi determinant in the h basis.

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "partitions.hpp"

namespace rectlab {

enum class Basis { monomial, elementary, homogeneous, powersum, schur, macdonald };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::monomial: return "m";
    case Basis::elementary: return "e";
    case Basis::homogeneous: return "h";
    case Basis::powersum: return "p";
    case Basis::schur: return "s";
    case Basis::macdonald: return "H";
  }
  return "?";
}

inline Basis parse_basis(const std::string& s) {
  if (s == "m" || s == "monomial") return Basis::monomial;
  if (s == "e" || s == "elementary") return Basis::elementary;
  if (s == "h" || s == "homogeneous") return Basis::homogeneous;
  if (s == "p" || s == "powersum") return Basis::powersum;
  if (s == "s" || s == "schur") return Basis::schur;
  if (s == "H" || s == "macdonald") return Basis::macdonald;
  throw std::invalid_argument("unknown basis: " + s);
}

inline constexpr int kDefaultDegreeCap = 12;

template <CoefficientField F>
class SymFunc {
 public:
  using scalar = typename F::scalar;

  SymFunc() = default;
  SymFunc(Basis basis, int degree) : basis_(basis), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("SymFunc: negative degree");
  }

  Basis basis() const { return basis_; }
  int degree() const { return degree_; }
  const std::map<Partition, scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Adds c to the coefficient of lambda, dropping it if the sum vanishes.
  void add(const Partition& lambda, const scalar& c) {
    if (lambda.size() != degree_)
      throw DegreeMismatch("partition " + lambda.to_string() + " in degree " + std::to_string(degree_));
    if (c.is_zero()) return;
    auto it = coeffs_.find(lambda);
    if (it == coeffs_.end()) {
      coeffs_.emplace(lambda, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  void set(const Partition& lambda, const scalar& c) {
    coeffs_.erase(lambda);
    add(lambda, c);
  }
  scalar coeff(const Partition& lambda, const F& field) const {
    auto it = coeffs_.find(lambda);
    return it == coeffs_.end() ? field.zero() : it->second;
  }

  SymFunc scaled(const scalar& c) const {
    SymFunc r(basis_, degree_);
    for (const auto& [lambda, v] : coeffs_) r.add(lambda, v * c);
    return r;
  }

  friend SymFunc operator+(const SymFunc& a, const SymFunc& b) {
    check_compatible(a, b);
    SymFunc r = a;
    for (const auto& [lambda, v] : b.coeffs_) r.add(lambda, v);
    return r;
  }
  friend SymFunc operator-(const SymFunc& a, const SymFunc& b) {
    check_compatible(a, b);
    SymFunc r = a;
    for (const auto& [lambda, v] : b.coeffs_) r.add(lambda, -v);
    return r;
  }
  SymFunc operator-() const {
    SymFunc r(basis_, degree_);
    for (const auto& [lambda, v] : coeffs_) r.coeffs_.emplace(lambda, -v);
    return r;
  }

  /// Structural equality: same basis, degree and coefficients.
  friend bool operator==(const SymFunc& a, const SymFunc& b) {
    if (a.basis_ != b.basis_ || a.degree_ != b.degree_ || a.coeffs_.size() != b.coeffs_.size()) return false;
    auto it = b.coeffs_.begin();
    for (const auto& [lambda, v] : a.coeffs_) {
      if (!(it->first == lambda) || !(it->second == v)) return false;
      ++it;
    }
    return true;
  }

  /// Text rendering "basis:{[2,1]: coeff, ...}".
  std::string to_string(const F& field) const {
    std::string s = std::string(basis_name(basis_)) + ":{";
    bool first = true;
    for (const auto& [lambda, v] : coeffs_) {
      if (!first) s += ", ";
      first = false;
      s += lambda.to_string() + ": " + field.render(v);
    }
    return s + "}";
  }

 private:
  static void check_compatible(const SymFunc& a, const SymFunc& b) {
    if (a.degree_ != b.degree_) throw DegreeMismatch("adding degree " + std::to_string(a.degree_) + " and " + std::to_string(b.degree_));
    if (a.basis_ != b.basis_) throw std::invalid_argument("adding symmetric functions stored in different bases");
  }

  Basis basis_ = Basis::powersum;
  int degree_ = 0;
  std::map<Partition, scalar> coeffs_;
};

using QMatrix = std::vector<std::vector<mpq_class>>;

inline QMatrix invert(QMatrix a) {
  const std::size_t n = a.size();
  QMatrix inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("invert: singular rational matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    mpq_class d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Rational transition matrices between the classical bases and power sums
/// in one degree. to_p[b][i][j] is the p_{parts[j]} coefficient of b_{parts[i]};
/// from_p[b] is its inverse.
struct ClassicalTables {
  int degree = 0;
  std::vector<Partition> parts;
  std::map<Partition, int> index;
  std::map<Basis, QMatrix> to_p;
  std::map<Basis, QMatrix> from_p;
};

namespace detail {

using PExpansion = std::map<Partition, mpq_class>;

inline PExpansion p_multiply(const PExpansion& a, const PExpansion& b) {
  PExpansion r;
  for (const auto& [la, ca] : a)
    for (const auto& [lb, cb] : b) r[la.join(lb)] += ca * cb;
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

/// h_n (sign = false) or e_n (sign = true) in power sums.
inline PExpansion complete_or_elementary(int n, bool sign) {
  PExpansion r;
  for (const auto& nu : partitions_of(n)) {
    mpq_class c(1, 1);
    c /= mpq_class(z_lambda(nu));
    if (sign && (n - nu.length()) % 2 != 0) c = -c;
    r[nu] = c;
  }
  return r;
}

inline PExpansion multiplicative_to_p(const Partition& lambda, bool sign) {
  PExpansion r{{Partition{}, mpq_class(1)}};
  for (int part : lambda.parts()) r = p_multiply(r, complete_or_elementary(part, sign));
  return r;
}

/// Coefficient of x^lambda in p_nu: assignments of the parts of nu to the
/// rows of lambda with matching sums.
inline long p_in_m(const Partition& nu, const Partition& lambda) {
  std::vector<int> room(lambda.parts());
  long count = 0;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == nu.length()) {
      for (int r : room)
        if (r != 0) return;
      ++count;
      return;
    }
    for (std::size_t j = 0; j < room.size(); ++j) {
      if (room[j] >= nu[k]) {
        room[j] -= nu[k];
        self(self, k + 1);
        room[j] += nu[k];
      }
    }
  };
  rec(rec, 0);
  return count;
}

/// Jacobi-Trudi: s_lambda = det(h_{lambda_i - i + j}) expanded as a map from
/// h-index partitions to integer coefficients.
inline std::map<Partition, mpz_class> schur_in_h(const Partition& lambda) {
  const int l = lambda.length();
  if (l == 0) return {{Partition{}, mpz_class(1)}};
  std::vector<std::map<Partition, mpz_class>> dp(std::size_t(1) << l);
  dp[0][Partition{}] = 1;
  for (unsigned mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask].empty()) continue;
    const int row = __builtin_popcount(mask);
    if (row == l) continue;
    for (int col = 0; col < l; ++col) {
      if (mask & (1u << col)) continue;
      const int idx = lambda[row] - row + col;
      if (idx < 0) continue;
      // Inversions gained: already-used columns to the right of col.
      const int inv = __builtin_popcount(mask >> (col + 1));
      const unsigned next = mask | (1u << col);
      for (const auto& [hs, c] : dp[mask]) {
        Partition grown = idx == 0 ? hs : hs.join(Partition{idx});
        auto& slot = dp[next][grown];
        if (inv % 2 == 0)
          slot += c;
        else
          slot -= c;
      }
    }
    dp[mask].clear();
  }
  std::map<Partition, mpz_class> out;
  for (auto& [hs, c] : dp.back())
    if (c != 0) out.emplace(hs, c);
  return out;
}

inline ClassicalTables build_classical_tables(int n) {
  ClassicalTables t;
  t.degree = n;
  t.parts = partitions_of(n);
  t.index = partition_index(n);
  const std::size_t dim = t.parts.size();
  auto expansion_row = [&](const PExpansion& e) {
    std::vector<mpq_class> row(dim);
    for (const auto& [nu, c] : e) row[t.index.at(nu)] = c;
    return row;
  };

  QMatrix id(dim, std::vector<mpq_class>(dim));
  for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
  t.to_p[Basis::powersum] = id;
  t.from_p[Basis::powersum] = id;

  QMatrix h2p, e2p;
  for (const auto& lambda : t.parts) {
    h2p.push_back(expansion_row(multiplicative_to_p(lambda, false)));
    e2p.push_back(expansion_row(multiplicative_to_p(lambda, true)));
  }

  // p in m is integral; m in p is its inverse.
  QMatrix p2m(dim, std::vector<mpq_class>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) p2m[i][j] = p_in_m(t.parts[i], t.parts[j]);
  QMatrix m2p = invert(p2m);

  QMatrix s2p(dim, std::vector<mpq_class>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (const auto& [hs, c] : schur_in_h(t.parts[i])) {
      const auto& hrow = h2p[t.index.at(hs)];
      for (std::size_t j = 0; j < dim; ++j)
        if (hrow[j] != 0) s2p[i][j] += mpq_class(c) * hrow[j];
    }
  }

  t.to_p[Basis::homogeneous] = h2p;
  t.to_p[Basis::elementary] = e2p;
  t.to_p[Basis::monomial] = m2p;
  t.to_p[Basis::schur] = s2p;
  t.from_p[Basis::homogeneous] = invert(h2p);
  t.from_p[Basis::elementary] = invert(e2p);
  t.from_p[Basis::monomial] = p2m;
  t.from_p[Basis::schur] = invert(s2p);
  return t;
}

}  // namespace detail

/// Process-wide cache of classical tables; each degree is built once.
inline const ClassicalTables& classical_tables(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ClassicalTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<ClassicalTables>(detail::build_classical_tables(n))).first;
  return *it->second;
}

/// The algebra of symmetric functions over F, restricted to classical bases
/// (macdonald-basis conversions live in MacdonaldOps).
template <CoefficientField F>
class Algebra {
 public:
  using scalar = typename F::scalar;
  using Vec = std::vector<scalar>;
  using SparseMatrix = std::vector<std::vector<std::pair<int, scalar>>>;

  explicit Algebra(F field, int degree_cap = kDefaultDegreeCap) : field_(std::move(field)), cap_(degree_cap) {}

  const F& field() const { return field_; }
  int degree_cap() const { return cap_; }

  void check_degree(int n) const {
    if (n > cap_) throw UnsupportedDegree("degree " + std::to_string(n) + " exceeds cap " + std::to_string(cap_));
  }

  const std::vector<Partition>& parts(int n) const { return classical_tables(n).parts; }
  int index_of(const Partition& lambda) const { return classical_tables(lambda.size()).index.at(lambda); }

  // ---- constructors ----

  SymFunc<F> basis_element(Basis b, const Partition& lambda) const {
    SymFunc<F> f(b, lambda.size());
    f.add(lambda, field_.one());
    return f;
  }
  SymFunc<F> e(int n) const { return basis_element(Basis::elementary, n == 0 ? Partition{} : Partition{n}); }
  SymFunc<F> h(int n) const { return basis_element(Basis::homogeneous, n == 0 ? Partition{} : Partition{n}); }
  SymFunc<F> p(int n) const { return basis_element(Basis::powersum, n == 0 ? Partition{} : Partition{n}); }
  SymFunc<F> m(const Partition& l) const { return basis_element(Basis::monomial, l); }
  SymFunc<F> s(const Partition& l) const { return basis_element(Basis::schur, l); }
  SymFunc<F> one() const { return basis_element(Basis::powersum, Partition{}); }

  // ---- conversions ----

  /// Dense power-sum coordinates in partitions_of(degree) order.
  Vec to_p_vector(const SymFunc<F>& f) const {
    if (f.basis() == Basis::macdonald) throw std::invalid_argument("Algebra: macdonald basis needs MacdonaldOps");
    check_degree(f.degree());
    Vec v(parts(f.degree()).size(), field_.zero());
    if (f.basis() == Basis::powersum) {
      for (const auto& [lambda, c] : f.coeffs()) v[index_of(lambda)] = c;
      return v;
    }
    const auto& tab = embedded(f.degree()).to_p.at(f.basis());
    for (const auto& [lambda, c] : f.coeffs())
      for (const auto& [j, x] : tab[index_of(lambda)]) v[j] = v[j] + c * x;
    return v;
  }

  SymFunc<F> from_p_vector(const Vec& v, int degree, Basis target) const {
    if (target == Basis::macdonald) throw std::invalid_argument("Algebra: macdonald basis needs MacdonaldOps");
    check_degree(degree);
    const auto& ps = parts(degree);
    SymFunc<F> out(target, degree);
    if (target == Basis::powersum) {
      for (std::size_t i = 0; i < v.size(); ++i) out.add(ps[i], v[i]);
      return out;
    }
    const auto& tab = embedded(degree).from_p.at(target);
    Vec acc(ps.size(), field_.zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      for (const auto& [j, x] : tab[i]) acc[j] = acc[j] + v[i] * x;
    }
    for (std::size_t j = 0; j < acc.size(); ++j) out.add(ps[j], acc[j]);
    return out;
  }

  SymFunc<F> convert(const SymFunc<F>& f, Basis target) const {
    if (f.basis() == target) return f;
    return from_p_vector(to_p_vector(f), f.degree(), target);
  }

  /// Degree-additive product. Products inside a multiplicative basis stay
  /// there; otherwise the result is expressed in the basis of the first factor.
  SymFunc<F> multiply(const SymFunc<F>& f, const SymFunc<F>& g) const {
    check_degree(f.degree() + g.degree());
    const bool multiplicative = f.basis() == Basis::powersum || f.basis() == Basis::elementary || f.basis() == Basis::homogeneous;
    if (multiplicative && f.basis() == g.basis()) {
      SymFunc<F> r(f.basis(), f.degree() + g.degree());
      for (const auto& [a, ca] : f.coeffs())
        for (const auto& [b, cb] : g.coeffs()) r.add(a.join(b), ca * cb);
      return r;
    }
    SymFunc<F> fp(Basis::powersum, f.degree());
    SymFunc<F> gp(Basis::powersum, g.degree());
    const auto fv = to_p_vector(f);
    const auto gv = to_p_vector(g);
    for (std::size_t i = 0; i < fv.size(); ++i) fp.add(parts(f.degree())[i], fv[i]);
    for (std::size_t i = 0; i < gv.size(); ++i) gp.add(parts(g.degree())[i], gv[i]);
    return convert(multiply(fp, gp), f.basis());
  }

  /// Hall scalar product via <p_lambda, p_mu> = delta z_lambda.
  scalar hall(const SymFunc<F>& f, const SymFunc<F>& g) const {
    if (f.degree() != g.degree())
      throw DegreeMismatch("Hall product of degrees " + std::to_string(f.degree()) + " and " + std::to_string(g.degree()));
    const auto fv = to_p_vector(f);
    const auto gv = to_p_vector(g);
    const auto& ps = parts(f.degree());
    scalar acc = field_.zero();
    for (std::size_t i = 0; i < fv.size(); ++i) {
      if (fv[i].is_zero() || gv[i].is_zero()) continue;
      acc = acc + fv[i] * gv[i] * field_.from_number(mpq_class(z_lambda(ps[i])));
    }
    return acc;
  }

  /// f[c X]: p_k -> c(q^k, t^k) p_k, extended multiplicatively. Result in power sums.
  SymFunc<F> scale_alphabet(const SymFunc<F>& f, const QTRational& c) const {
    const auto v = to_p_vector(f);
    const auto& ps = parts(f.degree());
    SymFunc<F> r(Basis::powersum, f.degree());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      r.add(ps[i], v[i] * plethystic_power(c, ps[i]));
    }
    return r;
  }

  /// f[A] for an alphabet A in q, t only: p_k -> A(q^k, t^k).
  scalar scalar_plethysm(const SymFunc<F>& f, const QTRational& alphabet) const {
    const auto v = to_p_vector(f);
    const auto& ps = parts(f.degree());
    scalar acc = field_.zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      acc = acc + v[i] * plethystic_power(alphabet, ps[i]);
    }
    return acc;
  }

  /// prod_i c(q^{lambda_i}, t^{lambda_i}).
  scalar plethystic_power(const QTRational& c, const Partition& lambda) const {
    scalar r = field_.one();
    for (int part : lambda.parts()) r = r * field_.embed(c, part);
    return r;
  }

  /// Value equality across bases (compared in power sums).
  bool equal(const SymFunc<F>& a, const SymFunc<F>& b) const {
    if (a.degree() != b.degree()) return a.is_zero() && b.is_zero();
    const auto av = to_p_vector(a);
    const auto bv = to_p_vector(b);
    for (std::size_t i = 0; i < av.size(); ++i)
      if (!(av[i] == bv[i])) return false;
    return true;
  }

 private:
  struct Embedded {
    std::map<Basis, SparseMatrix> to_p;
    std::map<Basis, SparseMatrix> from_p;
  };

  SparseMatrix embed_matrix(const QMatrix& m) const {
    SparseMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j)
        if (m[i][j] != 0) out[i].emplace_back(static_cast<int>(j), field_.from_number(m[i][j]));
    return out;
  }

  const Embedded& embedded(int n) const {
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = cache_->find(n);
    if (it != cache_->end()) return *it->second;
    const ClassicalTables& t = classical_tables(n);
    auto e = std::make_unique<Embedded>();
    for (const auto& [b, m] : t.to_p) e->to_p[b] = embed_matrix(m);
    for (const auto& [b, m] : t.from_p) e->from_p[b] = embed_matrix(m);
    return *cache_->emplace(n, std::move(e)).first->second;
  }

  F field_;
  int cap_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<int, std::unique_ptr<Embedded>>> cache_ = std::make_shared<std::map<int, std::unique_ptr<Embedded>>>();
};

}  // namespace rectlab
