#pragma once

// Both sides of each identity, compared exactly or at random points modulo
// a prime, with a structured report per parameter cell.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "comb_gf.hpp"
#include "errors.hpp"
#include "macdonald.hpp"
#include "paths.hpp"
#include "sweep.hpp"

namespace rectlab {

enum class Identity { rect_shuffle, rect_paths, delta_dyck_q1, delta_paths_q1, cdinv_theorem, sweep_exponents, orbit_lemma };

inline const char* identity_name(Identity id) {
  switch (id) {
    case Identity::rect_shuffle: return "rect-shuffle";
    case Identity::rect_paths: return "rect-paths";
    case Identity::delta_dyck_q1: return "delta-dyck-q1";
    case Identity::delta_paths_q1: return "delta-paths-q1";
    case Identity::cdinv_theorem: return "cdinv-theorem";
    case Identity::sweep_exponents: return "sweep-exponents";
    case Identity::orbit_lemma: return "orbit-lemma";
  }
  return "?";
}

inline Identity parse_identity(const std::string& s) {
  for (Identity id : {Identity::rect_shuffle, Identity::rect_paths, Identity::delta_dyck_q1, Identity::delta_paths_q1,
                      Identity::cdinv_theorem, Identity::sweep_exponents, Identity::orbit_lemma})
    if (s == identity_name(id)) return id;
  throw ParseError("unknown identity '" + s + "'");
}

inline bool is_q_one(Identity id) { return id == Identity::delta_dyck_q1 || id == Identity::delta_paths_q1; }
inline bool is_decorated(Identity id) { return is_q_one(id); }
inline bool is_structural(Identity id) {
  return id == Identity::cdinv_theorem || id == Identity::sweep_exponents || id == Identity::orbit_lemma;
}

enum class Mode { exact, modular };
enum class Verdict { pass, fail, skipped };

inline const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "modular"; }
inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

struct IdentitySpec {
  Identity identity = Identity::rect_shuffle;
  int m = 1;
  int n = 1;
  int k = 0;
  Mode mode = Mode::exact;
  int points = 3;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 1;
  /// Compare only the pairing with h_{1^n}.
  bool hilbert = false;
  /// Add 1 to one combinatorial coefficient; the comparison must then fail.
  bool perturb = false;

  void validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("m and n must be at least 1");
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (is_decorated(identity) && k < 1) throw std::invalid_argument(std::string(identity_name(identity)) + " needs k >= 1");
    if (!is_decorated(identity) && k != 0) throw std::invalid_argument(std::string(identity_name(identity)) + " takes no k");
    if (is_q_one(identity) && mode == Mode::modular)
      throw std::invalid_argument(std::string(identity_name(identity)) + " is a q = 1 identity and runs in exact mode only");
    if (mode == Mode::modular && points < 1) throw std::invalid_argument("modular mode needs at least one point");
    if (mode == Mode::modular && !is_probable_prime(prime)) throw std::invalid_argument("modulus " + std::to_string(prime) + " is not prime");
  }
};

struct Witness {
  std::string where;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  IdentitySpec spec;
  Verdict verdict = Verdict::skipped;
  std::optional<Witness> witness;
  std::string lhs_fingerprint;
  std::string rhs_fingerprint;
  long long millis = 0;
  std::uint64_t paths = 0;
  std::uint64_t labellings = 0;
  /// Upper bound on the chance that a modular pass is wrong; 0 for exact.
  double failure_bound = 0;
  std::optional<std::string> lhs_hilbert;
  std::optional<std::string> rhs_hilbert;
  std::string note;

  /// "verified" for exact passes, "probabilistic" for modular passes.
  std::string label() const {
    if (verdict != Verdict::pass) return verdict_name(verdict);
    return spec.mode == Mode::exact ? "verified" : "probabilistic";
  }
};

/// 64-bit FNV-1a of a string, as 16 hex digits.
inline std::string fingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xf];
  return out;
}

/// Schwartz-Zippel total-degree bound used for the modular failure estimate.
inline long degree_bound(const IdentitySpec& s) { return 2L * (s.m + s.k) * (s.n + s.k); }

inline Partition column_partition(int n) { return Partition(std::vector<int>(n, 1)); }

/// The operator side before any q = 1 specialization, in the monomial basis.
template <CoefficientField F>
SymFunc<F> operator_side(const IdentitySpec& s, const MacdonaldOps<F>& ops) {
  const F& fld = ops.field();
  const int d = std::gcd(s.m, s.n);
  switch (s.identity) {
    case Identity::rect_shuffle: return ops.convert(ops.emn(s.m, s.n), Basis::monomial);
    case Identity::rect_paths:
      return ops.convert(ops.pmn(s.m, s.n), Basis::monomial).scaled(fld.embed(QTRational(q_integer_ratio(s.m, d))));
    case Identity::delta_dyck_q1: return ops.convert(ops.theta(ops.algebra().e(s.k), ops.emn(s.m, s.n)), Basis::monomial);
    case Identity::delta_paths_q1: {
      // [m+k]_q/[d]_q need not be a polynomial; it is folded in before q = 1.
      const QTRational pre(q_integer(s.m + s.k), q_integer(d));
      return ops.convert(ops.theta(ops.algebra().e(s.k), ops.pmn(s.m, s.n)), Basis::monomial).scaled(fld.embed(pre));
    }
    default: throw std::invalid_argument(std::string(identity_name(s.identity)) + " has no operator side");
  }
}

/// Exact operator side; q = 1 identities are specialized coefficientwise.
inline SymFunc<ExactField> lhs(const IdentitySpec& s, const MacdonaldOps<ExactField>& ops) {
  SymFunc<ExactField> f = operator_side(s, ops);
  if (!is_q_one(s.identity)) return f;
  SymFunc<ExactField> out(Basis::monomial, f.degree());
  for (const auto& [lambda, c] : f.coeffs()) out.add(lambda, limit_q_one(c));
  return out;
}

struct CombSide {
  SymFunc<ExactField> gf;
  std::uint64_t paths = 0;
  std::uint64_t labellings = 0;
};

inline CombSide rhs(const IdentitySpec& s, const CombOptions& opt = {}) {
  const PathFamily fam =
      (s.identity == Identity::rect_shuffle || s.identity == Identity::delta_dyck_q1) ? PathFamily::dyck : PathFamily::all;
  CombResult r = comb_gf(fam, s.m, s.n, s.k, opt);
  return {std::move(r.gf), r.paths, r.labellings};
}

struct VerifyOptions {
  std::optional<std::filesystem::path> cache_dir;
  CombOptions comb;
};

namespace detail {

inline std::string render_exact(const SymFunc<ExactField>& f) {
  std::ostringstream os;
  for (const auto& [lambda, c] : f.coeffs()) os << lambda.to_string() << '=' << c.to_string() << ';';
  return os.str();
}

inline SymFunc<ExactField> hilbert_only(const SymFunc<ExactField>& f) {
  SymFunc<ExactField> out(Basis::monomial, f.degree());
  const Partition col = column_partition(f.degree());
  out.add(col, f.coeff(col, ExactField{}));
  return out;
}

inline void perturb(SymFunc<ExactField>& f) {
  const Partition col = column_partition(f.degree());
  f.set(col, f.coeff(col, ExactField{}) + QTRational(1));
}

inline void finish_timing(VerificationReport& r, std::chrono::steady_clock::time_point start) {
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

// ---- structural suites over RP(m, n) ----

inline void run_cdinv_suite(VerificationReport& r) {
  const int m = r.spec.m;
  const int n = r.spec.n;
  std::string trace;
  for_each_rect_path(m, n, false, [&](const RectPath& p) {
    ++r.paths;
    const auto d = area_data(p);
    long bonus = 0;
    long deep = 0;
    for (long c : d.c) {
      if (c < 0) ++bonus;
      if (c < -static_cast<long>(m)) ++deep;
    }
    const long lhs_v = cdinv(p);
    const long rhs_v = pdinv(p) - static_cast<long>(attack_pairs(p).size()) - bonus - deep;
    trace += std::to_string(lhs_v) + ',';
    if (lhs_v != rhs_v && !r.witness) r.witness = Witness{p.steps(), std::to_string(lhs_v), std::to_string(rhs_v)};
  });
  r.lhs_fingerprint = fingerprint(trace);
  r.rhs_fingerprint = r.witness ? fingerprint(trace + "!") : r.lhs_fingerprint;
}

inline void run_sweep_suite(VerificationReport& r) {
  std::string trace;
  for_each_rect_path(r.spec.m, r.spec.n, false, [&](const RectPath& p) {
    ++r.paths;
    const auto [qe, te] = sweep_exponents(p);
    const StatRecord s = path_stats(p);
    trace += std::to_string(qe) + ':' + std::to_string(te) + ',';
    if ((qe != s.cdinv + s.bonus || te != s.area) && !r.witness)
      r.witness = Witness{p.steps(), "(" + std::to_string(qe) + "," + std::to_string(te) + ")",
                          "(" + std::to_string(s.cdinv + s.bonus) + "," + std::to_string(s.area) + ")"};
  });
  r.lhs_fingerprint = fingerprint(trace);
  r.rhs_fingerprint = r.witness ? fingerprint(trace + "!") : r.lhs_fingerprint;
}

inline void run_orbit_suite(VerificationReport& r) {
  const int m = r.spec.m;
  const int n = r.spec.n;
  auto fail = [&](const std::string& where, const std::string& l, const std::string& rr) {
    if (!r.witness) r.witness = Witness{where, l, rr};
  };
  std::set<std::string> seen;
  std::string trace;
  const auto orbits = orbit_partition(m, n);
  const QTPoly q = QTPoly::q();
  for (const auto& o : orbits) {
    const auto base_gf = path_gf(o.base);
    const auto [bq, bt] = sweep_exponents(o.base);
    int dyck = 0;
    std::vector<int> rs = o.r;
    std::sort(rs.begin(), rs.end());
    for (int k = 0; k < m; ++k) {
      const RectPath& mem = o.members[k];
      ++r.paths;
      if (!seen.insert(mem.steps()).second) fail(mem.steps(), "repeated", "distinct members");
      if (area_data(mem).dyck) ++dyck;
      if (rs[k] != k) fail(o.base.steps(), "r-values not a permutation", "{0..m-1}");
      const auto [mq, mt] = sweep_exponents(mem);
      if (mq - bq != o.r[k] || mt != bt)
        fail(mem.steps(), "sweep shift (" + std::to_string(mq - bq) + "," + std::to_string(mt - bt) + ")",
             "(" + std::to_string(o.r[k]) + ",0)");
      const auto gf = path_gf(mem);
      const QTRational shift = o.r[k] >= 0 ? QTRational(QTPoly::monomial(1, o.r[k], 0)) : QTRational(QTPoly(1), QTPoly::monomial(1, -o.r[k], 0));
      const auto expected = base_gf.scaled(shift);
      if (!(gf == expected)) fail(mem.steps(), detail::render_exact(gf), detail::render_exact(expected));
      trace += mem.steps() + ':' + std::to_string(o.r[k]) + ',';
    }
    if (dyck != 1) fail(o.base.steps(), std::to_string(dyck) + " Dyck members", "1");
  }
  std::uint64_t total = 0;
  for_each_rect_path(m, n, false, [&](const RectPath& p) {
    ++total;
    if (!seen.count(p.steps())) fail(p.steps(), "not covered", "covered by an orbit");
  });
  if (total != seen.size()) fail("orbit partition", std::to_string(seen.size()) + " members", std::to_string(total) + " paths");
  r.lhs_fingerprint = fingerprint(trace);
  r.rhs_fingerprint = r.witness ? fingerprint(trace + "!") : r.lhs_fingerprint;
}

}  // namespace detail

/// Hilbert coefficient of Theta_{e_2} e_{a,b} at q = 1 for both index orders
/// of the 3 x 4 decorated example, and which one equals the paths side.
struct ThetaOrderCheck {
  std::optional<QTRational> e12;  // <Theta_{e_2} e_{1,2}, h_{1^4}> at q = 1
  std::optional<QTRational> e21;  // empty: Theta_{e_2} e_{2,1} has degree 3
  QTRational combinatorial;       // Hilbert coefficient over decorated 3 x 4 Dyck paths
  std::string matched;            // "e_{1,2}", "e_{2,1}", or "none"
};

inline ThetaOrderCheck theta_order_check(const MacdonaldOps<ExactField>& ops) {
  ThetaOrderCheck out;
  const ExactField ex;
  auto hilbert_at_q_one = [&](int m, int n) -> std::optional<QTRational> {
    const auto f = ops.convert(ops.theta(ops.algebra().e(2), ops.emn(m, n)), Basis::monomial);
    if (f.degree() != 4) return std::nullopt;
    return limit_q_one(f.coeff(column_partition(4), ex));
  };
  out.e12 = hilbert_at_q_one(1, 2);
  out.e21 = hilbert_at_q_one(2, 1);
  out.combinatorial = comb_gf(PathFamily::dyck, 1, 2, 2).gf.coeff(column_partition(4), ex);
  out.matched = "none";
  if (out.e21 && *out.e21 == out.combinatorial) out.matched = "e_{2,1}";
  if (out.e12 && *out.e12 == out.combinatorial) out.matched = "e_{1,2}";
  return out;
}

/// Runs one identity cell. Exact mode compares coefficients; modular mode
/// compares evaluations at `points` random points, resampling a point up to
/// ten times when a denominator or eigenvalue vanishes there.
class Verifier {
 public:
  explicit Verifier(VerifyOptions opt = {}) : opt_(std::move(opt)), exact_(ExactField{}, opt_.cache_dir) {}

  const MacdonaldOps<ExactField>& exact_ops() const { return exact_; }

  VerificationReport verify(const IdentitySpec& s) const {
    s.validate();
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    r.spec = s;
    if (is_structural(s.identity)) {
      run_structural(r);
    } else {
      try {
        if (s.mode == Mode::exact)
          run_exact(r);
        else
          run_modular(r);
      } catch (const PoleAtQOne& e) {
        r.witness = Witness{"q = 1 specialization", e.what(), ""};
      }
      r.verdict = r.witness ? Verdict::fail : Verdict::pass;
      if (s.identity == Identity::delta_dyck_q1 && s.m == 1 && s.n == 2 && s.k == 2)
        r.note = "3 x 4 decorated example: index order " + theta_order_check(exact_).matched + " reproduces the paths side";
    }
    detail::finish_timing(r, start);
    return r;
  }

  /// The three structural suites on RP(m, n); the orbit suite is skipped
  /// unless gcd(m, n) = 1.
  std::vector<VerificationReport> verify_structural(int m, int n) const {
    std::vector<VerificationReport> out;
    for (Identity id : {Identity::cdinv_theorem, Identity::sweep_exponents, Identity::orbit_lemma}) {
      IdentitySpec s;
      s.identity = id;
      s.m = m;
      s.n = n;
      out.push_back(verify(s));
    }
    return out;
  }

  /// Every cell with m + n (+ 2k when decorated) <= max_semiperimeter, by
  /// semiperimeter, then m, then k.
  std::vector<VerificationReport> scan(int max_semiperimeter, const IdentitySpec& tmpl) const {
    return run_all(scan_cells(max_semiperimeter, tmpl));
  }

  static std::vector<IdentitySpec> scan_cells(int max_semiperimeter, const IdentitySpec& tmpl) {
    if (max_semiperimeter < 2) throw std::invalid_argument("scan needs a maximal semiperimeter of at least 2");
    std::vector<IdentitySpec> cells;
    const bool dec = is_decorated(tmpl.identity);
    for (int sp = 2; sp <= max_semiperimeter; ++sp)
      for (int m = 1; m < sp; ++m)
        for (int k = dec ? 1 : 0; dec ? 2 * k <= sp - m - 1 : k == 0; ++k) {
          const int n = sp - m - 2 * k;
          if (n < 1) continue;
          IdentitySpec s = tmpl;
          s.m = m;
          s.n = n;
          s.k = k;
          cells.push_back(s);
        }
    return cells;
  }

  std::vector<VerificationReport> run_all(const std::vector<IdentitySpec>& cells) const {
    std::vector<VerificationReport> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(verify(c));
    return out;
  }

 private:
  void run_structural(VerificationReport& r) const {
    const auto& s = r.spec;
    if (s.identity == Identity::orbit_lemma && std::gcd(s.m, s.n) != 1) {
      r.verdict = Verdict::skipped;
      r.note = "orbit partition needs coprime (m, n)";
      return;
    }
    switch (s.identity) {
      case Identity::cdinv_theorem: detail::run_cdinv_suite(r); break;
      case Identity::sweep_exponents: detail::run_sweep_suite(r); break;
      default: detail::run_orbit_suite(r); break;
    }
    if (s.perturb && !r.witness) r.witness = Witness{"self-test perturbation", "unperturbed", "perturbed"};
    r.verdict = r.witness ? Verdict::fail : Verdict::pass;
  }

  CombSide combinatorial(const VerificationReport& r) const {
    CombSide c = rhs(r.spec, opt_.comb);
    if (r.spec.perturb) detail::perturb(c.gf);
    return c;
  }

  void run_exact(VerificationReport& r) const {
    const auto& s = r.spec;
    CombSide c = combinatorial(r);
    r.paths = c.paths;
    r.labellings = c.labellings;
    SymFunc<ExactField> left = lhs(s, exact_);
    SymFunc<ExactField> right = std::move(c.gf);
    const Partition col = column_partition(left.degree());
    r.lhs_hilbert = left.coeff(col, ExactField{}).to_string();
    r.rhs_hilbert = right.coeff(col, ExactField{}).to_string();
    if (s.hilbert) {
      left = detail::hilbert_only(left);
      right = detail::hilbert_only(right);
    }
    r.lhs_fingerprint = fingerprint(detail::render_exact(left));
    r.rhs_fingerprint = fingerprint(detail::render_exact(right));
    for (const auto& lambda : partitions_of(left.degree())) {
      const QTRational a = left.coeff(lambda, ExactField{});
      const QTRational b = right.coeff(lambda, ExactField{});
      if (!(a == b)) {
        r.witness = Witness{"m" + lambda.to_string(), a.to_string(), b.to_string()};
        break;
      }
    }
  }

  void run_modular(VerificationReport& r) const {
    const auto& s = r.spec;
    CombSide c = combinatorial(r);
    r.paths = c.paths;
    r.labellings = c.labellings;
    const auto parts = partitions_of(s.n + s.k);
    const Partition col = column_partition(s.n + s.k);
    std::mt19937_64 rng(s.seed);
    std::string ltrace;
    std::string rtrace;
    for (int i = 0; i < s.points && !r.witness; ++i) {
      for (int attempt = 0;; ++attempt) {
        const ModContext ctx = sample_point(rng, s.prime);
        try {
          const ModularField fld(ctx);
          const MacdonaldOps<ModularField> ops(fld, opt_.cache_dir);
          const SymFunc<ModularField> left = operator_side(s, ops);
          for (const auto& lambda : parts) {
            if (s.hilbert && !(lambda == col)) continue;
            const ModScalar a = left.coeff(lambda, fld);
            const ModScalar b = fld.embed(c.gf.coeff(lambda, ExactField{}));
            ltrace += a.to_string() + ',';
            rtrace += b.to_string() + ',';
            if (!(a == b)) {
              r.witness = Witness{"m" + lambda.to_string() + " at " + ctx.to_string(), a.to_string(), b.to_string()};
              break;
            }
          }
          break;
        } catch (const SingularTransition&) {
        } catch (const SingularEigenvalue&) {
        } catch (const DenominatorVanishes&) {
        }
        if (attempt + 1 >= 10) throw std::runtime_error("no usable evaluation point after 10 attempts");
      }
    }
    r.lhs_fingerprint = fingerprint(ltrace);
    r.rhs_fingerprint = fingerprint(rtrace);
    r.failure_bound = std::pow(static_cast<double>(degree_bound(s)) / static_cast<double>(s.prime), s.points);
  }

  VerifyOptions opt_;
  MacdonaldOps<ExactField> exact_;
};

}  // namespace rectlab
