// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "oracles.hpp"

using namespace rectlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

const ExactField ex;
const QTPoly q = QTPoly::q();
const QTPoly t = QTPoly::t();

const Verifier& verifier() {
  static const Verifier v{VerifyOptions{std::filesystem::path(RECTLAB_TEST_CACHE), {}}};
  return v;
}
const MacdonaldOps<ExactField>& ops() { return verifier().exact_ops(); }
const Algebra<ExactField>& alg() { return ops().algebra(); }

/// Collects the first few mismatches of a criterion.
struct Outcome {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
  void info(const std::string& s) { notes.push_back(s); }
};

struct Criterion {
  int id;
  std::string name;
  std::optional<double> limit_s;
  std::function<void(Outcome&)> run;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

IdentitySpec cell(Identity id, int m, int n, int k = 0, Mode mode = Mode::exact) {
  IdentitySpec s;
  s.identity = id;
  s.m = m;
  s.n = n;
  s.k = k;
  s.mode = mode;
  return s;
}

/// Runs a scan and records every non-pass cell; returns the wall time.
double scan_into(Outcome& o, int max_sp, const IdentitySpec& tmpl) {
  const auto start = Clock::now();
  for (const auto& c : Verifier::scan_cells(max_sp, tmpl)) {
    const auto r = verifier().verify(c);
    std::ostringstream where;
    where << identity_name(c.identity) << ' ' << mode_name(c.mode) << " (" << c.m << ',' << c.n;
    if (c.k) where << ",k=" << c.k;
    where << "): " << verdict_name(r.verdict);
    if (r.witness) where << " at " << r.witness->where;
    o.expect(r.verdict == Verdict::pass, where.str());
  }
  return seconds_since(start);
}

/// Exact scan up to 8 and modular scan up to 10, each within ten minutes.
void theorem_scan(Outcome& o, Identity id) {
  IdentitySpec tmpl = cell(id, 1, 1);
  const double exact = scan_into(o, 8, tmpl);
  tmpl.mode = Mode::modular;
  tmpl.points = 3;
  tmpl.prime = kDefaultPrime;
  const double modular = scan_into(o, 10, tmpl);
  o.expect(exact < 600, "exact scan took " + fmt_seconds(exact));
  o.expect(modular < 600, "modular scan took " + fmt_seconds(modular));
  o.info("exact m+n<=8 in " + fmt_seconds(exact) + ", modular m+n<=10 in " + fmt_seconds(modular));
}

void structural_scan(Outcome& o, Identity id, int max_sp, bool coprime_only) {
  for (int m = 1; m < max_sp; ++m)
    for (int n = 1; m + n <= max_sp; ++n) {
      if (coprime_only && std::gcd(m, n) != 1) continue;
      const auto r = verifier().verify(cell(id, m, n));
      std::string what = std::string(identity_name(id)) + " (" + std::to_string(m) + "," + std::to_string(n) + ")";
      if (r.witness) what += " at " + r.witness->where + ": " + r.witness->lhs + " vs " + r.witness->rhs;
      o.expect(r.verdict == Verdict::pass, what);
    }
}

SymFunc<ExactField> random_symfunc(oracle::Gen& gen, int n) {
  SymFunc<ExactField> f(Basis::powersum, n);
  for (const auto& lambda : partitions_of(n))
    if (gen.uniform(0, 2) > 0) f.add(lambda, gen.rational(1));
  return f;
}

// ---- criteria ----

void hilbert_example(Outcome& o) {
  const auto r = verifier().verify(cell(Identity::rect_paths, 2, 3));
  const std::string want = ((QTPoly(1) + q) * (q + t + QTPoly(2))).to_string();
  o.expect(want == "q^2 + q*t + 3*q + t + 2", "expected series renders as " + want);
  o.expect(r.verdict == Verdict::pass, "rect-paths (2,3) " + std::string(verdict_name(r.verdict)));
  o.expect(r.lhs_hilbert && *r.lhs_hilbert == want, "operator side " + r.lhs_hilbert.value_or("?"));
  o.expect(r.rhs_hilbert && *r.rhs_hilbert == want, "paths side " + r.rhs_hilbert.value_or("?"));
}

void theta_example(Outcome& o) {
  const auto c = theta_order_check(ops());
  const QTRational want(t * t + QTPoly::monomial(5, 0, 1) + QTPoly(11));
  o.expect(c.combinatorial == want, "paths side " + c.combinatorial.to_string());
  o.expect(c.matched != "none", "no index order matched");
  const auto& matched = c.matched == "e_{2,1}" ? c.e21 : c.e12;
  o.expect(matched && *matched == want, "operator side " + (matched ? matched->to_string() : std::string("absent")));
  o.info("index order " + c.matched + " matched");
}

void figure_regressions(Outcome& o) {
  const auto a = area_data(RectPath::from_word("NEENNNEENNNEENNE"));
  o.expect(a.c == std::vector<long>{0, -11, -4, 3, -8, -1, 6, -5, 2} && a.scale == 9, "7x9 area word");
  o.expect(a.shift == 11 && a.area == 5, "7x9 shift 11/9 and area 5");
  o.expect(area_data(DecoratedPath(RectPath::from_word("NNNENENNNEENNEE"), {3, 6, 7})).area == 3, "6x9 decorated area 3");
  const auto s = path_stats(RectPath::from_word("NNENEENNENNE"), {2, 3, 1, 2, 4, 3, 4});
  o.expect(s.tdinv == 4 && s.cdinv == -4 && s.bonus == 3 && s.dinv == 3, "5x7 dinv record (4,-4,3,3)");
  const RectPath p = RectPath::from_word("NNENNEENNEE");
  std::vector<int> r;
  for (int k = 1; k < p.m(); ++k) r.push_back(r_k(p, k));
  o.expect(r == std::vector<int>{2, 4, 1, 3}, "5x6 r-values (2,4,1,3)");
  o.expect(phi_k(p, 3).steps() == "NNEENNENNEE", "5x6 phi_3 output");
  o.expect(sweep(RectPath::from_word("ENENNENENEEE")).points.size() == 17, "7x5 sweep visits 17 points");
}

void delta_scan(Outcome& o) {
  for (Identity id : {Identity::delta_dyck_q1, Identity::delta_paths_q1}) scan_into(o, 8, cell(id, 1, 1, 1));
}

void sweep_scan(Outcome& o) {
  structural_scan(o, Identity::sweep_exponents, 9, false);
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; m + n <= 9; ++n)
      for_each_rect_path(m, n, false, [&](const RectPath& p) {
        const auto np = oracle::naive(p);
        o.expect(sweep_exponents(p) == std::make_pair(np.cdinv() + np.bonus(), np.area()), "sweep vs reference statistics at " + p.steps());
      });
}

void property_suites(Outcome& o) {
  oracle::Gen gen(2024);
  long fact = 1;
  for (int n = 1; n <= 6; ++n) {
    fact *= n;
    const Partition col(std::vector<int>(n, 1));
    for (const auto& mu : partitions_of(n)) {
      const auto a = ops().htilde(mu);
      const auto b = ops().htilde(mu.conjugate());
      bool sym = true;
      for (const auto& lambda : partitions_of(n)) sym = sym && a.coeff(lambda, ex) == b.coeff(lambda, ex).swap_qt();
      o.expect(sym, "H~ conjugation symmetry at " + mu.to_string());
      o.expect(a.coeff(col, ex).num().eval(1, 1) == fact, "H~ n! specialization at " + mu.to_string());
    }
  }
  constexpr Basis classical[] = {Basis::monomial, Basis::elementary, Basis::homogeneous, Basis::powersum, Basis::schur};
  for (int n = 1; n <= 6; ++n) {
    const auto f = random_symfunc(gen, n);
    for (Basis b : classical) o.expect(alg().convert(alg().convert(f, b), Basis::powersum) == f, "roundtrip through " + std::string(basis_name(b)));
    if (n <= 5) o.expect(ops().convert(ops().to_macdonald(f), Basis::powersum) == f, "roundtrip through H~ at degree " + std::to_string(n));
    for (const auto& lambda : partitions_of(n))
      for (const auto& mu : partitions_of(n)) {
        const QTRational delta(lambda == mu ? 1 : 0);
        o.expect(alg().hall(alg().basis_element(Basis::homogeneous, lambda), alg().m(mu)) == delta, "<h,m> table");
        o.expect(alg().hall(alg().s(lambda), alg().s(mu)) == delta, "<s,s> table");
      }
  }
  const std::vector<SymFunc<ExactField>> inputs{alg().one(), alg().e(1), random_symfunc(gen, 2)};
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; m + n <= 6; ++n)
      for (const auto& f : inputs) {
        if (f.degree() + n > 6) continue;
        const auto ref = ops().qmn(m, n, f);
        for (const auto& s : MacdonaldOps<ExactField>::valid_splits(m, n)) {
          bool reachable = true;
          for (int i : {0, 2})
            if ((s[i] == 0 && s[i + 1] != 1) || (s[i + 1] == 0 && s[i] != 1)) reachable = false;
          if (reachable) o.expect(ops().equal(ops().qmn_with_split(s, f), ref), "Q_{" + std::to_string(m) + "," + std::to_string(n) + "} splitting");
        }
      }
  for (int k = 0; k <= 3; ++k)
    for (int n = 0; n + k <= 6; ++n) {
      const auto g = k == 0 ? alg().one() : random_symfunc(gen, k);
      const auto f = n == 0 ? alg().one() : random_symfunc(gen, n);
      o.expect(ops().theta(g, f).degree() == n + k, "Theta degree law");
    }
  const ModularField mf(sample_point(gen.rng()));
  const MacdonaldOps<ModularField> mops(mf, std::filesystem::path(RECTLAB_TEST_CACHE));
  auto agree = [&](const SymFunc<ExactField>& e, const SymFunc<ModularField>& m) {
    const auto em = ops().convert(e, Basis::monomial);
    const auto mm = mops.convert(m, Basis::monomial);
    for (const auto& lambda : partitions_of(e.degree()))
      if (!(mf.embed(em.coeff(lambda, ex)) == mm.coeff(lambda, mf))) return false;
    return true;
  };
  for (int n = 1; n <= 5; ++n) {
    const auto f = random_symfunc(gen, n);
    SymFunc<ModularField> fm(f.basis(), n);
    for (const auto& [lambda, c] : f.coeffs()) fm.add(lambda, mf.embed(c));
    o.expect(agree(ops().nabla(f), mops.nabla(fm)), "exact vs modular nabla");
    o.expect(agree(ops().delta(alg().e(2), f), mops.delta(mops.algebra().e(2), fm)), "exact vs modular delta");
    if (n <= 4) o.expect(agree(ops().theta(alg().e(1), f), mops.theta(mops.algebra().e(1), fm)), "exact vs modular theta");
  }
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5 && m + n <= 6; ++n) {
      o.expect(agree(ops().emn(m, n), mops.emn(m, n)), "exact vs modular e_{m,n}");
      o.expect(agree(ops().pmn(m, n), mops.pmn(m, n)), "exact vs modular p_{m,n}");
    }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "hilbert-series example", 1.0, hilbert_example},
      {2, "theta example at q=1", 30.0, theta_example},
      {3, "figure regressions", 1.0, figure_regressions},
      {4, "rectangular shuffle theorem", 1200.0, [](Outcome& o) { theorem_scan(o, Identity::rect_shuffle); }},
      {5, "rectangular paths identity", 1200.0, [](Outcome& o) { theorem_scan(o, Identity::rect_paths); }},
      {6, "delta identities at q=1", 900.0, delta_scan},
      {7, "cdinv structural identity", 120.0, [](Outcome& o) { structural_scan(o, Identity::cdinv_theorem, 10, false); }},
      {8, "sweep bookkeeping", std::nullopt, sweep_scan},
      {9, "cycling lemma and orbits", std::nullopt, [](Outcome& o) { structural_scan(o, Identity::orbit_lemma, 8, true); }},
      {10, "property suites", std::nullopt, property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      ++o.failures;
      o.notes.insert(o.notes.begin(), std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(start);
    const bool in_time = !c.limit_s || secs < *c.limit_s;
    const bool pass = o.failures == 0 && o.checks > 0 && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name << " (" << fmt_seconds(secs);
    if (c.limit_s) std::cout << " < " << fmt_seconds(*c.limit_s);
    std::cout << ", " << o.checks << " checks, " << o.failures << " failures)";
    if (!in_time) std::cout << " over time limit";
    if (!o.notes.empty()) std::cout << ": " << join(o.notes);
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
