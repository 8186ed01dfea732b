#pragma once

// Command-line front end. run_command parses argv, dispatches, and returns
// the process exit code: 0 when nothing failed, 1 on a fail verdict or a
// runtime error, 2 on invalid arguments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "comb_gf.hpp"
#include "paths.hpp"
#include "report.hpp"
#include "sweep.hpp"
#include "verify.hpp"

namespace rectlab {

enum class OutputFormat { json, csv, pretty };

struct CliConfig {
  std::string command;
  int m = 0;
  int n = 0;
  int k = 0;
  bool dyck = false;
  std::string identity;
  std::string mode = "exact";
  std::uint64_t prime = kDefaultPrime;
  int points = 3;
  std::uint64_t seed = 1;
  int max_semiperimeter = 0;
  std::string cache_dir;
  std::string format = "json";
  std::string out;
  std::string path;
  std::string labels;
  bool hilbert = false;
  bool perturb = false;
  bool verbose = false;
  std::uint64_t budget = CombOptions{}.labelling_budget;
};

/// --cache-dir, else $RECTLAB_CACHE_DIR, else $XDG_CACHE_HOME/rectlab, else
/// ~/.cache/rectlab; empty when none is available.
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("RECTLAB_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "rectlab";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "rectlab";
  return std::nullopt;
}

namespace detail {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline OutputFormat parse_format(const std::string& f) {
  if (f == "json") return OutputFormat::json;
  if (f == "csv") return OutputFormat::csv;
  if (f == "pretty") return OutputFormat::pretty;
  throw UsageError("unknown format '" + f + "'");
}

inline void require_size(const CliConfig& c) {
  if (c.m < 1 || c.n < 1) throw UsageError("--m and --n must be positive");
  if (c.k < 0) throw UsageError("--k must be non-negative");
}

inline std::string symfunc_json(const SymFunc<ExactField>& f) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [lambda, c] : f.coeffs()) j[lambda.to_string()] = c.to_string();
  return j.dump();
}

inline IdentitySpec spec_from(const CliConfig& c) {
  IdentitySpec s;
  if (c.identity.empty()) throw UsageError("--identity is required");
  try {
    s.identity = parse_identity(c.identity);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  s.m = c.m;
  s.n = c.n;
  s.k = c.k;
  if (c.mode == "exact")
    s.mode = Mode::exact;
  else if (c.mode == "modular")
    s.mode = Mode::modular;
  else
    throw UsageError("unknown mode '" + c.mode + "'");
  s.points = c.points;
  s.prime = c.prime;
  s.seed = c.seed;
  s.hilbert = c.hilbert;
  s.perturb = c.perturb;
  return s;
}

inline std::string emit_reports(const std::vector<VerificationReport>& reports, OutputFormat fmt, bool single) {
  std::ostringstream os;
  switch (fmt) {
    case OutputFormat::json:
      if (single) {
        os << to_json(reports.front()).dump() << '\n';
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        os << nlohmann::json{{"schema", kReportSchema}, {"reports", arr}}.dump() << '\n';
      }
      break;
    case OutputFormat::csv:
      os << csv_header() << '\n';
      for (const auto& r : reports) os << to_csv_row(r) << '\n';
      break;
    case OutputFormat::pretty:
      for (const auto& r : reports) os << to_pretty(r) << '\n';
      break;
  }
  return os.str();
}

inline bool any_fail(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.verdict == Verdict::fail) return true;
  return false;
}

inline nlohmann::json path_entry(const DecoratedPath& d) {
  PathLiteral lit{d.path.steps(), d.dr, std::nullopt, d.k() > 0};
  nlohmann::json j{{"path", lit.to_string()}, {"area", area_data(d).area}};
  if (d.k() == 0) {
    const StatRecord s = path_stats(d.path);
    j["dinv_shift"] = s.cdinv + s.bonus;
    j["maxtdinv"] = s.maxtdinv;
  }
  return j;
}

/// Returns {exit code, text}.
inline std::pair<int, std::string> dispatch(const CliConfig& c) {
  const OutputFormat fmt = parse_format(c.format);
  const auto cache = resolve_cache_dir(c.cache_dir);
  std::ostringstream os;

  if (c.command == "enumerate") {
    require_size(c);
    nlohmann::json arr = nlohmann::json::array();
    if (c.k > 0) {
      for (const auto& d : decorated_paths(c.m, c.n, c.k, c.dyck)) arr.push_back(path_entry(d));
    } else {
      for_each_rect_path(c.m, c.n, c.dyck, [&](const RectPath& p) { arr.push_back(path_entry(DecoratedPath(p))); });
    }
    os << nlohmann::json{{"schema", kReportSchema}, {"m", c.m}, {"n", c.n}, {"k", c.k}, {"dyck_only", c.dyck}, {"count", arr.size()}, {"paths", arr}}.dump()
       << '\n';
    return {0, os.str()};
  }

  if (c.command == "stats") {
    if (c.path.empty()) throw UsageError("--path is required");
    PathLiteral lit;
    try {
      lit = parse_path_literal(c.path);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
    if (!c.labels.empty()) lit.labels = detail::parse_int_list(c.labels, "label");
    const RectPath p = RectPath::from_word(lit.word);
    const DecoratedPath d(p, lit.dr);
    if (c.m && c.m != p.m()) throw UsageError("--m does not match the path");
    if (c.n && c.n != p.n()) throw UsageError("--n does not match the path");
    nlohmann::json j{{"schema", kReportSchema}, {"path", lit.to_string()}, {"m", p.m()}, {"n", p.n()}};
    j["area_data"] = to_json(area_data(d));
    if (d.k() == 0) {
      j["stats"] = lit.labels ? to_json(path_stats(p, *lit.labels)) : to_json(path_stats(p));
      if (!lit.labels) j["stats"].erase("tdinv");
      if (c.verbose) j["sweep"] = to_json(sweep(p));
    }
    if (fmt == OutputFormat::pretty) {
      for (const auto& [key, val] : j.items()) os << key << ": " << val.dump() << '\n';
    } else {
      os << j.dump() << '\n';
    }
    return {0, os.str()};
  }

  if (c.command == "gf") {
    require_size(c);
    CombOptions opt;
    opt.labelling_budget = c.budget;
    const auto r = comb_gf(c.dyck ? PathFamily::dyck : PathFamily::all, c.m, c.n, c.k, opt);
    nlohmann::json j{{"schema", kReportSchema}, {"m", c.m}, {"n", c.n}, {"k", c.k}, {"dyck_only", c.dyck}, {"basis", "m"}};
    j["coefficients"] = nlohmann::json::parse(symfunc_json(r.gf));
    j["counts"] = {{"paths", r.paths}, {"labellings", r.labellings}};
    os << j.dump() << '\n';
    return {0, os.str()};
  }

  if (c.command == "lhs") {
    IdentitySpec s = spec_from(c);
    if (s.mode != Mode::exact) throw UsageError("lhs runs in exact mode only");
    s.validate();
    if (is_structural(s.identity)) throw UsageError(std::string(identity_name(s.identity)) + " has no operator side");
    const MacdonaldOps<ExactField> ops(ExactField{}, cache);
    const auto f = lhs(s, ops);
    nlohmann::json j{{"schema", kReportSchema}, {"identity", identity_name(s.identity)}, {"m", s.m}, {"n", s.n}, {"k", s.k}, {"basis", "m"}};
    j["coefficients"] = nlohmann::json::parse(symfunc_json(f));
    os << j.dump() << '\n';
    return {0, os.str()};
  }

  VerifyOptions vopt;
  vopt.cache_dir = cache;
  vopt.comb.labelling_budget = c.budget;

  if (c.command == "verify") {
    const IdentitySpec s = spec_from(c);
    s.validate();
    const Verifier v(vopt);
    std::vector<VerificationReport> reports{v.verify(s)};
    return {any_fail(reports) ? 1 : 0, emit_reports(reports, fmt, true)};
  }

  if (c.command == "verify-structural") {
    require_size(c);
    const Verifier v(vopt);
    const auto reports = v.verify_structural(c.m, c.n);
    return {any_fail(reports) ? 1 : 0, emit_reports(reports, fmt, false)};
  }

  if (c.command == "scan") {
    CliConfig probe = c;
    probe.m = 1;
    probe.n = 1;
    probe.k = 1;
    IdentitySpec tmpl = spec_from(probe);
    tmpl.k = is_decorated(tmpl.identity) ? 1 : 0;
    tmpl.validate();
    if (c.max_semiperimeter < 2) throw UsageError("--max-semiperimeter must be at least 2");
    const Verifier v(vopt);
    const auto reports = v.scan(c.max_semiperimeter, tmpl);
    return {any_fail(reports) ? 1 : 0, emit_reports(reports, fmt, false)};
  }

  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace detail

inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CliConfig c;
  CLI::App app{"Rectangular shuffle identities: operator side versus labelled lattice paths"};
  app.require_subcommand(1);

  auto add_size = [&](CLI::App* sub, bool with_k) {
    sub->add_option("--m", c.m, "width of the rectangle");
    sub->add_option("--n", c.n, "height of the rectangle");
    if (with_k) sub->add_option("--k", c.k, "number of decorated rises");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
    sub->add_flag("-v,--verbose", c.verbose, "more detail");
  };
  auto add_verify = [&](CLI::App* sub) {
    sub->add_option("--identity", c.identity, "rect-shuffle, rect-paths, delta-dyck-q1, delta-paths-q1, cdinv-theorem, sweep-exponents, orbit-lemma");
    sub->add_option("--mode", c.mode, "exact or modular")->check(CLI::IsMember({"exact", "modular"}));
    sub->add_option("--prime", c.prime, "modulus for modular mode");
    sub->add_option("--points", c.points, "evaluation points in modular mode");
    sub->add_option("--seed", c.seed, "seed for evaluation points");
    sub->add_option("--cache-dir", c.cache_dir, "Macdonald transition cache directory");
    sub->add_option("--labelling-budget", c.budget, "abort after this many labellings");
    sub->add_flag("--hilbert", c.hilbert, "compare only the pairing with h_{1^n}");
    sub->add_flag("--self-test-perturb", c.perturb, "perturb one combinatorial coefficient (must fail)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "list rectangular paths with area and dinv shift");
  add_size(enumerate, true);
  enumerate->add_flag("--dyck", c.dyck, "Dyck paths only");
  add_output(enumerate);

  auto* stats = app.add_subcommand("stats", "statistics of one path literal word[*{rows}][|labels]");
  add_size(stats, false);
  stats->add_option("--path", c.path, "path literal")->required();
  stats->add_option("--labels", c.labels, "comma-separated labels, bottom to top");
  add_output(stats);

  auto* gf = app.add_subcommand("gf", "combinatorial generating function in the monomial basis");
  add_size(gf, true);
  gf->add_flag("--dyck", c.dyck, "Dyck paths only");
  gf->add_option("--labelling-budget", c.budget, "abort after this many labellings");
  add_output(gf);

  auto* lhs_cmd = app.add_subcommand("lhs", "operator side of an identity in the monomial basis");
  add_size(lhs_cmd, true);
  add_verify(lhs_cmd);
  add_output(lhs_cmd);

  auto* verify = app.add_subcommand("verify", "compare both sides of one identity");
  add_size(verify, true);
  add_verify(verify);
  add_output(verify);

  auto* structural = app.add_subcommand("verify-structural", "cdinv, sweep and orbit suites over all m x n paths");
  add_size(structural, false);
  structural->add_option("--cache-dir", c.cache_dir, "Macdonald transition cache directory");
  add_output(structural);

  auto* scan = app.add_subcommand("scan", "verify an identity on every cell up to a semiperimeter");
  scan->add_option("--max-semiperimeter", c.max_semiperimeter, "largest m+n (+2k when decorated)")->required();
  add_verify(scan);
  add_output(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();

  try {
    auto [code, text] = detail::dispatch(c);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out);
      f << text;
      if (!f) {
        err << "error: cannot write " << c.out << '\n';
        return 1;
      }
    }
    return code;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidPath& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rectlab
