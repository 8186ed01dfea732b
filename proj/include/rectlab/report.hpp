#pragma once

// Serialization of verification reports and path statistics: JSON (schema 1),
// CSV, and a short human-readable form.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paths.hpp"
#include "sweep.hpp"
#include "verify.hpp"

namespace rectlab {

inline constexpr int kReportSchema = 1;

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["identity"] = identity_name(r.spec.identity);
  j["m"] = r.spec.m;
  j["n"] = r.spec.n;
  j["k"] = r.spec.k;
  j["mode"] = mode_name(r.spec.mode);
  j["verdict"] = verdict_name(r.verdict);
  j["label"] = r.label();
  j["lhs_fingerprint"] = r.lhs_fingerprint;
  j["rhs_fingerprint"] = r.rhs_fingerprint;
  if (r.witness) j["witness"] = {{"where", r.witness->where}, {"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}};
  j["millis"] = r.millis;
  j["counts"] = {{"paths", r.paths}, {"labellings", r.labellings}};
  if (r.spec.mode == Mode::modular) {
    j["points"] = r.spec.points;
    j["prime"] = r.spec.prime;
    j["seed"] = r.spec.seed;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r.failure_bound);
    j["failure_bound"] = buf;
  }
  if (r.spec.hilbert) j["hilbert_only"] = true;
  if (r.lhs_hilbert) j["hilbert"] = {{"lhs", *r.lhs_hilbert}, {"rhs", *r.rhs_hilbert}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string csv_header() {
  return "identity,m,n,k,mode,verdict,label,lhs_fingerprint,rhs_fingerprint,millis,paths,labellings,witness";
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << identity_name(r.spec.identity) << ',' << r.spec.m << ',' << r.spec.n << ',' << r.spec.k << ',' << mode_name(r.spec.mode) << ','
     << verdict_name(r.verdict) << ',' << r.label() << ',' << r.lhs_fingerprint << ',' << r.rhs_fingerprint << ',' << r.millis << ','
     << r.paths << ',' << r.labellings << ',';
  if (r.witness) os << csv_escape(r.witness->where + ": " + r.witness->lhs + " vs " + r.witness->rhs);
  return os.str();
}

inline std::string to_pretty(const VerificationReport& r) {
  std::ostringstream os;
  os << identity_name(r.spec.identity) << " m=" << r.spec.m << " n=" << r.spec.n;
  if (r.spec.k) os << " k=" << r.spec.k;
  os << " [" << mode_name(r.spec.mode) << "] " << r.label() << " (" << r.millis << " ms, " << r.paths << " paths, " << r.labellings
     << " labellings)";
  if (r.lhs_hilbert && r.spec.hilbert) os << "\n  operator side Hilbert series: " << *r.lhs_hilbert << "\n  paths side Hilbert series:    " << *r.rhs_hilbert;
  if (r.witness) os << "\n  witness at " << r.witness->where << ":\n    lhs: " << r.witness->lhs << "\n    rhs: " << r.witness->rhs;
  if (!r.note.empty()) os << "\n  note: " << r.note;
  return os.str();
}

inline nlohmann::json to_json(const StatRecord& s) {
  return {{"area", s.area},   {"tdinv", s.tdinv}, {"maxtdinv", s.maxtdinv},     {"pdinv", s.pdinv},
          {"cdinv", s.cdinv}, {"bonus", s.bonus}, {"deep_bonus", s.deep_bonus}, {"dinv", s.dinv}};
}

inline nlohmann::json to_json(const AreaData& a) {
  return {{"area_word_scaled", a.c}, {"scale", a.scale}, {"shift_scaled", a.shift}, {"area", a.area}, {"dyck", a.dyck}};
}

inline nlohmann::json to_json(const SweepResult& s) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : s.points) pts.push_back({{"x", p.x}, {"y", p.y}, {"class", point_class_name(p.cls)}, {"a", p.a}});
  return {{"q_exp", s.q_exp}, {"t_exp", s.t_exp}, {"points", pts}};
}

}  // namespace rectlab
