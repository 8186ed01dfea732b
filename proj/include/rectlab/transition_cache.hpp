#pragma once

// On-disk cache of exact Macdonald transition data, one versioned JSON file
// per degree. Files are validated on load; anything malformed or
// inconsistent is deleted so the caller rebuilds it.

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "htilde.hpp"
#include "modular.hpp"
#include "qtrational.hpp"
#include "symfunc.hpp"

namespace rectlab {

inline constexpr int kCacheFormatVersion = 1;

/// Exact transition for one degree: H~ in monomials and the dual matrix that
/// reads H~ coordinates off power-sum coordinates (dual[nu][mu]).
struct ExactTransition {
  HTildeTable htilde;
  std::vector<std::vector<QTRational>> dual;
};

class TransitionCache {
 public:
  explicit TransitionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path file_for(int degree) const { return dir_ / ("macdonald-" + std::to_string(degree) + ".json"); }

  /// Loads the H~ table (and the dual matrix when stored). Returns nothing if
  /// the file is missing or fails validation; invalid files are removed.
  std::optional<ExactTransition> load(int degree) const {
    const auto path = file_for(degree);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
      std::ifstream in(path);
      nlohmann::json j = nlohmann::json::parse(in);
      ExactTransition tr = decode(j, degree);
      validate(tr);
      return tr;
    } catch (const std::exception&) {
      std::filesystem::remove(path, ec);
      return std::nullopt;
    }
  }

  void store(const ExactTransition& tr) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto path = file_for(tr.htilde.degree);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << encode(tr).dump();
      if (!out) return;
    }
    std::filesystem::rename(tmp, path, ec);
  }

  static nlohmann::json encode(const ExactTransition& tr) {
    nlohmann::json j;
    j["format"] = "rectlab-macdonald-transition";
    j["version"] = kCacheFormatVersion;
    j["degree"] = tr.htilde.degree;
    j["partitions"] = nlohmann::json::array();
    for (const auto& p : tr.htilde.parts) j["partitions"].push_back(p.to_string());
    j["htilde"] = nlohmann::json::array();
    for (const auto& row : tr.htilde.rows) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& c : row) r.push_back(c.to_string());
      j["htilde"].push_back(r);
    }
    if (!tr.dual.empty()) {
      j["dual"] = nlohmann::json::array();
      for (const auto& row : tr.dual) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) r.push_back({c.num().to_string(), c.den().to_string()});
        j["dual"].push_back(r);
      }
    }
    return j;
  }

  static ExactTransition decode(const nlohmann::json& j, int degree) {
    if (j.at("format") != "rectlab-macdonald-transition" || j.at("version") != kCacheFormatVersion || j.at("degree") != degree)
      throw std::runtime_error("cache header mismatch");
    ExactTransition tr;
    tr.htilde.degree = degree;
    tr.htilde.parts = partitions_of(degree);
    const std::size_t dim = tr.htilde.parts.size();
    const auto& names = j.at("partitions");
    if (names.size() != dim) throw std::runtime_error("cache partition count");
    for (std::size_t i = 0; i < dim; ++i)
      if (names[i].get<std::string>() != tr.htilde.parts[i].to_string()) throw std::runtime_error("cache partition order");
    const auto& rows = j.at("htilde");
    if (rows.size() != dim) throw std::runtime_error("cache row count");
    for (const auto& row : rows) {
      if (row.size() != dim) throw std::runtime_error("cache column count");
      std::vector<QTPoly> r;
      for (const auto& c : row) r.push_back(parse_poly(c.get<std::string>()));
      tr.htilde.rows.push_back(std::move(r));
    }
    if (j.contains("dual")) {
      const auto& d = j.at("dual");
      if (d.size() != dim) throw std::runtime_error("cache dual rows");
      for (const auto& row : d) {
        if (row.size() != dim) throw std::runtime_error("cache dual columns");
        std::vector<QTRational> r;
        for (const auto& c : row) {
          QTPoly num = parse_poly(c.at(0).get<std::string>());
          QTPoly den = parse_poly(c.at(1).get<std::string>());
          if (den.is_zero() || den.leading().coeff < 0) throw std::runtime_error("cache denominator");
          r.push_back(QTRational::from_reduced(std::move(num), std::move(den)));
        }
        tr.dual.push_back(std::move(r));
      }
    }
    return tr;
  }

  /// Cheap consistency checks: H~_mu has m_n coefficient 1 and m_{1^n}
  /// coefficient n! at q = t = 1; the dual inverts H~ at a fixed random point.
  static void validate(const ExactTransition& tr) {
    const auto& t = tr.htilde;
    const std::size_t dim = t.parts.size();
    mpz_class fact = 1;
    for (int i = 2; i <= t.degree; ++i) fact *= i;
    for (std::size_t i = 0; i < dim; ++i) {
      if (t.rows[i][0] != QTPoly(1)) throw std::runtime_error("cache: leading coefficient");
      if (t.rows[i][dim - 1].eval(1, 1) != fact) throw std::runtime_error("cache: n! check");
    }
    if (tr.dual.empty()) return;
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(t.degree));
    const ModContext ctx = sample_point(rng);
    const ModularField field(ctx);
    const auto& m2p = classical_tables(t.degree).to_p.at(Basis::monomial);
    // hp[mu][nu] = sum_lambda H[mu][lambda] * (m_lambda in p)[nu]
    std::vector<std::vector<ModScalar>> hp(dim, std::vector<ModScalar>(dim, field.zero()));
    for (std::size_t mu = 0; mu < dim; ++mu)
      for (std::size_t la = 0; la < dim; ++la) {
        if (t.rows[mu][la].is_zero()) continue;
        ModScalar c = eval_mod(t.rows[mu][la], ctx);
        for (std::size_t nu = 0; nu < dim; ++nu)
          if (m2p[la][nu] != 0) hp[mu][nu] = hp[mu][nu] + c * field.from_number(m2p[la][nu]);
      }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        ModScalar s = field.zero();
        for (std::size_t nu = 0; nu < dim; ++nu) s = s + hp[a][nu] * field.embed(tr.dual[nu][b]);
        if (!(s == (a == b ? field.one() : field.zero()))) throw std::runtime_error("cache: dual does not invert H~");
      }
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace rectlab
