#pragma once

// Elliptic cusp-form dimensions, paramodular oldform/newform bookkeeping,
// Yoshida-lift counts and the algebraic-modular-form dimension identity.
// Siegel dimensions are never computed here; they come from a DimTable.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <boost/tokenizer.hpp>

#include "paramod/errors.hpp"
#include "paramod/local_reps.hpp"

namespace paramod::dims {

// Cusp forms of weight k on SL2(Z). Odd or negative k gives 0.
inline std::int64_t dim_cusp_level1(std::int64_t k) {
  if (k < 0 || k % 2 != 0) return 0;
  if (k % 12 == 2) return k / 12 - 1 < 0 ? 0 : k / 12 - 1;
  return k / 12;
}

struct Gamma0Invariants {
  std::int64_t index;   // [SL2(Z) : Gamma0(p)]
  std::int64_t cusps;
  std::int64_t nu2;     // elliptic points of order 2
  std::int64_t nu3;     // elliptic points of order 3
  std::int64_t genus;
};

inline Gamma0Invariants gamma0_invariants(std::uint64_t p) {
  if (!local::is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  Gamma0Invariants g{};
  g.index = static_cast<std::int64_t>(p) + 1;
  g.cusps = 2;
  if (p == 2)
    g.nu2 = 1;
  else
    g.nu2 = p % 4 == 1 ? 2 : 0;
  if (p == 3)
    g.nu3 = 1;
  else
    g.nu3 = p % 3 == 1 ? 2 : 0;
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
  const std::int64_t twelve_g = 12 + g.index - 3 * g.nu2 - 4 * g.nu3 - 6 * g.cusps;
  if (twelve_g % 12 != 0) throw DomainError("genus formula is not integral for p = " + std::to_string(p));
  g.genus = twelve_g / 12;
  return g;
}

inline void require_even_weight(std::int64_t k) {
  if (k < 2 || k % 2 != 0) throw InvalidInput("weight must be even and at least 2, got " + std::to_string(k));
}

inline std::int64_t dim_cusp_gamma0p(std::int64_t k, std::uint64_t p) {
  require_even_weight(k);
  const auto g = gamma0_invariants(p);
  if (k == 2) return g.genus;
  return (k - 1) * (g.genus - 1) + (k / 2 - 1) * g.cusps + g.nu2 * (k / 4) + g.nu3 * (k / 3);
}

inline std::int64_t dim_cusp_gamma0p_new(std::int64_t k, std::uint64_t p) {
  return dim_cusp_gamma0p(k, p) - 2 * dim_cusp_level1(k);
}

// ---------------------------------------------------------------------------
// Tables

enum class SiegelLevel { K1, Kp };

inline std::string to_string(SiegelLevel l) { return l == SiegelLevel::K1 ? "K(1)" : "K(p)"; }

struct ClassicalDim {
  std::int64_t weight = 2;
  std::uint64_t level = 1;  // 1 or a prime p
  bool new_flag = false;
  std::int64_t value = 0;
  std::string source;
};

struct SiegelDimRecord {
  std::int64_t k = 0;
  std::int64_t j = 3;
  SiegelLevel level = SiegelLevel::K1;
  std::uint64_t p = 0;  // 0 for K(1)
  std::int64_t value = 0;
  std::string source;
};

class DimTable {
 public:
  using SiegelKey = std::tuple<std::int64_t, std::int64_t, SiegelLevel, std::uint64_t>;
  using ClassicalKey = std::tuple<std::int64_t, std::uint64_t, bool>;

  static std::string key_string(const SiegelKey& key) {
    const auto& [k, j, level, p] = key;
    std::string s = "S_{" + std::to_string(k) + "," + std::to_string(j) + "}[" + to_string(level) + "]";
    if (level == SiegelLevel::Kp) s += " p=" + std::to_string(p);
    return s;
  }

  static std::string key_string(const ClassicalKey& key) {
    const auto& [w, level, is_new] = key;
    return "S_" + std::to_string(w) + "[Gamma0(" + std::to_string(level) + ")]" + (is_new ? "^new" : "");
  }

  void add(SiegelDimRecord r) {
    if (r.value < 0) throw InvalidInput("negative dimension for " + key_string(key_of(r)));
    if (r.k < 0 || r.j < 3) throw InvalidInput("Siegel record needs k >= 0 and j >= 3");
    if (r.level == SiegelLevel::K1) r.p = 0;
    else if (!local::is_prime(r.p)) throw InvalidInput("K(p) record needs a prime p");
    insert(siegel_, key_of(r), std::move(r));
  }

  void add(ClassicalDim r) {
    if (r.value < 0) throw InvalidInput("negative dimension for " + key_string(key_of(r)));
    if (r.level != 1 && !local::is_prime(r.level)) throw InvalidInput("classical level must be 1 or a prime");
    if (r.level == 1) r.new_flag = false;
    insert(classical_, key_of(r), std::move(r));
  }

  std::optional<std::int64_t> siegel(std::int64_t k, std::int64_t j, SiegelLevel level, std::uint64_t p) const {
    auto it = siegel_.find({k, j, level, level == SiegelLevel::K1 ? 0 : p});
    if (it == siegel_.end()) return std::nullopt;
    return it->second.value;
  }

  std::int64_t require_siegel(std::int64_t k, std::int64_t j, SiegelLevel level, std::uint64_t p) const {
    if (auto v = siegel(k, j, level, p)) return *v;
    throw MissingData(key_string(SiegelKey{k, j, level, level == SiegelLevel::K1 ? 0 : p}));
  }

  const std::map<SiegelKey, SiegelDimRecord>& siegel_records() const noexcept { return siegel_; }
  const std::map<ClassicalKey, ClassicalDim>& classical_records() const noexcept { return classical_; }
  std::size_t size() const noexcept { return siegel_.size() + classical_.size(); }
  bool empty() const noexcept { return size() == 0; }

 private:
  static SiegelKey key_of(const SiegelDimRecord& r) {
    return {r.k, r.j, r.level, r.level == SiegelLevel::K1 ? 0 : r.p};
  }
  static ClassicalKey key_of(const ClassicalDim& r) { return {r.weight, r.level, r.level == 1 ? false : r.new_flag}; }

  template <class Key, class Rec>
  static void insert(std::map<Key, Rec>& m, const Key& key, Rec r) {
    auto [it, fresh] = m.try_emplace(key, r);
    if (fresh || it->second.value == r.value) return;
    throw InvalidInput("conflicting values for " + key_string(key) + ": " + std::to_string(it->second.value) +
                       " (" + it->second.source + ") vs " + std::to_string(r.value) + " (" + r.source + ")");
  }

  std::map<SiegelKey, SiegelDimRecord> siegel_;
  std::map<ClassicalKey, ClassicalDim> classical_;
};

inline constexpr const char* kCsvHeader = "kind,k,j,level,p,value,source";

namespace csv_detail {

inline std::int64_t parse_int(const std::string& field, const char* name, std::size_t line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(field, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("field '") + name + "' is not an integer: '" + field + "'");
  }
  if (used != field.size()) throw ParseError(line, std::string("field '") + name + "' is not an integer: '" + field + "'");
  return v;
}

inline void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

}  // namespace csv_detail

// Rows:
//   siegel,<k>,<j>,K(1)|K(p),<p>,<value>,<source>
//   classical,<weight>,,Gamma0(1)|Gamma0(p),<p>,<value>,<source>
//   classical_new,<weight>,,Gamma0(p),<p>,<value>,<source>
inline DimTable parse_csv(std::istream& in) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  DimTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  csv_detail::strip_cr(line);
  if (line != kCsvHeader) throw ParseError(1, "header must be '" + std::string(kCsvHeader) + "'");
  while (std::getline(in, line)) {
    ++line_no;
    csv_detail::strip_cr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> f;
    try {
      Tokenizer tok(line);
      f.assign(tok.begin(), tok.end());
    } catch (const boost::escaped_list_error& e) {
      throw ParseError(line_no, e.what());
    }
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields, got " + std::to_string(f.size()));
    const auto& kind = f[0];
    const auto& level = f[3];
    const auto value = csv_detail::parse_int(f[5], "value", line_no);
    if (value < 0) throw ParseError(line_no, "negative dimension " + std::to_string(value));
    const auto p = f[4].empty() ? 0 : csv_detail::parse_int(f[4], "p", line_no);
    if (p < 0) throw ParseError(line_no, "negative prime");
    try {
      if (kind == "siegel") {
        SiegelDimRecord r;
        r.k = csv_detail::parse_int(f[1], "k", line_no);
        r.j = csv_detail::parse_int(f[2], "j", line_no);
        if (level == "K(1)")
          r.level = SiegelLevel::K1;
        else if (level == "K(p)")
          r.level = SiegelLevel::Kp;
        else
          throw ParseError(line_no, "Siegel level must be K(1) or K(p), got '" + level + "'");
        r.p = static_cast<std::uint64_t>(p);
        r.value = value;
        r.source = f[6];
        table.add(std::move(r));
      } else if (kind == "classical" || kind == "classical_new") {
        ClassicalDim r;
        r.weight = csv_detail::parse_int(f[1], "k", line_no);
        r.new_flag = kind == "classical_new";
        if (level == "Gamma0(1)")
          r.level = 1;
        else if (level == "Gamma0(p)")
          r.level = static_cast<std::uint64_t>(p);
        else
          throw ParseError(line_no, "classical level must be Gamma0(1) or Gamma0(p), got '" + level + "'");
        r.value = value;
        r.source = f[6];
        table.add(std::move(r));
      } else {
        throw ParseError(line_no, "unknown kind '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return table;
}

inline DimTable ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open table '" + path + "'");
  return parse_csv(in);
}

// ---------------------------------------------------------------------------
// Paramodular bookkeeping

inline void require_siegel_weights(std::int64_t k, std::int64_t j) {
  if (k < 0 || j < 3) throw InvalidInput("need k >= 0 and j >= 3, got k=" + std::to_string(k) + " j=" + std::to_string(j));
}

// The correction term delta_{k,0} (1 + (-1)^j)/2 dim S_{2j-2}.
inline std::int64_t newform_correction(std::int64_t k, std::int64_t j) {
  return (k == 0 && j % 2 == 0) ? dim_cusp_level1(2 * j - 2) : 0;
}

// dim S_{k,j}[K(p)]^new. A negative value means the table is inconsistent.
inline std::int64_t paramodular_new_dim(std::int64_t k, std::int64_t j, std::uint64_t p, const DimTable& table) {
  require_siegel_weights(k, j);
  const auto kp = table.require_siegel(k, j, SiegelLevel::Kp, p);
  const auto k1 = table.require_siegel(k, j, SiegelLevel::K1, p);
  const auto v = kp - 2 * k1 + newform_correction(k, j);
  if (v < 0)
    throw DomainError("table inconsistency: new dimension for S_{" + std::to_string(k) + "," + std::to_string(j) +
                      "}[K(" + std::to_string(p) + ")] would be " + std::to_string(v));
  return v;
}

inline std::int64_t yoshida_count(std::int64_t k, std::int64_t j, std::uint64_t p) {
  require_siegel_weights(k, j);
  return dim_cusp_level1(2 * j - 2 + k) * dim_cusp_gamma0p_new(k + 2, p);
}

struct IbukiyamaBreakdown {
  std::int64_t yoshida = 0;         // dim S_{2j-2+k}(1) * dim S_{k+2}(Gamma0(p))^new
  std::int64_t siegel_kp = 0;
  std::int64_t siegel_k1 = 0;
  std::int64_t level1_term = 0;     // delta_{k,0} dim S_{2j-2}(1)
  std::int64_t constant_term = 0;   // delta_{k,0} delta_{j,3} (or delta_{j,0} when literal)
  bool literal_delta = false;
  std::int64_t total = 0;
};

inline IbukiyamaBreakdown ibukiyama_breakdown(std::int64_t k, std::int64_t j, std::uint64_t p, const DimTable& table,
                                              bool literal_delta = false) {
  require_siegel_weights(k, j);
  IbukiyamaBreakdown b;
  b.literal_delta = literal_delta;
  b.yoshida = dim_cusp_level1(2 * j - 2 + k) * (dim_cusp_gamma0p(k + 2, p) - 2 * dim_cusp_level1(k + 2));
  b.siegel_kp = table.require_siegel(k, j, SiegelLevel::Kp, p);
  b.siegel_k1 = table.require_siegel(k, j, SiegelLevel::K1, p);
  b.level1_term = k == 0 ? dim_cusp_level1(2 * j - 2) : 0;
  b.constant_term = (k == 0 && j == (literal_delta ? 0 : 3)) ? 1 : 0;
  b.total = b.yoshida + b.siegel_kp - 2 * b.siegel_k1 + b.level1_term + b.constant_term;
  return b;
}

inline std::int64_t ibukiyama_dim(std::int64_t k, std::int64_t j, std::uint64_t p, const DimTable& table,
                                  bool literal_delta = false) {
  return ibukiyama_breakdown(k, j, p, table, literal_delta).total;
}

// Extra dimension when alpha fails to be surjective: k = 0 and a = b = j - 3
// even, where dim S_{a+b+4}(1) = dim S_{2j-2}(1) survives in the cokernel.
inline std::int64_t cokernel_line(std::int64_t k, std::int64_t j) {
  return (k == 0 && j % 2 != 0) ? dim_cusp_level1(2 * j - 2) : 0;
}

// ---------------------------------------------------------------------------
// Verification over a whole table

struct VerifyResult {
  std::size_t checks = 0;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool ok() const noexcept { return violations.empty(); }
};

inline VerifyResult verify(const DimTable& table, bool literal_delta = false) {
  VerifyResult out;
  for (const auto& [key, rec] : table.classical_records()) {
    ++out.checks;
    std::int64_t expected = 0;
    if (rec.level == 1)
      expected = dim_cusp_level1(rec.weight);
    else if (rec.new_flag)
      expected = dim_cusp_gamma0p_new(rec.weight, rec.level);
    else
      expected = dim_cusp_gamma0p(rec.weight, rec.level);
    if (expected != rec.value)
      out.violations.push_back(DimTable::key_string(key) + ": table has " + std::to_string(rec.value) +
                               ", formula gives " + std::to_string(expected) + " (" + rec.source + ")");
  }
  for (const auto& [key, rec] : table.siegel_records()) {
    if (rec.level != SiegelLevel::Kp) continue;
    const auto k = rec.k, j = rec.j;
    const auto p = rec.p;
    if (!table.siegel(k, j, SiegelLevel::K1, p)) {
      out.notes.push_back(DimTable::key_string(key) + " has no matching K(1) record; skipped");
      continue;
    }
    const std::string where = DimTable::key_string(key);
    ++out.checks;
    std::int64_t fresh = 0;
    try {
      fresh = paramodular_new_dim(k, j, p, table);
    } catch (const DomainError& e) {
      out.violations.push_back(where + ": " + e.what());
      continue;
    }
    ++out.checks;
    if (fresh + 2 * table.require_siegel(k, j, SiegelLevel::K1, p) - newform_correction(k, j) != rec.value)
      out.violations.push_back(where + ": new + 2 old - correction does not recover dim K(p)");
    ++out.checks;
    const auto b = ibukiyama_breakdown(k, j, p, table, literal_delta);
    const auto rhs = yoshida_count(k, j, p) + fresh + cokernel_line(k, j) + b.constant_term;
    if (b.total != rhs)
      out.violations.push_back(where + ": algebraic-form dimension " + std::to_string(b.total) +
                               " != yoshida + new + cokernel + constant = " + std::to_string(rhs));
    if (k == 0 && j == 3) {
      ++out.checks;
      if (b.total < 1) out.violations.push_back(where + ": constant algebraic modular forms are missing");
    }
  }
  return out;
}

}  // namespace paramod::dims
