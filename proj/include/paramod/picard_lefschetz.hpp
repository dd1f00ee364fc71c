#pragma once

// The Picard-Lefschetz ledger. A scenario lists abstract Hecke-eigensystem
// contributions to H^3_! (Arthur type, local representation at p,
// multiplicity); from it we get the rank of the vanishing-cycle map alpha,
// the three-step weight filtration, the component group Theta = coker(gamma)
// and the Mazur's-principle verdict.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "paramod/errors.hpp"
#include "paramod/linalg.hpp"
#include "paramod/local_reps.hpp"
#include "paramod/smith.hpp"
#include "paramod/wd_core.hpp"

namespace paramod::pl {

enum class ArthurType { General, Yoshida, SaitoKurokawa };
enum class PiInfinity { H, W, Other };

inline std::string to_string(ArthurType t) {
  switch (t) {
    case ArthurType::General: return "General";
    case ArthurType::Yoshida: return "Yoshida";
    case ArthurType::SaitoKurokawa: return "SaitoKurokawa";
  }
  return "?";
}

inline std::string to_string(PiInfinity p) {
  switch (p) {
    case PiInfinity::H: return "H";
    case PiInfinity::W: return "W";
    case PiInfinity::Other: return "other";
  }
  return "?";
}

inline ArthurType parse_arthur_type(const std::string& s) {
  if (s == "General") return ArthurType::General;
  if (s == "Yoshida") return ArthurType::Yoshida;
  if (s == "SaitoKurokawa") return ArthurType::SaitoKurokawa;
  throw InvalidInput("unknown Arthur type '" + s + "'");
}

inline PiInfinity parse_pi_infinity(const std::string& s) {
  if (s == "H") return PiInfinity::H;
  if (s == "W") return PiInfinity::W;
  if (s == "other") return PiInfinity::Other;
  throw InvalidInput("unknown archimedean component '" + s + "'");
}

struct Unramified {
  friend bool operator==(const Unramified&, const Unramified&) = default;
};

using LocalAtP = std::variant<Unramified, local::ParamodularLocalRep>;

struct LedgerContribution {
  std::string id;
  ArthurType arthur_type = ArthurType::General;
  PiInfinity pi_infty = PiInfinity::H;
  LocalAtP local_at_p = Unramified{};
  int galois_dim = 4;
  std::uint64_t multiplicity = 1;

  bool ramified() const noexcept { return std::holds_alternative<local::ParamodularLocalRep>(local_at_p); }
  const local::ParamodularLocalRep* local_rep() const noexcept {
    return std::get_if<local::ParamodularLocalRep>(&local_at_p);
  }

  // Galois dimension forced by the Arthur type, if any.
  static std::optional<int> expected_galois_dim(ArthurType t, PiInfinity pi) {
    if (t == ArthurType::SaitoKurokawa || t == ArthurType::Yoshida) return 2;
    if (pi == PiInfinity::H) return 4;
    if (pi == PiInfinity::W) return 0;
    return std::nullopt;
  }

  void validate() const {
    if (multiplicity < 1) throw InvalidInput("contribution '" + id + "': multiplicity must be at least 1");
    if (galois_dim != 0 && galois_dim != 2 && galois_dim != 4)
      throw InvalidInput("contribution '" + id + "': galois_dim must be 0, 2 or 4");
    if (auto e = expected_galois_dim(arthur_type, pi_infty); e && *e != galois_dim)
      throw InvalidInput("contribution '" + id + "': " + to_string(arthur_type) + "/" + to_string(pi_infty) +
                         " contributes galois_dim " + std::to_string(*e) + ", not " + std::to_string(galois_dim));
  }
};

struct MazurInput {
  int n_distinct_frobenius_eigenvalues = 4;
  bool irreducible = true;
  bool unramified_mod_ell = true;
  bool component_group_trivial = true;
};

struct LedgerScenario {
  std::vector<LedgerContribution> contributions;
  std::uint64_t sigma_size = 0;
  int coefficient_weight = 0;          // weight k of the local system
  std::uint64_t coefficient_dim = 1;   // rank of the local system's stalks
  std::uint64_t prime_p = 2;
  std::uint64_t prime_ell = 3;
  std::optional<IntMatrix> gamma;      // integral monodromy map, if supplied
  // Mazur hypotheses other than the component group, and optional override of it.
  std::optional<MazurInput> mazur;
  bool mazur_component_group_given = false;
  bool torsion_free = true;

  void validate() const {
    if (!local::is_prime(prime_p)) throw InvalidInput("prime_p = " + std::to_string(prime_p) + " is not prime");
    if (!local::is_prime(prime_ell)) throw InvalidInput("prime_ell = " + std::to_string(prime_ell) + " is not prime");
    if (prime_p == prime_ell) throw InvalidInput("prime_p and prime_ell must be distinct");
    for (const auto& c : contributions) c.validate();
  }
};

// ---------------------------------------------------------------------------

inline std::uint64_t vanishing_cycle_dim(const LedgerScenario& s) { return s.sigma_size * s.coefficient_dim; }

// Rank of the monodromy operator on one contribution's Galois piece: 1 for
// IIa, 0 when unramified. Types without a modelled Weil-Deligne realization
// count as 0 and are reported by is_weight_monodromy_ok instead.
inline std::uint64_t contribution_alpha_rank(const LedgerContribution& c) {
  if (c.galois_dim == 0) return 0;
  const auto* rep = c.local_rep();
  if (!rep || !local::has_wd_realization(rep->type)) return 0;
  return c.multiplicity * wd::n_rank(local::wd_of_iia(*rep));
}

inline std::uint64_t alpha_rank(const LedgerScenario& s) {
  std::uint64_t total = 0;
  for (const auto& c : s.contributions) total += contribution_alpha_rank(c);
  return total;
}

inline std::uint64_t total_dim(const LedgerScenario& s) {
  std::uint64_t total = 0;
  for (const auto& c : s.contributions) total += c.multiplicity * static_cast<std::uint64_t>(c.galois_dim);
  return total;
}

// Weight -> dimension of the graded piece; zero pieces are omitted.
// Im beta has weight k+2, the quotient by H^3_!(special fiber) weight k+4.
inline std::map<int, std::uint64_t> weight_filtration_profile(const LedgerScenario& s) {
  const auto a = alpha_rank(s);
  const auto total = total_dim(s);
  if (total < 2 * a)
    throw InvalidInput("scenario has total dimension " + std::to_string(total) + " < 2 * alpha rank " +
                       std::to_string(a));
  std::map<int, std::uint64_t> out;
  const int k = s.coefficient_weight;
  if (a) out[k + 2] = a;
  if (total - 2 * a) out[k + 3] = total - 2 * a;
  if (a) out[k + 4] = a;
  return out;
}

// gamma : Im alpha -> Im beta. Without explicit data each IIa line contributes
// a unit block, i.e. the identity on Z^{alpha rank}.
inline IntMatrix assemble_gamma(const LedgerScenario& s) {
  if (s.gamma) return *s.gamma;
  return IntMatrix::identity(static_cast<std::size_t>(alpha_rank(s)));
}

struct ComponentGroup {
  std::vector<BigInt> invariant_factors;  // all > 1, each dividing the next
  std::size_t free_rank = 0;

  bool is_finite() const noexcept { return free_rank == 0; }
  bool is_trivial() const noexcept { return free_rank == 0 && invariant_factors.empty(); }

  // Theta tensored with Z_ell: the ell-power parts of the invariant factors.
  ComponentGroup ell_part(std::uint64_t ell) const {
    ComponentGroup out;
    out.free_rank = free_rank;
    for (const auto& f : invariant_factors) {
      BigInt part = 1, rest = f;
      while (rest % ell == 0) {
        rest /= ell;
        part *= ell;
      }
      if (part > 1) out.invariant_factors.push_back(part);
    }
    return out;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    for (const auto& f : invariant_factors) s += (s.empty() ? "" : " + ") + ("Z/" + f.str());
    if (free_rank) s += (s.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank);
    return s;
  }
};

// Cokernel of an integer matrix (target = its rows) via Smith normal form.
inline ComponentGroup component_group(const IntMatrix& gamma) {
  ComponentGroup out;
  if (gamma.cols() == 0) {
    out.free_rank = gamma.rows();
    return out;
  }
  const auto snf = smith_normal_form(gamma);
  for (const auto& d : snf.diagonal)
    if (d > 1) out.invariant_factors.push_back(d);
  out.free_rank = gamma.rows() - snf.rank();
  return out;
}

struct WeightMonodromyVerdict {
  bool ok = true;
  bool local_purity_ok = true;         // every ramified local rep is pure
  bool gamma_rational_iso = true;      // gamma is an isomorphism after inverting ell
  std::vector<std::string> impure_contributions;
};

inline WeightMonodromyVerdict weight_monodromy(const LedgerScenario& s) {
  WeightMonodromyVerdict out;
  for (const auto& c : s.contributions) {
    const auto* rep = c.local_rep();
    if (!rep) continue;
    const bool pure = local::has_wd_realization(rep->type) ? wd::is_pure(local::wd_of_iia(*rep)).pure
                                                           : local::expected_pure(rep->type);
    if (!pure) {
      out.local_purity_ok = false;
      out.impure_contributions.push_back(c.id);
    }
  }
  const auto gamma = assemble_gamma(s);
  out.gamma_rational_iso = gamma.rows() == gamma.cols() && (gamma.rows() == 0 || linalg::rank(gamma) == gamma.rows());
  out.ok = out.local_purity_ok && out.gamma_rational_iso;
  return out;
}

inline bool is_weight_monodromy_ok(const LedgerScenario& s) { return weight_monodromy(s).ok; }

// ---------------------------------------------------------------------------
// Mazur's principle as a decision procedure

enum class MazurOutcome { LevelLoweringForced, Inconclusive, HypothesisFail };

inline std::string to_string(MazurOutcome o) {
  switch (o) {
    case MazurOutcome::LevelLoweringForced: return "LevelLoweringForced";
    case MazurOutcome::Inconclusive: return "Inconclusive";
    case MazurOutcome::HypothesisFail: return "HypothesisFail";
  }
  return "?";
}

struct MazurVerdict {
  MazurOutcome outcome = MazurOutcome::Inconclusive;
  std::vector<std::string> failed_hypotheses;  // "irreducibility", "unramified_mod_ell", "component_group_trivial"
  std::string reason;
};

// If every hypothesis holds and the residual representation has four
// distinct Frobenius eigenvalues, an unramified irreducible copy would sit in
// ker(N mod ell) = ker(alpha mod ell), which sees at most three eigenvalues;
// so a congruence to an unramified form is forced. With three or fewer
// eigenvalues the count gives no contradiction.
inline MazurVerdict mazur_check(const MazurInput& in) {
  if (in.n_distinct_frobenius_eigenvalues < 1 || in.n_distinct_frobenius_eigenvalues > 4)
    throw InvalidInput("number of distinct Frobenius eigenvalues must be in [1, 4], got " +
                       std::to_string(in.n_distinct_frobenius_eigenvalues));
  MazurVerdict v;
  if (!in.irreducible) v.failed_hypotheses.push_back("irreducibility");
  if (!in.unramified_mod_ell) v.failed_hypotheses.push_back("unramified_mod_ell");
  if (!in.component_group_trivial) v.failed_hypotheses.push_back("component_group_trivial");
  if (!v.failed_hypotheses.empty()) {
    v.outcome = MazurOutcome::HypothesisFail;
    v.reason = "hypothesis fails: " + v.failed_hypotheses.front();
    return v;
  }
  if (in.n_distinct_frobenius_eigenvalues == 4) {
    v.outcome = MazurOutcome::LevelLoweringForced;
    v.reason = "four distinct eigenvalues cannot fit in ker(alpha mod ell), which carries at most three";
  } else {
    v.outcome = MazurOutcome::Inconclusive;
    v.reason = std::to_string(in.n_distinct_frobenius_eigenvalues) +
               " distinct eigenvalues fit inside ker(alpha mod ell); no contradiction";
  }
  return v;
}

// Localisation at a residual eigensystem: keep only contributions with that label.
inline LedgerScenario localize(const LedgerScenario& s, const std::string& id) {
  LedgerScenario out = s;
  out.contributions.clear();
  for (const auto& c : s.contributions)
    if (c.id == id) out.contributions.push_back(c);
  if (out.contributions.empty()) throw InvalidInput("no contribution labelled '" + id + "'");
  out.gamma.reset();
  return out;
}

// ---------------------------------------------------------------------------
// Scenario files and reports

inline LedgerContribution contribution_from_json(const nlohmann::json& j, std::uint64_t prime_p) {
  if (!j.is_object()) throw InvalidInput("contribution must be an object");
  LedgerContribution c;
  c.id = j.value("id", std::string());
  if (c.id.empty()) throw InvalidInput("contribution needs a non-empty id");
  c.arthur_type = parse_arthur_type(j.value("arthur_type", std::string("General")));
  c.pi_infty = parse_pi_infinity(j.value("pi_infty", std::string("H")));
  if (j.contains("local_rep_at_p")) {
    const auto& l = j.at("local_rep_at_p");
    if (l.is_string() && l.get<std::string>() == "unramified")
      c.local_at_p = Unramified{};
    else if (l.is_string())
      c.local_at_p = local::ParamodularLocalRep(local::parse_type(l.get<std::string>()), Scalar(), Scalar(), prime_p);
    else
      c.local_at_p = local::local_rep_from_json(l, prime_p);
  }
  const auto expected = LedgerContribution::expected_galois_dim(c.arthur_type, c.pi_infty);
  c.galois_dim = j.contains("galois_dim")
                     ? static_cast<int>(wd::json_detail::require_int(j.at("galois_dim"), "galois_dim"))
                     : expected.value_or(0);
  const auto mult = j.contains("multiplicity") ? wd::json_detail::require_int(j.at("multiplicity"), "multiplicity") : 1;
  if (mult < 1) throw InvalidInput("contribution '" + c.id + "': multiplicity must be at least 1");
  c.multiplicity = static_cast<std::uint64_t>(mult);
  c.validate();
  return c;
}

inline LedgerScenario scenario_from_json(const nlohmann::json& j) {
  using wd::json_detail::require_int;
  if (!j.is_object()) throw InvalidInput("scenario must be a JSON object");
  LedgerScenario s;
  auto non_negative = [&](const char* key, std::int64_t fallback) {
    const auto v = j.contains(key) ? require_int(j.at(key), key) : fallback;
    if (v < 0) throw InvalidInput(std::string(key) + " must be non-negative");
    return static_cast<std::uint64_t>(v);
  };
  s.prime_p = non_negative("prime_p", 2);
  s.prime_ell = non_negative("prime_ell", 3);
  s.sigma_size = non_negative("sigma_size", 0);
  s.coefficient_dim = non_negative("coefficient_dim", 1);
  s.coefficient_weight = j.contains("coefficient_weight")
                             ? static_cast<int>(require_int(j.at("coefficient_weight"), "coefficient_weight"))
                             : 0;
  if (j.contains("contributions")) {
    if (!j.at("contributions").is_array()) throw InvalidInput("contributions must be an array");
    for (const auto& c : j.at("contributions")) s.contributions.push_back(contribution_from_json(c, s.prime_p));
  }
  if (j.contains("gamma")) s.gamma = wd::int_matrix_from_json(j.at("gamma"), "gamma");
  if (j.contains("torsion_free")) {
    if (!j.at("torsion_free").is_boolean()) throw InvalidInput("torsion_free must be a boolean");
    s.torsion_free = j.at("torsion_free").get<bool>();
  }
  if (j.contains("mazur")) {
    const auto& m = j.at("mazur");
    if (!m.is_object()) throw InvalidInput("mazur must be an object");
    auto flag = [&](const char* key, bool fallback) {
      if (!m.contains(key)) return fallback;
      if (!m.at(key).is_boolean()) throw InvalidInput(std::string("mazur.") + key + " must be a boolean");
      return m.at(key).get<bool>();
    };
    MazurInput in;
    in.n_distinct_frobenius_eigenvalues =
        static_cast<int>(require_int(m.at("n_distinct_frobenius_eigenvalues"), "n_distinct_frobenius_eigenvalues"));
    in.irreducible = flag("irreducible", true);
    in.unramified_mod_ell = flag("unramified_mod_ell", true);
    s.mazur_component_group_given = m.contains("component_group_trivial");
    in.component_group_trivial = flag("component_group_trivial", true);
    s.mazur = in;
  }
  s.validate();
  return s;
}

inline nlohmann::ordered_json component_group_json(const ComponentGroup& g) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const auto& f : g.invariant_factors) factors.push_back(f.str());
  out["invariant_factors"] = factors;
  out["free_rank"] = g.free_rank;
  out["trivial"] = g.is_trivial();
  out["structure"] = g.to_string();
  return out;
}

struct LedgerReport {
  nlohmann::ordered_json results;
  std::vector<std::string> warnings;
};

inline LedgerReport run_ledger(const LedgerScenario& s) {
  LedgerReport r;
  auto& out = r.results;
  const auto a = alpha_rank(s);
  const auto vc = vanishing_cycle_dim(s);
  out["contributions"] = s.contributions.size();
  out["total_dim"] = total_dim(s);
  out["alpha_rank"] = a;
  out["vanishing_cycle_dim"] = vc;
  if (a > vc)
    r.warnings.push_back("alpha rank " + std::to_string(a) + " exceeds the vanishing-cycle dimension " +
                         std::to_string(vc) + "; sigma_size looks inconsistent");
  for (const auto& c : s.contributions)
    if (const auto* rep = c.local_rep(); rep && !local::has_wd_realization(rep->type))
      r.warnings.push_back("contribution '" + c.id + "' has type " + local::to_string(rep->type) +
                           " with no modelled Weil-Deligne matrices; its monodromy rank is taken as 0");

  nlohmann::ordered_json profile = nlohmann::ordered_json::object();
  for (const auto& [w, d] : weight_filtration_profile(s)) profile[std::to_string(w)] = d;
  out["weight_profile"] = profile;

  const auto theta = component_group(assemble_gamma(s));
  const auto theta_ell = theta.ell_part(s.prime_ell);
  out["component_group"] = component_group_json(theta);
  out["component_group_ell_part"] = component_group_json(theta_ell);
  if (s.torsion_free && !theta_ell.is_trivial())
    r.warnings.push_back("scenario is flagged torsion-free but the ell-part of Theta is " + theta_ell.to_string());

  const auto wm = weight_monodromy(s);
  nlohmann::ordered_json wmj;
  wmj["ok"] = wm.ok;
  wmj["local_purity_ok"] = wm.local_purity_ok;
  wmj["gamma_rational_iso"] = wm.gamma_rational_iso;
  wmj["impure_contributions"] = wm.impure_contributions;
  out["weight_monodromy"] = wmj;

  if (s.mazur) {
    MazurInput in = *s.mazur;
    if (!s.mazur_component_group_given) in.component_group_trivial = s.torsion_free && theta_ell.is_trivial();
    const auto v = mazur_check(in);
    nlohmann::ordered_json mj;
    mj["verdict"] = to_string(v.outcome);
    mj["failed_hypotheses"] = v.failed_hypotheses;
    mj["reason"] = v.reason;
    mj["component_group_trivial"] = in.component_group_trivial;
    out["mazur"] = mj;
  }
  return r;
}

}  // namespace paramod::pl
