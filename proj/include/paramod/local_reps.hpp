#pragma once

// Ramified K(p)-spherical representations of GSp4(Q_p): the five type tags,
// genericity, the Weil-Deligne realization of type IIa and the Atkin-Lehner
// eigenvalue on the line of paramodular fixed vectors.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramod/errors.hpp"
#include "paramod/monomial.hpp"
#include "paramod/wd_core.hpp"

namespace paramod::local {

enum class LocalRepType { IIa, IVc, Vb, Vc, VIc };

inline constexpr std::array<LocalRepType, 5> kAllTypes{LocalRepType::IIa, LocalRepType::IVc, LocalRepType::Vb,
                                                       LocalRepType::Vc, LocalRepType::VIc};

inline std::string to_string(LocalRepType t) {
  switch (t) {
    case LocalRepType::IIa: return "IIa";
    case LocalRepType::IVc: return "IVc";
    case LocalRepType::Vb: return "Vb";
    case LocalRepType::Vc: return "Vc";
    case LocalRepType::VIc: return "VIc";
  }
  return "?";
}

inline LocalRepType parse_type(const std::string& s) {
  for (auto t : kAllTypes)
    if (to_string(t) == s) return t;
  throw InvalidInput("unknown local representation type '" + s + "' (expected IIa, IVc, Vb, Vc or VIc)");
}

inline bool is_generic(LocalRepType t) noexcept { return t == LocalRepType::IIa; }

// Only IIa has its Weil-Deligne matrices modelled; the others are flags.
inline bool has_wd_realization(LocalRepType t) noexcept { return t == LocalRepType::IIa; }

// Non-generic types are known to violate weight-monodromy.
inline bool expected_pure(LocalRepType t) noexcept { return is_generic(t); }

inline bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct ParamodularLocalRep {
  LocalRepType type = LocalRepType::IIa;
  Scalar chi;    // chi(p)
  Scalar sigma;  // sigma(p)
  std::uint64_t prime = 2;
  // Weight of chi when it is a power of the normalised absolute value times a
  // unitary character; only consulted for the IIa validity conditions.
  std::optional<int> chi_weight;

  ParamodularLocalRep() = default;
  ParamodularLocalRep(LocalRepType t, Scalar chi_p, Scalar sigma_p, std::uint64_t p,
                      std::optional<int> chi_w = std::nullopt)
      : type(t), chi(std::move(chi_p)), sigma(std::move(sigma_p)), prime(p), chi_weight(chi_w) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  }

  // chi^2 != v^{±1} and chi != v^{±3/2}; with v^{1/2} of weight -1 these
  // exclude chi weights ±1 and ±3. Unknown weight counts as valid.
  bool iia_conditions_hold() const noexcept {
    if (type != LocalRepType::IIa || !chi_weight) return true;
    const int w = *chi_weight;
    return w != 1 && w != -1 && w != 3 && w != -3;
  }
};

inline void require_iia(const ParamodularLocalRep& rep, const char* op) {
  if (rep.type != LocalRepType::IIa)
    throw InvalidInput(std::string(op) + " is only modelled for type IIa, got " + to_string(rep.type));
}

// diag(chi^2 sigma, v^{1/2} chi sigma, v^{-1/2} chi sigma, sigma) with N
// sending the third basis vector to the second.
inline wd::WeilDeligneRep wd_of_iia(const ParamodularLocalRep& rep) {
  require_iia(rep, "Weil-Deligne realization");
  const Scalar chi_sigma = rep.chi * rep.sigma;
  std::vector<wd::EigenvalueSymbol> frob{
      {rep.chi.pow(2) * rep.sigma, 0},
      {chi_sigma, -1},
      {chi_sigma, 1},
      {rep.sigma, 0},
  };
  IntMatrix n(4, 4);
  n(1, 2) = 1;
  return wd::WeilDeligneRep({"e1", "e2", "e3", "e4"}, std::move(frob), std::move(n), 0);
}

// Central character value at p, equal to the similitude character of the
// Weil-Deligne representation.
inline Scalar central_character(const ParamodularLocalRep& rep) { return rep.chi.pow(2) * rep.sigma.pow(2); }

inline constexpr int kFixedVectorDimension = 1;

// u acts on the one-dimensional pi^{K(p)} by (chi sigma)(p).
inline Scalar atkin_lehner_eigenvalue(const ParamodularLocalRep& rep) {
  require_iia(rep, "Atkin-Lehner eigenvalue");
  return rep.chi * rep.sigma;
}

// Frobenius acts on the image of the vanishing-cycle map by p times the
// Atkin-Lehner eigenvalue.
inline Scalar frobenius_on_vanishing_cycles(const ParamodularLocalRep& rep) {
  return Scalar(Rational(rep.prime)) * atkin_lehner_eigenvalue(rep);
}

struct CatalogEntry {
  LocalRepType type;
  bool generic;
  bool expected_pure;
  bool has_wd_realization;
};

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (auto t : kAllTypes) out.push_back({t, is_generic(t), expected_pure(t), has_wd_realization(t)});
  return out;
}

inline nlohmann::ordered_json catalog_json() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : catalog()) {
    nlohmann::ordered_json row;
    row["tag"] = to_string(e.type);
    row["generic"] = e.generic;
    row["expected_pure"] = e.expected_pure;
    row["has_wd_realization"] = e.has_wd_realization;
    out.push_back(row);
  }
  return out;
}

inline nlohmann::ordered_json to_json(const ParamodularLocalRep& rep) {
  nlohmann::ordered_json out;
  out["type"] = to_string(rep.type);
  out["chi"] = wd::scalar_to_json(rep.chi);
  out["sigma"] = wd::scalar_to_json(rep.sigma);
  out["prime"] = rep.prime;
  if (rep.chi_weight) out["chi_weight"] = *rep.chi_weight;
  return out;
}

// {"type": "IIa", "chi": "a", "sigma": 1, "prime": 3, "chi_weight": 0}
// chi and sigma default to the trivial character.
inline ParamodularLocalRep local_rep_from_json(const nlohmann::json& j, std::uint64_t default_prime) {
  if (!j.is_object()) throw InvalidInput("local representation must be an object");
  const auto type = parse_type(j.value("type", std::string("IIa")));
  const Scalar chi = j.contains("chi") ? wd::scalar_from_json(j.at("chi")) : Scalar();
  const Scalar sigma = j.contains("sigma") ? wd::scalar_from_json(j.at("sigma")) : Scalar();
  std::uint64_t p = default_prime;
  if (j.contains("prime")) p = static_cast<std::uint64_t>(wd::json_detail::require_int(j.at("prime"), "prime"));
  std::optional<int> chi_w;
  if (j.contains("chi_weight")) chi_w = static_cast<int>(wd::json_detail::require_int(j.at("chi_weight"), "chi_weight"));
  return ParamodularLocalRep(type, chi, sigma, p, chi_w);
}

}  // namespace paramod::local
