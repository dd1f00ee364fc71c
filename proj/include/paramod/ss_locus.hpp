#pragma once

// Combinatorial model of supersingular loci: a finite ball in the biregular
// tree (first-kind vertices of valency p^2+1, second-kind of valency p+1), the
// incidence geometry of components and superspecial points read off from it,
// and the point counts in fibers of the Hecke correspondences a and b.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "paramod/errors.hpp"
#include "paramod/local_reps.hpp"

namespace paramod::ssl {

using local::is_prime;

enum class VertexKind { First, Second };

inline std::string to_string(VertexKind k) { return k == VertexKind::First ? "first" : "second"; }

inline VertexKind parse_kind(const std::string& s) {
  if (s == "first") return VertexKind::First;
  if (s == "second") return VertexKind::Second;
  throw InvalidInput("root kind must be 'first' or 'second', got '" + s + "'");
}

inline VertexKind other(VertexKind k) { return k == VertexKind::First ? VertexKind::Second : VertexKind::First; }

inline std::uint64_t valency(VertexKind k, std::uint64_t p) { return k == VertexKind::First ? p * p + 1 : p + 1; }

struct Vertex {
  std::uint32_t id = 0;
  VertexKind kind = VertexKind::First;
  std::uint32_t depth = 0;
  std::optional<std::uint32_t> parent;
  bool boundary = false;  // at the truncation radius; exempt from valency checks
};

class BiregularTree {
 public:
  static constexpr std::uint64_t kMaxVertices = 5'000'000;

  std::uint64_t prime() const noexcept { return p_; }
  std::uint32_t radius() const noexcept { return radius_; }
  std::uint32_t root() const noexcept { return 0; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const noexcept { return edges_; }

  std::size_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

  std::vector<std::uint32_t> neighbors(std::uint32_t v) const {
    return {adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
            adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1])};
  }

  // Vertex count of a ball without building it.
  static std::uint64_t predicted_size(std::uint64_t p, VertexKind root_kind, std::uint32_t radius) {
    std::uint64_t total = 1, layer = 1;
    VertexKind kind = root_kind;
    for (std::uint32_t d = 1; d <= radius; ++d) {
      layer *= d == 1 ? valency(kind, p) : valency(kind, p) - 1;
      total += layer;
      if (total > kMaxVertices) return total;
      kind = other(kind);
    }
    return total;
  }

  friend BiregularTree build_tree(std::uint64_t p, VertexKind root_kind, std::uint32_t radius);

 private:
  std::uint64_t p_ = 0;
  std::uint32_t radius_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;  // (parent, child)
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
};

// Breadth-first ball of the given radius around a root of the given kind.
inline BiregularTree build_tree(std::uint64_t p, VertexKind root_kind, std::uint32_t radius) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  const auto size = BiregularTree::predicted_size(p, root_kind, radius);
  if (size > BiregularTree::kMaxVertices)
    throw InvalidInput("tree with p=" + std::to_string(p) + ", radius " + std::to_string(radius) +
                       " exceeds the vertex limit");

  BiregularTree t;
  t.p_ = p;
  t.radius_ = radius;
  t.vertices_.reserve(size);
  t.edges_.reserve(size - 1);
  t.vertices_.push_back({0, root_kind, 0, std::nullopt, radius == 0});

  std::size_t layer_begin = 0;
  for (std::uint32_t d = 0; d < radius; ++d) {
    const std::size_t layer_end = t.vertices_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const Vertex parent = t.vertices_[i];
      const std::uint64_t children = valency(parent.kind, p) - (parent.parent ? 1 : 0);
      for (std::uint64_t c = 0; c < children; ++c) {
        const auto id = static_cast<std::uint32_t>(t.vertices_.size());
        t.vertices_.push_back({id, other(parent.kind), d + 1, parent.id, d + 1 == radius});
        t.edges_.emplace_back(parent.id, id);
      }
    }
    layer_begin = layer_end;
  }

  const std::size_t n = t.vertices_.size();
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [a, b] : t.edges_) ++deg[a], ++deg[b];
  t.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) t.offsets_[v + 1] = t.offsets_[v] + deg[v];
  t.adjacency_.resize(t.offsets_[n]);
  std::vector<std::size_t> fill(t.offsets_.begin(), t.offsets_.end() - 1);
  for (const auto& [a, b] : t.edges_) {
    t.adjacency_[fill[a]++] = b;
    t.adjacency_[fill[b]++] = a;
  }
  return t;
}

struct TreeCheck {
  bool bipartite = true;
  bool interior_valencies = true;
  std::size_t interior_vertices = 0;
  std::size_t boundary_vertices = 0;
  std::vector<std::string> problems;
  bool ok() const noexcept { return bipartite && interior_valencies; }
};

inline TreeCheck check_tree(const BiregularTree& t) {
  TreeCheck out;
  const auto& vs = t.vertices();
  for (const auto& [a, b] : t.edges())
    if (vs[a].kind == vs[b].kind) {
      out.bipartite = false;
      out.problems.push_back("edge " + std::to_string(a) + "-" + std::to_string(b) + " joins equal kinds");
    }
  for (const auto& v : vs) {
    if (v.boundary) {
      ++out.boundary_vertices;
      continue;
    }
    ++out.interior_vertices;
    if (t.degree(v.id) != valency(v.kind, t.prime())) {
      out.interior_valencies = false;
      out.problems.push_back("vertex " + std::to_string(v.id) + " has valency " + std::to_string(t.degree(v.id)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fibers of the Hecke correspondences

enum class StratumA { Ordinary, PRankOne, SupersingularNotSuperspecial, Superspecial };
enum class KernelTypeB { MuPTimesZP, I11, AlphaPTimesAlphaP, I21Ambient };
enum class Correspondence { A, B };

inline constexpr std::array<StratumA, 4> kStrataA{StratumA::Ordinary, StratumA::PRankOne,
                                                  StratumA::SupersingularNotSuperspecial, StratumA::Superspecial};
inline constexpr std::array<KernelTypeB, 4> kKernelTypesB{KernelTypeB::MuPTimesZP, KernelTypeB::I11,
                                                          KernelTypeB::AlphaPTimesAlphaP, KernelTypeB::I21Ambient};

inline std::string to_string(StratumA s) {
  switch (s) {
    case StratumA::Ordinary: return "ordinary";
    case StratumA::PRankOne: return "p_rank_one";
    case StratumA::SupersingularNotSuperspecial: return "ss_not_superspecial";
    case StratumA::Superspecial: return "superspecial";
  }
  return "?";
}

inline std::string to_string(KernelTypeB k) {
  switch (k) {
    case KernelTypeB::MuPTimesZP: return "mu_p x Z/p";
    case KernelTypeB::I11: return "I_{1,1}";
    case KernelTypeB::AlphaPTimesAlphaP: return "alpha_p x alpha_p";
    case KernelTypeB::I21Ambient: return "I_{2,1}-ambient";
  }
  return "?";
}

// Reduced fiber: a finite number of points, or a projective line.
struct FiberCount {
  std::optional<std::uint64_t> points;

  static FiberCount finite(std::uint64_t n) { return {n}; }
  static FiberCount projective_line() { return {std::nullopt}; }
  bool is_projective_line() const noexcept { return !points.has_value(); }
  std::string to_string() const { return points ? std::to_string(*points) : "P1"; }
  friend bool operator==(const FiberCount&, const FiberCount&) = default;
};

inline FiberCount fiber_card_a(StratumA s, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  switch (s) {
    case StratumA::Ordinary: return FiberCount::finite(2 * (p + 1));
    case StratumA::PRankOne: return FiberCount::finite(3);
    case StratumA::SupersingularNotSuperspecial: return FiberCount::finite(1);
    case StratumA::Superspecial: return FiberCount::projective_line();
  }
  return FiberCount::projective_line();
}

inline FiberCount fiber_card_b(KernelTypeB k, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  switch (k) {
    case KernelTypeB::MuPTimesZP: return FiberCount::finite(2);
    case KernelTypeB::I11: return FiberCount::finite(1);
    case KernelTypeB::I21Ambient: return FiberCount::finite(1);
    case KernelTypeB::AlphaPTimesAlphaP: return FiberCount::projective_line();
  }
  return FiberCount::projective_line();
}

// Number of order-p subgroups of (Z/p)^4 for a, of (Z/p)^2 for b.
inline std::uint64_t generic_degree(Correspondence c, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  return c == Correspondence::A ? p * p * p + p * p + p + 1 : p + 1;
}

// ---------------------------------------------------------------------------
// Incidence of components (first kind) and superspecial points (second kind)

struct IncidenceModel {
  std::uint64_t p = 0;
  std::vector<std::uint32_t> components;          // labels, N
  std::vector<std::uint32_t> superspecial_points; // labels, M
  std::vector<bool> component_boundary;
  std::vector<bool> point_boundary;
  // (component index, point index); repeated pairs are allowed.
  std::vector<std::pair<std::size_t, std::size_t>> incidence;

  std::vector<std::size_t> component_degrees() const {
    std::vector<std::size_t> d(components.size(), 0);
    for (const auto& e : incidence) ++d[e.first];
    return d;
  }

  std::vector<std::size_t> point_degrees() const {
    std::vector<std::size_t> d(superspecial_points.size(), 0);
    for (const auto& e : incidence) ++d[e.second];
    return d;
  }

  // Abstract model with free |N|, |M|; no boundary.
  static IncidenceModel from_counts(std::uint64_t p, std::size_t n_components, std::size_t n_points,
                                    std::vector<std::pair<std::size_t, std::size_t>> incidence = {}) {
    IncidenceModel m;
    m.p = p;
    for (std::size_t i = 0; i < n_components; ++i) m.components.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t i = 0; i < n_points; ++i) m.superspecial_points.push_back(static_cast<std::uint32_t>(i));
    m.component_boundary.assign(n_components, false);
    m.point_boundary.assign(n_points, false);
    for (const auto& [c, q] : incidence)
      if (c >= n_components || q >= n_points) throw InvalidInput("incidence refers to a missing component or point");
    m.incidence = std::move(incidence);
    return m;
  }
};

inline IncidenceModel incidence_from_tree(const BiregularTree& t) {
  IncidenceModel m;
  m.p = t.prime();
  std::vector<std::size_t> index(t.vertices().size());
  for (const auto& v : t.vertices()) {
    if (v.kind == VertexKind::First) {
      index[v.id] = m.components.size();
      m.components.push_back(v.id);
      m.component_boundary.push_back(v.boundary);
    } else {
      index[v.id] = m.superspecial_points.size();
      m.superspecial_points.push_back(v.id);
      m.point_boundary.push_back(v.boundary);
    }
  }
  m.incidence.reserve(t.edges().size());
  for (const auto& [a, b] : t.edges()) {
    const bool a_first = t.vertices()[a].kind == VertexKind::First;
    const auto comp = a_first ? a : b;
    const auto point = a_first ? b : a;
    m.incidence.emplace_back(index[comp], index[point]);
  }
  return m;
}

struct IncidenceCheck {
  bool points_on_p_plus_1_components = true;
  bool components_carry_p2_plus_1_points = true;
  std::size_t incidences_from_components = 0;
  std::size_t incidences_from_points = 0;
  bool handshake() const noexcept { return incidences_from_components == incidences_from_points; }
  bool ok() const noexcept {
    return points_on_p_plus_1_components && components_carry_p2_plus_1_points && handshake();
  }
};

inline IncidenceCheck check_incidence(const IncidenceModel& m) {
  IncidenceCheck out;
  const auto cd = m.component_degrees();
  const auto pd = m.point_degrees();
  for (std::size_t i = 0; i < cd.size(); ++i) {
    out.incidences_from_components += cd[i];
    if (!m.component_boundary[i] && cd[i] != m.p * m.p + 1) out.components_carry_p2_plus_1_points = false;
  }
  for (std::size_t i = 0; i < pd.size(); ++i) {
    out.incidences_from_points += pd[i];
    if (!m.point_boundary[i] && pd[i] != m.p + 1) out.points_on_p_plus_1_components = false;
  }
  return out;
}

// The paramodular singular locus: every E-component (one per element of N)
// is contracted to a point of Sigma; the superspecial set M is untouched.
struct SingularLocusModel {
  std::vector<std::uint32_t> singular_points;      // Sigma, labelled by the contracted component
  std::vector<std::size_t> component_to_point;     // index in N -> index in Sigma
  std::vector<std::uint32_t> superspecial_points;  // M
  bool components_pairwise_disjoint = true;

  std::size_t sigma_size() const noexcept { return singular_points.size(); }
};

inline SingularLocusModel contract_e(const IncidenceModel& m) {
  SingularLocusModel out;
  out.singular_points = m.components;
  out.component_to_point.resize(m.components.size());
  for (std::size_t i = 0; i < m.components.size(); ++i) out.component_to_point[i] = i;
  out.superspecial_points = m.superspecial_points;
  return out;
}

// Contracting again changes nothing: the E-part is already points.
inline SingularLocusModel contract_e(const SingularLocusModel& s) { return s; }

// ---------------------------------------------------------------------------
// Export

inline std::string to_dot(const BiregularTree& t) {
  std::ostringstream os;
  os << "graph biregular_tree {\n";
  os << "  // p=" << t.prime() << " radius=" << t.radius() << "\n";
  for (const auto& v : t.vertices()) {
    os << "  v" << v.id << " [kind=" << to_string(v.kind) << ", shape=" << (v.kind == VertexKind::First ? "box" : "circle");
    if (v.boundary) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& [a, b] : t.edges()) os << "  v" << a << " -- v" << b << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const IncidenceModel& m) {
  std::ostringstream os;
  os << "graph incidence {\n";
  for (std::size_t i = 0; i < m.components.size(); ++i)
    os << "  c" << m.components[i] << " [shape=box" << (m.component_boundary[i] ? ", style=dashed" : "") << "];\n";
  for (std::size_t i = 0; i < m.superspecial_points.size(); ++i)
    os << "  s" << m.superspecial_points[i] << " [shape=point" << (m.point_boundary[i] ? ", style=dashed" : "")
       << "];\n";
  for (const auto& [c, q] : m.incidence) os << "  c" << m.components[c] << " -- s" << m.superspecial_points[q] << ";\n";
  os << "}\n";
  return os.str();
}

inline nlohmann::ordered_json to_json(const BiregularTree& t) {
  nlohmann::ordered_json out;
  out["prime"] = t.prime();
  out["radius"] = t.radius();
  out["root"] = t.root();
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const auto& v : t.vertices()) {
    nlohmann::ordered_json jv;
    jv["id"] = v.id;
    jv["kind"] = to_string(v.kind);
    jv["depth"] = v.depth;
    jv["boundary"] = v.boundary;
    vs.push_back(jv);
  }
  out["vertices"] = vs;
  nlohmann::ordered_json es = nlohmann::ordered_json::array();
  for (const auto& [a, b] : t.edges()) es.push_back({a, b});
  out["edges"] = es;
  return out;
}

inline nlohmann::ordered_json to_json(const IncidenceModel& m) {
  nlohmann::ordered_json out;
  out["prime"] = m.p;
  out["components"] = m.components;
  out["superspecial_points"] = m.superspecial_points;
  nlohmann::ordered_json inc = nlohmann::ordered_json::array();
  for (const auto& [c, q] : m.incidence) inc.push_back({m.components[c], m.superspecial_points[q]});
  out["incidence"] = inc;
  return out;
}

}  // namespace paramod::ssl
