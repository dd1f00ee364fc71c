#pragma once

// Weil-Deligne representations with diagonal (graded) Frobenius and a
// nilpotent monodromy operator, together with the monodromy filtration and
// the weight-monodromy purity test.
//
// Frobenius eigenvalues are symbolic: a unitary part (a Scalar) and an integer
// weight w, meaning absolute value q^{w/2}. Half-integral powers of the
// normalised absolute value never appear; v^{1/2} is weight -1.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramod/errors.hpp"
#include "paramod/linalg.hpp"
#include "paramod/monomial.hpp"

namespace paramod::wd {

struct EigenvalueSymbol {
  Scalar unitary;
  int weight = 0;

  friend bool operator==(const EigenvalueSymbol&, const EigenvalueSymbol&) = default;
};

class WeilDeligneRep {
 public:
  // Throws InvalidInput unless N is square of the right size, nilpotent and
  // lowers Frobenius weight by exactly 2 on every nonzero entry.
  WeilDeligneRep(std::vector<std::string> basis, std::vector<EigenvalueSymbol> frobenius, IntMatrix monodromy,
                 int base_weight)
      : basis_(std::move(basis)),
        frobenius_(std::move(frobenius)),
        monodromy_(std::move(monodromy)),
        base_weight_(base_weight) {
    validate();
  }

  std::size_t dimension() const noexcept { return frobenius_.size(); }
  const std::vector<std::string>& basis() const noexcept { return basis_; }
  const std::vector<EigenvalueSymbol>& frobenius() const noexcept { return frobenius_; }
  const IntMatrix& monodromy() const noexcept { return monodromy_; }
  int base_weight() const noexcept { return base_weight_; }

  std::vector<int> weights() const {
    std::vector<int> w;
    w.reserve(frobenius_.size());
    for (const auto& f : frobenius_) w.push_back(f.weight);
    return w;
  }

  friend bool operator==(const WeilDeligneRep&, const WeilDeligneRep&) = default;

 private:
  void validate() const {
    const std::size_t n = frobenius_.size();
    if (n == 0) throw InvalidInput("Weil-Deligne representation must have positive dimension");
    if (basis_.size() != n) throw InvalidInput("basis label count does not match dimension");
    if (monodromy_.rows() != n || monodromy_.cols() != n)
      throw InvalidInput("monodromy operator must be " + std::to_string(n) + "x" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (monodromy_(i, j) != 0 && frobenius_[i].weight != frobenius_[j].weight - 2)
          throw InvalidInput("N(e" + std::to_string(j + 1) + ") has a component on e" + std::to_string(i + 1) +
                             " but weights are " + std::to_string(frobenius_[j].weight) + " -> " +
                             std::to_string(frobenius_[i].weight) + " (must drop by 2)");
    // Weight-lowering already forces nilpotency; checked anyway for clarity of the error.
    if (!linalg::is_nilpotent(to_rational(monodromy_))) throw InvalidInput("monodromy operator is not nilpotent");
  }

  std::vector<std::string> basis_;
  std::vector<EigenvalueSymbol> frobenius_;
  IntMatrix monodromy_;
  int base_weight_ = 0;
};

// Increasing filtration M_m attached to a nilpotent N and a center c:
// N M_m ⊆ M_{m-2} and N^i : gr_{c+i} -> gr_{c-i} is an isomorphism.
class MonodromyFiltration {
 public:
  MonodromyFiltration(int center, std::size_t dimension, int lowest, std::vector<RationalMatrix> steps)
      : center_(center), dimension_(dimension), lowest_(lowest), steps_(std::move(steps)) {}

  int center() const noexcept { return center_; }
  std::size_t dimension() const noexcept { return dimension_; }
  // M_m = 0 for m < lowest_index(), M_m = V for m >= highest_index().
  int lowest_index() const noexcept { return lowest_; }
  int highest_index() const noexcept { return lowest_ + static_cast<int>(steps_.size()) - 1; }

  // Basis of M_m as columns.
  RationalMatrix step(int m) const {
    if (m < lowest_) return RationalMatrix(dimension_, 0);
    if (m > highest_index()) return RationalMatrix::identity(dimension_);
    return steps_[static_cast<std::size_t>(m - lowest_)];
  }

  std::size_t dim(int m) const { return step(m).cols(); }
  std::size_t graded_dim(int m) const { return dim(m) - dim(m - 1); }

  // Nonzero graded dimensions keyed by index.
  std::map<int, std::size_t> graded_dims() const {
    std::map<int, std::size_t> out;
    for (int m = lowest_; m <= highest_index(); ++m)
      if (auto g = graded_dim(m)) out[m] = g;
    return out;
  }

 private:
  int center_;
  std::size_t dimension_;
  int lowest_;
  std::vector<RationalMatrix> steps_;
};

// Uses M_{c+k} = sum_{j>=0} N^j ker(N^{k+2j+1}), which is additive over
// Jordan blocks and gives the sl2 weight structure on each block.
inline MonodromyFiltration monodromy_filtration(const IntMatrix& n_int, int center) {
  if (n_int.rows() != n_int.cols()) throw InvalidInput("monodromy operator must be square");
  const std::size_t dim = n_int.rows();
  const RationalMatrix n = to_rational(n_int);
  const std::size_t index = linalg::nilpotency_index(n);
  if (dim > 0 && index == 0) throw InvalidInput("monodromy operator is not nilpotent");
  const int r = index == 0 ? 0 : static_cast<int>(index) - 1;  // N^{r+1} = 0, N^r != 0

  std::vector<RationalMatrix> powers{RationalMatrix::identity(dim)};
  for (int e = 1; e <= r + 1; ++e) powers.push_back(powers.back() * n);
  std::vector<RationalMatrix> kernels{RationalMatrix(dim, 0)};  // ker N^0 = 0
  for (int e = 1; e <= r + 1; ++e) kernels.push_back(linalg::kernel(powers[static_cast<std::size_t>(e)]));

  std::vector<RationalMatrix> steps;
  for (int k = -r - 1; k <= r; ++k) {
    RationalMatrix span(dim, 0);
    for (int j = 0; j <= r; ++j) {
      const int a = k + 2 * j + 1;
      if (a < 1) continue;
      const auto& ker = kernels[static_cast<std::size_t>(std::min(a, r + 1))];
      if (ker.cols() == 0) continue;
      span = hconcat(span, powers[static_cast<std::size_t>(j)] * ker);
    }
    steps.push_back(linalg::column_space(span));
  }
  return MonodromyFiltration(center, dim, center - r - 1, std::move(steps));
}

inline std::size_t n_rank(const WeilDeligneRep& rep) { return linalg::rank(rep.monodromy()); }

struct GradedRank {
  int step = 0;              // i >= 1
  int source_weight = 0;     // base + i
  int target_weight = 0;     // base - i
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;      // rank of N^i : V_{base+i} -> V_{base-i}
  std::size_t max_rank = 0;  // min(source_dim, target_dim)
  bool isomorphism = false;
};

struct PurityResult {
  bool pure = false;
  std::vector<GradedRank> certificate;
  // Second route: the monodromy filtration centred at the base weight equals
  // the weight filtration spanned by Frobenius eigenvectors. Always equals `pure`.
  bool filtration_matches_weights = false;
  std::map<int, std::size_t> weight_dims;
  std::map<int, std::size_t> monodromy_graded_dims;
};

inline PurityResult is_pure(const WeilDeligneRep& rep) {
  PurityResult out;
  const int base = rep.base_weight();
  const auto weights = rep.weights();
  int spread = 0;
  for (int w : weights) {
    ++out.weight_dims[w];
    spread = std::max(spread, std::abs(w - base));
  }

  auto indices_of = [&](int w) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] == w) idx.push_back(i);
    return idx;
  };

  out.pure = true;
  IntMatrix power = rep.monodromy();
  for (int i = 1; i <= spread; ++i) {
    GradedRank g;
    g.step = i;
    g.source_weight = base + i;
    g.target_weight = base - i;
    const auto src = indices_of(g.source_weight);
    const auto dst = indices_of(g.target_weight);
    g.source_dim = src.size();
    g.target_dim = dst.size();
    IntMatrix block(dst.size(), src.size());
    for (std::size_t r = 0; r < dst.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c) block(r, c) = power(dst[r], src[c]);
    g.rank = block.empty() ? 0 : linalg::rank(block);
    g.max_rank = std::min(g.source_dim, g.target_dim);
    g.isomorphism = g.source_dim == g.target_dim && g.rank == g.source_dim;
    out.pure = out.pure && g.isomorphism;
    out.certificate.push_back(g);
    power = power * rep.monodromy();
  }

  const auto filt = monodromy_filtration(rep.monodromy(), base);
  out.monodromy_graded_dims = filt.graded_dims();
  const int lo = std::min(filt.lowest_index(), base - spread) - 1;
  const int hi = std::max(filt.highest_index(), base + spread) + 1;
  out.filtration_matches_weights = true;
  for (int m = lo; m <= hi && out.filtration_matches_weights; ++m) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] <= m) cols.push_back(i);
    RationalMatrix span(rep.dimension(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) span(cols[c], c) = 1;
    out.filtration_matches_weights = linalg::same_subspace(span, filt.step(m));
  }
  return out;
}

// Twist by Q_l(n): every weight drops by 2n, N unchanged.
inline WeilDeligneRep tate_twist(const WeilDeligneRep& rep, int n) {
  auto frob = rep.frobenius();
  for (auto& f : frob) f.weight -= 2 * n;
  return WeilDeligneRep(rep.basis(), std::move(frob), rep.monodromy(), rep.base_weight() - 2 * n);
}

// Contragredient: weights negate, unitary parts invert, N becomes its
// transpose in the dual basis (no sign).
inline WeilDeligneRep dual(const WeilDeligneRep& rep) {
  auto frob = rep.frobenius();
  for (auto& f : frob) {
    f.unitary = f.unitary.inverse();
    f.weight = -f.weight;
  }
  std::vector<std::string> basis;
  for (const auto& b : rep.basis()) basis.push_back(b.size() > 1 && b.back() == '*' ? b.substr(0, b.size() - 1) : b + "*");
  return WeilDeligneRep(std::move(basis), std::move(frob), rep.monodromy().transpose(), -rep.base_weight());
}

inline WeilDeligneRep direct_sum(const WeilDeligneRep& a, const WeilDeligneRep& b) {
  if (a.base_weight() != b.base_weight())
    throw InvalidInput("direct sum needs a common base weight (" + std::to_string(a.base_weight()) + " vs " +
                       std::to_string(b.base_weight()) + ")");
  auto basis = a.basis();
  basis.insert(basis.end(), b.basis().begin(), b.basis().end());
  auto frob = a.frobenius();
  frob.insert(frob.end(), b.frobenius().begin(), b.frobenius().end());
  const std::size_t na = a.dimension(), nb = b.dimension();
  IntMatrix n(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) n(i, j) = a.monodromy()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) n(na + i, na + j) = b.monodromy()(i, j);
  return WeilDeligneRep(std::move(basis), std::move(frob), std::move(n), a.base_weight());
}

// ---------------------------------------------------------------------------
// JSON
//
// {"dimension": n, "basis": [...], "frobenius": [{"monomial": {...}, "weight": w}, ...],
//  "N": [[...]], "base_weight": k}
// A "coefficient" string ("-1", "3/2") is written only when it is not 1.

namespace json_detail {

inline std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InvalidInput("matrix entry does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

inline std::int64_t require_int(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InvalidInput(what + " must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace json_detail

inline nlohmann::ordered_json scalar_to_json(const Scalar& s) {
  nlohmann::ordered_json out;
  if (s.coefficient != 1) out["coefficient"] = json_detail::rational_to_string(s.coefficient);
  nlohmann::ordered_json mono = nlohmann::ordered_json::object();
  for (const auto& [g, e] : s.monomial.exponents()) mono[g] = e;
  out["monomial"] = mono;
  return out;
}

inline Scalar scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Rational(j.get<std::int64_t>()));
  if (!j.is_object()) throw InvalidInput("character value must be a string, integer or object");
  Scalar s;
  if (j.contains("coefficient")) {
    const auto& c = j.at("coefficient");
    s = c.is_string() ? Scalar::parse(c.get<std::string>()) : Scalar(Rational(json_detail::require_int(c, "coefficient")));
    if (!s.monomial.is_one()) throw InvalidInput("coefficient must be a rational number");
  }
  if (j.contains("monomial")) {
    const auto& m = j.at("monomial");
    if (!m.is_object()) throw InvalidInput("monomial must be an object of exponents");
    Monomial mono;
    for (auto it = m.begin(); it != m.end(); ++it)
      mono.set(it.key(), static_cast<int>(json_detail::require_int(it.value(), "exponent of " + it.key())));
    s.monomial = mono;
  }
  return s;
}

inline nlohmann::ordered_json int_matrix_to_json(const IntMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json_detail::to_int64(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline IntMatrix int_matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + " must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw InvalidInput(what + " is ragged at row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = BigInt(json_detail::require_int(row.at(c), what + " entry"));
  }
  return m;
}

inline nlohmann::ordered_json to_json(const WeilDeligneRep& rep) {
  nlohmann::ordered_json out;
  out["dimension"] = rep.dimension();
  out["basis"] = rep.basis();
  nlohmann::ordered_json frob = nlohmann::ordered_json::array();
  for (const auto& f : rep.frobenius()) {
    auto entry = scalar_to_json(f.unitary);
    entry["weight"] = f.weight;
    frob.push_back(entry);
  }
  out["frobenius"] = frob;
  out["N"] = int_matrix_to_json(rep.monodromy());
  out["base_weight"] = rep.base_weight();
  return out;
}

inline WeilDeligneRep rep_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("Weil-Deligne representation must be a JSON object");
  for (const char* key : {"dimension", "frobenius", "N", "base_weight"})
    if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  const auto dim = json_detail::require_int(j.at("dimension"), "dimension");
  if (dim <= 0) throw InvalidInput("dimension must be positive");
  const auto& frob_json = j.at("frobenius");
  if (!frob_json.is_array() || frob_json.size() != static_cast<std::size_t>(dim))
    throw InvalidInput("frobenius must list one eigenvalue per basis vector");
  std::vector<EigenvalueSymbol> frob;
  for (const auto& f : frob_json) {
    if (!f.is_object() || !f.contains("weight")) throw InvalidInput("frobenius entries need a weight");
    frob.push_back({scalar_from_json(f), static_cast<int>(json_detail::require_int(f.at("weight"), "weight"))});
  }
  std::vector<std::string> basis;
  if (j.contains("basis")) {
    for (const auto& b : j.at("basis")) {
      if (!b.is_string()) throw InvalidInput("basis labels must be strings");
      basis.push_back(b.get<std::string>());
    }
  } else {
    for (std::int64_t i = 1; i <= dim; ++i) basis.push_back("e" + std::to_string(i));
  }
  return WeilDeligneRep(std::move(basis), std::move(frob), int_matrix_from_json(j.at("N"), "N"),
                        static_cast<int>(json_detail::require_int(j.at("base_weight"), "base_weight")));
}

}  // namespace paramod::wd
