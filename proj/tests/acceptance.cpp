// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "paramod/dimensions.hpp"
#include "paramod/local_reps.hpp"
#include "paramod/picard_lefschetz.hpp"
#include "paramod/ss_locus.hpp"
#include "paramod/wd_core.hpp"

using namespace paramod;

namespace {

const std::string kData = PARAMOD_DATA_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Scalar random_unitary(std::mt19937_64& rng, const char* name) {
  std::uniform_int_distribution<int> exp(-3, 3), pick(0, 2);
  const int e = exp(rng);
  switch (pick(rng)) {
    case 0: return Scalar(Rational(pick(rng) == 0 ? -1 : 1));
    case 1: return Scalar(Rational(1), Monomial::generator(name, e == 0 ? 1 : e));
    default: return Scalar(Rational(-1), Monomial::generator(std::string(name) + "_u", 1 + pick(rng)));
  }
}

Outcome iia_purity() {
  Outcome o;
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const local::ParamodularLocalRep rep(local::LocalRepType::IIa, random_unitary(rng, "chi"),
                                         random_unitary(rng, "sigma"), 2 + (trial % 2));
    const auto w = local::wd_of_iia(rep);
    o.require(w.base_weight() == 0, "base weight is not 0");
    o.require(wd::n_rank(w) == 1, "n_rank != 1");
    const auto r = wd::is_pure(w);
    o.require(r.pure && r.filtration_matches_weights, "IIa rep is not pure");
    const wd::WeilDeligneRep no_n(w.basis(), w.frobenius(), IntMatrix(4, 4), 0);
    o.require(!wd::is_pure(no_n).pure, "N = 0 variant passes purity");
  }
  return o;
}

Outcome filtration_correctness() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = dim(rng);
    const auto m = (n <= 3 && trial % 3 == 0) ? oracle::random_nilpotent_dense(rng, n) : oracle::random_nilpotent(rng, n);
    const auto v = oracle::check_filtration(m, wd::monodromy_filtration(m, 0));
    std::ostringstream os;
    os << v.failure << " for " << m;
    o.require(v.ok(), os.str());
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    std::map<int, std::size_t> expected;
    for (int w = -(static_cast<int>(n) - 1); w <= static_cast<int>(n) - 1; w += 2) expected[w] = 1;
    o.require(wd::monodromy_filtration(oracle::jordan_block(n), 0).graded_dims() == expected,
              "Jordan block of size " + std::to_string(n));
  }
  return o;
}

Outcome atkin_lehner() {
  Outcome o;
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    const local::ParamodularLocalRep rep(local::LocalRepType::IIa, Scalar::symbol("chi"), Scalar::symbol("sigma"), p);
    const auto lambda = local::atkin_lehner_eigenvalue(rep);
    o.require(lambda == Scalar::symbol("chi") * Scalar::symbol("sigma"), "eigenvalue is not chi*sigma");
    o.require(lambda.pow(2) == local::central_character(rep), "square differs from the central character");
    o.require(local::central_character(rep).to_string() == "chi^2*sigma^2", "central character monomial");
    o.require(local::frobenius_on_vanishing_cycles(rep) == Scalar(Rational(static_cast<long long>(p))) * lambda,
              "Frobenius on vanishing cycles is not p*chi*sigma");
  }
  return o;
}

Outcome fiber_tables() {
  using namespace ssl;
  Outcome o;
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    const std::vector<FiberCount> a{fiber_card_a(StratumA::Ordinary, p), fiber_card_a(StratumA::PRankOne, p),
                                    fiber_card_a(StratumA::SupersingularNotSuperspecial, p),
                                    fiber_card_a(StratumA::Superspecial, p)};
    const std::vector<FiberCount> a_expected{FiberCount::finite(2 * (p + 1)), FiberCount::finite(3),
                                             FiberCount::finite(1), FiberCount::projective_line()};
    o.require(a == a_expected, "fiber_card_a at p=" + std::to_string(p));
    const std::vector<FiberCount> b{fiber_card_b(KernelTypeB::MuPTimesZP, p), fiber_card_b(KernelTypeB::I11, p),
                                    fiber_card_b(KernelTypeB::AlphaPTimesAlphaP, p)};
    const std::vector<FiberCount> b_expected{FiberCount::finite(2), FiberCount::finite(1),
                                             FiberCount::projective_line()};
    o.require(b == b_expected, "fiber_card_b at p=" + std::to_string(p));
    const auto ga = generic_degree(Correspondence::A, p);
    o.require(ga == p * p * p + p * p + p + 1 && ga == (p * p + 1) * (p + 1), "generic degree of a");
    o.require(generic_degree(Correspondence::B, p) == p + 1, "generic degree of b");
  }
  return o;
}

Outcome tree_invariants() {
  using namespace ssl;
  Outcome o;
  for (std::uint64_t p : {2, 3})
    for (auto kind : {VertexKind::First, VertexKind::Second})
      for (std::uint32_t r = 0; r <= 4; ++r) {
        const std::string where = "p=" + std::to_string(p) + " r=" + std::to_string(r);
        const auto t = build_tree(p, kind, r);
        const auto tc = check_tree(t);
        o.require(tc.bipartite, "not bipartite at " + where);
        o.require(tc.interior_valencies, "interior valency at " + where);
        const auto inc = incidence_from_tree(t);
        const auto ic = check_incidence(inc);
        o.require(ic.handshake() && ic.ok(), "incidence model at " + where);
        const auto s = contract_e(inc);
        const std::set<std::size_t> image(s.component_to_point.begin(), s.component_to_point.end());
        o.require(s.sigma_size() == inc.components.size() && image.size() == inc.components.size() &&
                      (image.empty() || *image.rbegin() + 1 == image.size()),
                  "contract_E is not a bijection at " + where);
      }
  return o;
}

Outcome component_groups() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = oracle::random_matrix(rng, size(rng), size(rng), -9, 9);
    const auto theta = pl::component_group(m);
    std::vector<std::int64_t> expected;
    for (auto f : oracle::invariant_factors_by_reduction(m))
      if (f > 1) expected.push_back(f);
    std::vector<std::int64_t> got;
    for (const auto& f : theta.invariant_factors) got.push_back(static_cast<std::int64_t>(f));
    std::ostringstream os;
    os << "invariant factors differ for " << m;
    o.require(got == expected, os.str());
    o.require(theta.free_rank == m.rows() - oracle::invariant_factors_by_reduction(m).size(), "free rank");
  }
  for (std::size_t n = 1; n <= 6; ++n)
    o.require(pl::component_group(IntMatrix::identity(n)).is_trivial(), "identity gives nontrivial Theta");
  for (std::int64_t ell : {2, 3, 5, 7, 11, 13}) {
    IntMatrix d{{1, 0}, {0, ell}};
    const auto theta = pl::component_group(d);
    o.require(theta.free_rank == 0 && theta.invariant_factors.size() == 1 && theta.invariant_factors[0] == ell,
              "diag(1, ell) is not Z/ell");
  }
  return o;
}

Outcome weight_profiles() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> count(0, 6), type(0, 5), mult(1, 4), weight(-4, 10);
  for (int trial = 0; trial < 300; ++trial) {
    pl::LedgerScenario s;
    s.prime_p = 3;
    s.prime_ell = 7;
    s.coefficient_weight = weight(rng);
    const bool unramified_only = trial % 4 == 0;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      pl::LedgerContribution c;
      c.id = "c" + std::to_string(i);
      c.multiplicity = static_cast<std::uint64_t>(mult(rng));
      switch (type(rng)) {
        case 0: c.arthur_type = pl::ArthurType::Yoshida; break;
        case 1: c.arthur_type = pl::ArthurType::SaitoKurokawa; break;
        case 2: c.pi_infty = pl::PiInfinity::W; break;
        default: break;
      }
      c.galois_dim = *pl::LedgerContribution::expected_galois_dim(c.arthur_type, c.pi_infty);
      if (!unramified_only && type(rng) < 3)
        c.local_at_p = local::ParamodularLocalRep(local::LocalRepType::IIa, Scalar::symbol("a"), Scalar(), 3);
      s.contributions.push_back(c);
    }
    const int k = s.coefficient_weight;
    const auto a = pl::alpha_rank(s);
    const auto prof = pl::weight_filtration_profile(s);
    std::uint64_t sum = 0;
    for (const auto& [w, d] : prof) {
      o.require(w >= k + 2 && w <= k + 4, "weight outside [k+2, k+4]");
      sum += d;
    }
    o.require(sum == pl::total_dim(s), "graded dimensions do not add up");
    auto at = [&](int w) { return prof.count(w) ? prof.at(w) : 0; };
    o.require(at(k + 2) == a && at(k + 4) == a, "dim(k+2) or dim(k+4) differs from alpha rank");
    if (unramified_only) {
      o.require(a == 0 && at(k + 2) == 0 && at(k + 4) == 0, "unramified scenario is not pure of weight k+3");
      o.require(pl::is_weight_monodromy_ok(s), "unramified scenario fails weight-monodromy");
    }
  }
  return o;
}

Outcome mazur_table() {
  Outcome o;
  int forced = 0, cases = 0;
  for (int n = 1; n <= 4; ++n)
    for (bool irr : {false, true})
      for (bool unr : {false, true})
        for (bool theta : {false, true}) {
          ++cases;
          const auto v = pl::mazur_check({n, irr, unr, theta});
          const bool is_forced = v.outcome == pl::MazurOutcome::LevelLoweringForced;
          forced += is_forced;
          o.require(is_forced == (n == 4 && irr && unr && theta), "wrong verdict");
        }
  o.require(cases == 32 && forced == 1, "LevelLoweringForced count");
  return o;
}

Outcome dimension_identities() {
  Outcome o;
  for (std::int64_t k = 0; k <= 60; k += 2)
    o.require(dims::dim_cusp_level1(k) == oracle::level1_cusp_by_monomials(k), "level 1 k=" + std::to_string(k));
  o.require(dims::dim_cusp_level1(12) == 1 && dims::dim_cusp_level1(2) == 0 && dims::dim_cusp_level1(26) == 1,
            "spot values");
  const auto table = dims::ingest_csv(kData + "/siegel_dims.csv");
  std::size_t rows = 0;
  for (const auto& [key, rec] : table.siegel_records()) {
    if (rec.level != dims::SiegelLevel::Kp) continue;
    ++rows;
    const auto thm = dims::ibukiyama_dim(rec.k, rec.j, rec.p, table);
    const auto fresh = dims::paramodular_new_dim(rec.k, rec.j, rec.p, table);
    const auto rhs = dims::yoshida_count(rec.k, rec.j, rec.p) + fresh + dims::cokernel_line(rec.k, rec.j) +
                     ((rec.k == 0 && rec.j == 3) ? 1 : 0);
    o.require(thm == rhs, "substitution identity fails at " + dims::DimTable::key_string(key));
    o.require(fresh >= 0, "negative new dimension at " + dims::DimTable::key_string(key));
  }
  o.require(rows > 0, "shipped table has no K(p) rows");
  std::ostringstream out, err;
  const int code = cli::run({"dims", "verify", "--table", kData + "/siegel_dims.csv"}, out, err);
  o.require(code == 0, "dims verify exited " + std::to_string(code) + ": " + err.str());
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "IIa purity", 1.0, iia_purity},
      {2, "monodromy filtration correctness", 10.0, filtration_correctness},
      {3, "Atkin-Lehner identities", 1.0, atkin_lehner},
      {4, "fiber and degree tables", 1.0, fiber_tables},
      {5, "tree invariants", 5.0, tree_invariants},
      {6, "component group via Smith normal form", 30.0, component_groups},
      {7, "weight filtration profile", 5.0, weight_profiles},
      {8, "Mazur decision procedure", 1.0, mazur_table},
      {9, "dimension identities", 5.0, dimension_identities},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_seconds) {
      o.ok = false;
      std::ostringstream os;
      os << "took longer than " << c.budget_seconds << " s";
      o.detail = os.str();
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << std::fixed
              << std::setprecision(3) << secs << " s)";
    if (!o.ok) std::cout << "  " << o.detail;
    std::cout << "\n";
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - failures << "/" << criteria.size() << "\n";
  return failures ? 1 : 0;
}
