#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "paramod/wd_core.hpp"

using namespace paramod;
using wd::EigenvalueSymbol;
using wd::WeilDeligneRep;

namespace {

// Single Jordan block of size n with weights n-1, n-3, ..., -(n-1) shifted by base.
WeilDeligneRep block_rep(std::size_t n, int base) {
  std::vector<std::string> basis;
  std::vector<EigenvalueSymbol> frob;
  for (std::size_t i = 0; i < n; ++i) {
    basis.push_back("e" + std::to_string(i + 1));
    frob.push_back({Scalar::symbol("u"), base - static_cast<int>(n) + 1 + 2 * static_cast<int>(i)});
  }
  return WeilDeligneRep(basis, frob, oracle::jordan_block(n), base);
}

}  // namespace

TEST_CASE("Jordan block filtrations") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto f = wd::monodromy_filtration(oracle::jordan_block(n), 0);
    std::map<int, std::size_t> expected;
    for (int w = -(static_cast<int>(n) - 1); w <= static_cast<int>(n) - 1; w += 2) expected[w] = 1;
    CHECK(f.graded_dims() == expected);
    CHECK(oracle::check_filtration(oracle::jordan_block(n), f).ok());
  }
}

TEST_CASE("filtration with a shifted center") {
  const auto f = wd::monodromy_filtration(oracle::jordan_block(3), 5);
  CHECK(f.graded_dims() == std::map<int, std::size_t>{{3, 1}, {5, 1}, {7, 1}});
  CHECK(f.dim(2) == 0);
  CHECK(f.dim(100) == 3);
}

TEST_CASE("random nilpotent filtrations satisfy both conditions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto m = n <= 3 && trial % 2 ? oracle::random_nilpotent_dense(rng, n) : oracle::random_nilpotent(rng, n);
    const auto f = wd::monodromy_filtration(m, 0);
    const auto v = oracle::check_filtration(m, f);
    INFO(m << " " << v.failure);
    CHECK(v.ok());
  }
}

TEST_CASE("zero operator gives a single graded piece") {
  const auto f = wd::monodromy_filtration(IntMatrix(3, 3), 2);
  CHECK(f.graded_dims() == std::map<int, std::size_t>{{2, 3}});
}

TEST_CASE("non-nilpotent operator is rejected") {
  CHECK_THROWS_AS(wd::monodromy_filtration(IntMatrix{{1, 0}, {0, 0}}, 0), InvalidInput);
  CHECK_THROWS_AS(wd::monodromy_filtration(IntMatrix(2, 3), 0), InvalidInput);
}

TEST_CASE("purity of weight-graded Jordan blocks") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (int base : {-3, 0, 4}) {
      const auto rep = block_rep(n, base);
      const auto r = wd::is_pure(rep);
      CHECK(r.pure);
      CHECK(r.filtration_matches_weights);
      CHECK(r.weight_dims == r.monodromy_graded_dims);
    }
}

TEST_CASE("purity fails without monodromy or at the wrong base weight") {
  std::vector<EigenvalueSymbol> frob{{Scalar(), -1}, {Scalar(), 1}};
  const WeilDeligneRep no_n({"a", "b"}, frob, IntMatrix(2, 2), 0);
  const auto r = wd::is_pure(no_n);
  CHECK_FALSE(r.pure);
  CHECK_FALSE(r.filtration_matches_weights);
  REQUIRE(r.certificate.size() == 1);
  CHECK(r.certificate[0].rank == 0);

  IntMatrix n(2, 2);
  n(0, 1) = 1;
  CHECK(wd::is_pure(WeilDeligneRep({"a", "b"}, frob, n, 0)).pure);
  CHECK_FALSE(wd::is_pure(WeilDeligneRep({"a", "b"}, frob, n, 2)).pure);
}

TEST_CASE("constructor validation") {
  std::vector<EigenvalueSymbol> frob{{Scalar(), 0}, {Scalar(), 0}};
  IntMatrix n(2, 2);
  n(0, 1) = 1;
  CHECK_THROWS_AS(WeilDeligneRep({"a", "b"}, frob, n, 0), InvalidInput);  // weight must drop by 2
  CHECK_THROWS_AS(WeilDeligneRep({"a"}, frob, IntMatrix(2, 2), 0), InvalidInput);
  CHECK_THROWS_AS(WeilDeligneRep({}, {}, IntMatrix(0, 0), 0), InvalidInput);
  CHECK_THROWS_AS(WeilDeligneRep({"a", "b"}, frob, IntMatrix(3, 3), 0), InvalidInput);
}

TEST_CASE("twist and dual preserve purity") {
  const auto rep = block_rep(3, 1);
  const auto tw = wd::tate_twist(rep, 2);
  CHECK(tw.base_weight() == -3);
  CHECK(tw.weights() == std::vector<int>{-5, -3, -1});
  CHECK(wd::is_pure(tw).pure);
  const auto d = wd::dual(rep);
  CHECK(d.base_weight() == -1);
  CHECK(d.basis()[0] == "e1*");
  CHECK(d.frobenius()[0].unitary == Scalar::symbol("u").inverse());
  CHECK(wd::is_pure(d).pure);
  CHECK(wd::dual(d) == rep);
  CHECK(wd::tate_twist(tw, -2) == rep);
}

TEST_CASE("direct sums") {
  const auto s = wd::direct_sum(block_rep(2, 0), block_rep(3, 0));
  CHECK(s.dimension() == 5);
  CHECK(wd::n_rank(s) == 3);
  CHECK(wd::is_pure(s).pure);
  CHECK_THROWS_AS(wd::direct_sum(block_rep(2, 0), block_rep(2, 1)), InvalidInput);
}

TEST_CASE("JSON round trip") {
  std::vector<EigenvalueSymbol> frob{{Scalar(Rational(3, 2), Monomial::generator("chi", 2)), -1},
                                     {Scalar::parse("-7"), 1}};
  IntMatrix n(2, 2);
  n(0, 1) = -4;
  const WeilDeligneRep rep({"x", "y"}, frob, n, 0);
  const auto j = wd::to_json(rep);
  CHECK(wd::rep_from_json(nlohmann::json::parse(j.dump())) == rep);
  CHECK(j.dump() == wd::to_json(wd::rep_from_json(nlohmann::json::parse(j.dump()))).dump());

  auto bad = nlohmann::json::parse(j.dump());
  bad.erase("N");
  CHECK_THROWS_AS(wd::rep_from_json(bad), InvalidInput);
  auto non_int = nlohmann::json::parse(j.dump());
  non_int["base_weight"] = 0.5;
  CHECK_THROWS_AS(wd::rep_from_json(non_int), InvalidInput);
}

TEST_CASE("scalar parsing") {
  CHECK(Scalar::parse("3/6") == Scalar(Rational(1, 2)));
  CHECK(Scalar::parse("chi").to_string() == "chi");
  CHECK((Scalar::symbol("chi") * Scalar::symbol("sigma")).pow(2).to_string() == "chi^2*sigma^2");
  CHECK(Scalar::parse("-2").pow(-1) == Scalar(Rational(-1, 2)));
  CHECK_THROWS_AS(Scalar::parse("0"), InvalidInput);
  CHECK_THROWS_AS(Scalar::parse("a+b"), InvalidInput);
  CHECK_THROWS_AS(Scalar::parse(""), InvalidInput);
}
