#include <catch_amalgamated.hpp>

#include "paramod/local_reps.hpp"

using namespace paramod;
using namespace paramod::local;

TEST_CASE("type catalog") {
  const auto cat = catalog();
  REQUIRE(cat.size() == 5);
  for (const auto& e : cat) {
    CHECK(e.generic == (e.type == LocalRepType::IIa));
    CHECK(e.expected_pure == e.generic);
    CHECK(parse_type(to_string(e.type)) == e.type);
  }
  CHECK_THROWS_AS(parse_type("IIb"), InvalidInput);
  CHECK(catalog_json().size() == 5);
}

TEST_CASE("IIa Weil-Deligne realization") {
  const ParamodularLocalRep rep(LocalRepType::IIa, Scalar::symbol("chi"), Scalar::symbol("sigma"), 5);
  const auto w = wd_of_iia(rep);
  CHECK(w.dimension() == 4);
  CHECK(wd::n_rank(w) == 1);
  CHECK(w.weights() == std::vector<int>{0, -1, 1, 0});
  CHECK(w.frobenius()[0].unitary.to_string() == "chi^2*sigma");
  CHECK(w.frobenius()[1].unitary == w.frobenius()[2].unitary);
  CHECK(wd::is_pure(w).pure);
}

TEST_CASE("Atkin-Lehner identities") {
  const ParamodularLocalRep rep(LocalRepType::IIa, Scalar::symbol("chi"), Scalar::symbol("sigma"), 7);
  const auto lambda = atkin_lehner_eigenvalue(rep);
  CHECK(lambda.to_string() == "chi*sigma");
  CHECK(lambda.pow(2) == central_character(rep));
  CHECK(frobenius_on_vanishing_cycles(rep) == Scalar(Rational(7)) * lambda);
  CHECK(frobenius_on_vanishing_cycles(rep).to_string() == "7*chi*sigma");

  const ParamodularLocalRep numeric(LocalRepType::IIa, Scalar(Rational(-1)), Scalar(Rational(-1)), 3);
  CHECK(atkin_lehner_eigenvalue(numeric) == Scalar(Rational(1)));

  const ParamodularLocalRep vb(LocalRepType::Vb, Scalar(), Scalar(), 3);
  CHECK_THROWS_AS(atkin_lehner_eigenvalue(vb), InvalidInput);
  CHECK_THROWS_AS(wd_of_iia(vb), InvalidInput);
}

TEST_CASE("IIa validity conditions") {
  ParamodularLocalRep rep(LocalRepType::IIa, Scalar(), Scalar(), 2);
  CHECK(rep.iia_conditions_hold());
  for (int w : {-3, -1, 1, 3}) {
    rep.chi_weight = w;
    CHECK_FALSE(rep.iia_conditions_hold());
  }
  rep.chi_weight = 0;
  CHECK(rep.iia_conditions_hold());
  CHECK_THROWS_AS(ParamodularLocalRep(LocalRepType::IIa, Scalar(), Scalar(), 9), InvalidInput);
}

TEST_CASE("local representation JSON") {
  const auto j = nlohmann::json::parse(R"({"type": "IIa", "chi": "a", "sigma": -1, "chi_weight": 2})");
  const auto rep = local_rep_from_json(j, 11);
  CHECK(rep.prime == 11);
  CHECK(rep.chi == Scalar::symbol("a"));
  CHECK(rep.sigma == Scalar(Rational(-1)));
  CHECK(rep.chi_weight == 2);
  const auto back = local_rep_from_json(nlohmann::json::parse(to_json(rep).dump()), 2);
  CHECK(back.prime == 11);
  CHECK(back.chi == rep.chi);
  CHECK_THROWS_AS(local_rep_from_json(nlohmann::json::parse(R"({"type": "X"})"), 2), InvalidInput);
}
