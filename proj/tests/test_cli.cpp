#include <catch_amalgamated.hpp>

#include <sstream>

#include "cli.hpp"

namespace {

const std::string kData = PARAMOD_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = paramod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("wd check-purity") {
  const auto r = invoke({"wd", "check-purity", kData + "/iia.json"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["command"] == "wd check-purity");
  CHECK(j["results"]["pure"] == true);
  CHECK(j["results"]["n_rank"] == 1);
  CHECK(j["inputs_digest"].get<std::string>().size() == 64);

  const auto table = invoke({"--format", "table", "wd", "check-purity", kData + "/iia.json"});
  CHECK(table.out.find("pure: true") != std::string::npos);
  const auto trailing = invoke({"wd", "check-purity", kData + "/iia.json", "--format", "table"});
  auto without_digest = [](const std::string& s) { return s.substr(s.find("pure:")); };
  CHECK(without_digest(trailing.out) == without_digest(table.out));

  const auto impure = invoke({"wd", "check-purity", kData + "/iia_no_monodromy.json"});
  CHECK(impure.code == 0);
  CHECK(impure.json()["results"]["pure"] == false);
}

TEST_CASE("wd subcommands") {
  CHECK(invoke({"wd", "catalog"}).json()["results"]["types"].size() == 5);
  const auto al = invoke({"wd", "atkin-lehner", "--prime", "5"}).json()["results"];
  CHECK(al["atkin_lehner"] == "chi*sigma");
  CHECK(al["atkin_lehner_squared"] == al["central_character"]);
  CHECK(al["frobenius_on_vanishing_cycles"] == "5*chi*sigma");
  const auto tw = invoke({"wd", "twist", kData + "/iia.json", "--by", "1"}).json()["results"];
  CHECK(tw["base_weight"] == -2);
  const auto d = invoke({"wd", "dual", kData + "/iia.json"}).json()["results"];
  CHECK(d["basis"][0] == "e1*");
  const auto f = invoke({"wd", "filtration", kData + "/iia.json"}).json()["results"];
  CHECK(f["graded_dims"]["-1"] == 1);
  CHECK(f["graded_dims"]["0"] == 2);
  CHECK(invoke({"wd", "iia", "--prime", "3", "--chi", "2"}).json()["results"]["pure"] == true);
  CHECK(invoke({"wd", "iia", "--prime", "4"}).code == 1);
  CHECK(invoke({"wd", "atkin-lehner", "--prime", "3", "--type", "Vb"}).code == 1);
}

TEST_CASE("tree subcommands") {
  const auto r = invoke({"tree", "build", "--prime", "2", "--radius", "1", "--root-kind", "first"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["results"]["vertices"] == 6);
  CHECK(r.json()["results"]["bipartite"] == true);
  const auto dot = invoke({"tree", "export", "--prime", "2", "--radius", "1", "--as", "dot"});
  CHECK(dot.out.find("graph biregular_tree") == 0);
  const auto inc = invoke({"tree", "export", "--prime", "3", "--radius", "2", "--as", "json", "--incidence"});
  CHECK(nlohmann::json::parse(inc.out).contains("incidence"));
  const auto fib = invoke({"tree", "fibers", "--prime", "3"}).json()["results"];
  CHECK(fib["a"]["ordinary"] == 8);
  CHECK(fib["a"]["superspecial"] == "P1");
  CHECK(fib["generic_degree_a"] == 40);
  CHECK(invoke({"tree", "build", "--prime", "2", "--root-kind", "third"}).code == 2);
}

TEST_CASE("ledger and mazur") {
  const auto r = invoke({"ledger", "run", kData + "/scenario_iia.json"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["results"]["alpha_rank"] == 3);
  const auto loc = invoke({"ledger", "run", kData + "/scenario_iia.json", "--localize", "f2"});
  CHECK(loc.json()["results"]["alpha_rank"] == 0);
  CHECK(invoke({"ledger", "run", kData + "/missing.json"}).code == 1);

  CHECK(invoke({"mazur", "--eigenvalues", "4"}).json()["results"]["verdict"] == "LevelLoweringForced");
  CHECK(invoke({"mazur", "--eigenvalues", "3"}).json()["results"]["verdict"] == "Inconclusive");
  CHECK(invoke({"mazur", "--eigenvalues", "4", "--irreducible", "false"}).json()["results"]["verdict"] ==
        "HypothesisFail");
  CHECK(invoke({"mazur", "--eigenvalues", "9"}).code == 1);
  CHECK(invoke({"mazur", "--eigenvalues", "4", "--irreducible", "maybe"}).code == 2);
}

TEST_CASE("dims subcommands") {
  const auto c = invoke({"dims", "classical", "--weight", "2", "--prime", "11"}).json()["results"];
  CHECK(c["gamma0p_new"] == 1);
  CHECK(c["genus"] == 1);
  const auto empty = invoke({"dims", "verify", "--table", kData + "/empty.csv"});
  CHECK(empty.code == 0);
  CHECK(empty.json()["results"]["checks"] == 0);
  const auto shipped = invoke({"dims", "verify", "--table", kData + "/siegel_dims.csv"});
  CHECK(shipped.code == 0);
  CHECK(invoke({"dims", "verify", "--table", kData + "/siegel_dims.csv", "--literal-delta"}).code == 1);
  const auto ibu =
      invoke({"dims", "ibukiyama", "--k", "0", "--j", "3", "--prime", "11", "--table", kData + "/siegel_dims.csv"});
  REQUIRE(ibu.code == 0);
  CHECK(ibu.json()["results"]["dimension"] == 1);
  CHECK(ibu.json()["results"]["cokernel_line"].is_null());
  CHECK(invoke({"dims", "ibukiyama", "--k", "0", "--j", "4", "--prime", "11", "--table",
                kData + "/siegel_dims.csv"})
            .code == 1);
  CHECK(invoke({"dims", "yoshida", "--k", "0", "--j", "7", "--prime", "11"}).json()["results"]["yoshida"] == 1);
}

TEST_CASE("usage errors and determinism") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"wd", "check-purity"}).code == 2);
  CHECK(invoke({"wd", "check-purity", kData + "/iia.json", "--bogus"}).code == 2);
  CHECK(invoke({"--format", "xml", "wd", "catalog"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);

  const std::vector<std::string> args{"ledger", "run", kData + "/scenario_theta.json"};
  const auto a = invoke(args), b = invoke(args);
  CHECK(a.out == b.out);
  const auto other = invoke({"ledger", "run", kData + "/scenario_iia.json"});
  CHECK(other.json()["inputs_digest"] != a.json()["inputs_digest"]);
}
