#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "paramod/dimensions.hpp"
#include "paramod/local_reps.hpp"
#include "paramod/picard_lefschetz.hpp"
#include "paramod/ss_locus.hpp"
#include "paramod/wd_core.hpp"

namespace paramod::cli {

using ojson = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

ojson Report::to_json() const {
  ojson j;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  j["results"] = results;
  j["warnings"] = warnings;
  return j;
}

namespace {

std::string scalar_text(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const ojson& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  const bool leafy_array =
      v.is_array() && std::all_of(v.begin(), v.end(), [](const ojson& e) { return !e.is_structured(); });
  if (v.is_object() && !v.empty()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (v.is_array() && !v.empty() && !leafy_array) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (leafy_array) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ", ") + scalar_text(e);
    rows.emplace_back(prefix, s);
  } else {
    rows.emplace_back(prefix, scalar_text(v));
  }
}

}  // namespace

std::string Report::to_table() const {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(results, "", rows);
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "inputs_digest: " << inputs_digest << "\n";
  for (const auto& [k, v] : rows) os << k << ": " << v << "\n";
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

namespace {

class Session {
 public:
  explicit Session(const std::vector<std::string>& args) {
    for (const auto& a : args) digest_input_ += a + '\n';
  }

  nlohmann::json read_json(const std::string& path) {
    const auto text = read_file(path);
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
  }

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    digest_input_ += '\0' + path + '\0' + os.str();
    return os.str();
  }

  dims::DimTable read_table(const std::string& path) {
    std::istringstream in(read_file(path));
    return dims::parse_csv(in);
  }

  std::string digest() const { return sha256_hex(digest_input_); }

 private:
  std::string digest_input_;
};

ojson dims_to_json(const std::map<int, std::size_t>& m) {
  ojson out = ojson::object();
  for (const auto& [w, d] : m) out[std::to_string(w)] = d;
  return out;
}

ojson purity_json(const wd::PurityResult& r) {
  ojson out;
  out["pure"] = r.pure;
  out["filtration_matches_weights"] = r.filtration_matches_weights;
  out["weight_dims"] = dims_to_json(r.weight_dims);
  out["monodromy_graded_dims"] = dims_to_json(r.monodromy_graded_dims);
  ojson cert = ojson::array();
  for (const auto& g : r.certificate) {
    ojson c;
    c["i"] = g.step;
    c["source_weight"] = g.source_weight;
    c["target_weight"] = g.target_weight;
    c["source_dim"] = g.source_dim;
    c["target_dim"] = g.target_dim;
    c["rank"] = g.rank;
    c["isomorphism"] = g.isomorphism;
    cert.push_back(c);
  }
  out["certificate"] = cert;
  return out;
}

ojson fiber_json(const ssl::FiberCount& f) {
  if (f.points) return *f.points;
  return "P1";
}

local::ParamodularLocalRep local_rep_from_options(const std::string& chi, const std::string& sigma,
                                                  std::uint64_t prime, const std::string& type) {
  return local::ParamodularLocalRep(local::parse_type(type), Scalar::parse(chi), Scalar::parse(sigma), prime);
}

bool parse_bool(const std::string& s, const char* name) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw CLI::ValidationError(name, "expected true or false, got '" + s + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paramodular weight-monodromy toolkit", "paramod"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  Session session(args);
  Report report;
  std::optional<std::string> raw_output;
  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::string name, std::function<void()> body) {
    sub->callback([&action, &report, name = std::move(name), body = std::move(body)] {
      report.command = name;
      action = body;
    });
  };

  // wd ----------------------------------------------------------------------
  auto* wd_cmd = app.add_subcommand("wd", "Weil-Deligne representations and purity");
  wd_cmd->require_subcommand(1);
  std::string wd_file;
  int twist_by = 0;
  std::optional<int> center;
  std::string chi = "chi", sigma = "sigma", rep_type = "IIa";
  std::uint64_t wd_prime = 2;

  auto* purity = wd_cmd->add_subcommand("check-purity", "Check weight-monodromy for a representation file");
  purity->add_option("file", wd_file, "Representation JSON")->required();
  bind(purity, "wd check-purity", [&] {
    const auto rep = wd::rep_from_json(session.read_json(wd_file));
    report.results = purity_json(wd::is_pure(rep));
    report.results["n_rank"] = wd::n_rank(rep);
  });

  auto* filt = wd_cmd->add_subcommand("filtration", "Graded dimensions of the monodromy filtration");
  filt->add_option("file", wd_file, "Representation JSON")->required();
  filt->add_option("--center", center, "Centre (default: base weight)");
  bind(filt, "wd filtration", [&] {
    const auto rep = wd::rep_from_json(session.read_json(wd_file));
    const auto f = wd::monodromy_filtration(rep.monodromy(), center.value_or(rep.base_weight()));
    report.results["center"] = f.center();
    report.results["nilpotency_index"] = linalg::nilpotency_index(to_rational(rep.monodromy()));
    report.results["graded_dims"] = dims_to_json(f.graded_dims());
  });

  auto* dual_cmd = wd_cmd->add_subcommand("dual", "Contragredient representation");
  dual_cmd->add_option("file", wd_file, "Representation JSON")->required();
  bind(dual_cmd, "wd dual", [&] {
    report.results = wd::to_json(wd::dual(wd::rep_from_json(session.read_json(wd_file))));
  });

  auto* twist = wd_cmd->add_subcommand("twist", "Tate twist");
  twist->add_option("file", wd_file, "Representation JSON")->required();
  twist->add_option("--by", twist_by, "Twist n in Q_l(n)")->required();
  bind(twist, "wd twist", [&] {
    report.results = wd::to_json(wd::tate_twist(wd::rep_from_json(session.read_json(wd_file)), twist_by));
  });

  auto* catalog = wd_cmd->add_subcommand("catalog", "Ramified K(p)-spherical types");
  bind(catalog, "wd catalog", [&] { report.results["types"] = local::catalog_json(); });

  auto* iia = wd_cmd->add_subcommand("iia", "Weil-Deligne realization of a type IIa representation");
  iia->add_option("--chi", chi, "chi(p): rational or symbol");
  iia->add_option("--sigma", sigma, "sigma(p): rational or symbol");
  iia->add_option("--prime", wd_prime, "Residue characteristic")->required();
  bind(iia, "wd iia", [&] {
    const auto rep = local::wd_of_iia(local_rep_from_options(chi, sigma, wd_prime, "IIa"));
    report.results["representation"] = wd::to_json(rep);
    report.results["n_rank"] = wd::n_rank(rep);
    report.results["pure"] = wd::is_pure(rep).pure;
  });

  auto* al = wd_cmd->add_subcommand("atkin-lehner", "Atkin-Lehner eigenvalue on the paramodular fixed line");
  al->add_option("--chi", chi, "chi(p): rational or symbol");
  al->add_option("--sigma", sigma, "sigma(p): rational or symbol");
  al->add_option("--prime", wd_prime, "Residue characteristic")->required();
  al->add_option("--type", rep_type, "Local type tag");
  bind(al, "wd atkin-lehner", [&] {
    const auto rep = local_rep_from_options(chi, sigma, wd_prime, rep_type);
    const auto lambda = local::atkin_lehner_eigenvalue(rep);
    report.results["atkin_lehner"] = lambda.to_string();
    report.results["atkin_lehner_squared"] = lambda.pow(2).to_string();
    report.results["central_character"] = local::central_character(rep).to_string();
    report.results["frobenius_on_vanishing_cycles"] = local::frobenius_on_vanishing_cycles(rep).to_string();
    report.results["fixed_vector_dimension"] = local::kFixedVectorDimension;
  });

  // tree --------------------------------------------------------------------
  auto* tree_cmd = app.add_subcommand("tree", "Supersingular locus combinatorics");
  tree_cmd->require_subcommand(1);
  std::uint64_t tree_prime = 2;
  std::uint32_t radius = 1;
  std::string root_kind = "first", export_as = "dot";
  bool export_incidence = false;

  auto add_tree_opts = [&](CLI::App* sub) {
    sub->add_option("--prime", tree_prime, "Prime p")->required();
    sub->add_option("--radius", radius, "Ball radius");
    sub->add_option("--root-kind", root_kind, "first or second")->check(CLI::IsMember({"first", "second"}));
  };

  auto* build = tree_cmd->add_subcommand("build", "Build a ball in the biregular tree");
  add_tree_opts(build);
  bind(build, "tree build", [&] {
    const auto t = ssl::build_tree(tree_prime, ssl::parse_kind(root_kind), radius);
    const auto tc = ssl::check_tree(t);
    const auto inc = ssl::incidence_from_tree(t);
    const auto ic = ssl::check_incidence(inc);
    const auto sing = ssl::contract_e(inc);
    auto& r = report.results;
    r["prime"] = tree_prime;
    r["radius"] = radius;
    r["root_kind"] = root_kind;
    r["vertices"] = t.vertices().size();
    r["edges"] = t.edges().size();
    r["bipartite"] = tc.bipartite;
    r["interior_valencies_ok"] = tc.interior_valencies;
    r["components"] = inc.components.size();
    r["superspecial_points"] = inc.superspecial_points.size();
    r["handshake"] = ic.handshake();
    r["incidence_ok"] = ic.ok();
    r["sigma_size"] = sing.sigma_size();
  });

  auto* exp = tree_cmd->add_subcommand("export", "Export a ball as DOT or JSON");
  add_tree_opts(exp);
  exp->add_option("--as", export_as, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  exp->add_flag("--incidence", export_incidence, "Export the component/point incidence instead of the tree");
  bind(exp, "tree export", [&] {
    const auto t = ssl::build_tree(tree_prime, ssl::parse_kind(root_kind), radius);
    if (export_incidence) {
      const auto inc = ssl::incidence_from_tree(t);
      raw_output = export_as == "dot" ? ssl::to_dot(inc) : ssl::to_json(inc).dump(2) + "\n";
    } else {
      raw_output = export_as == "dot" ? ssl::to_dot(t) : ssl::to_json(t).dump(2) + "\n";
    }
  });

  auto* fibers = tree_cmd->add_subcommand("fibers", "Fiber cardinalities of the Hecke correspondences");
  fibers->add_option("--prime", tree_prime, "Prime p")->required();
  bind(fibers, "tree fibers", [&] {
    ojson a, b;
    for (auto s : ssl::kStrataA) a[ssl::to_string(s)] = fiber_json(ssl::fiber_card_a(s, tree_prime));
    for (auto k : ssl::kKernelTypesB) b[ssl::to_string(k)] = fiber_json(ssl::fiber_card_b(k, tree_prime));
    report.results["prime"] = tree_prime;
    report.results["a"] = a;
    report.results["b"] = b;
    report.results["generic_degree_a"] = ssl::generic_degree(ssl::Correspondence::A, tree_prime);
    report.results["generic_degree_b"] = ssl::generic_degree(ssl::Correspondence::B, tree_prime);
  });

  // ledger ------------------------------------------------------------------
  auto* ledger_cmd = app.add_subcommand("ledger", "Picard-Lefschetz ledger");
  ledger_cmd->require_subcommand(1);
  std::string scenario_file;
  std::optional<std::string> localize_id;
  auto* ledger_run = ledger_cmd->add_subcommand("run", "Run a scenario");
  ledger_run->add_option("file", scenario_file, "Scenario JSON")->required();
  ledger_run->add_option("--localize", localize_id, "Restrict to one contribution label");
  bind(ledger_run, "ledger run", [&] {
    auto s = pl::scenario_from_json(session.read_json(scenario_file));
    if (localize_id) s = pl::localize(s, *localize_id);
    auto r = pl::run_ledger(s);
    report.results = std::move(r.results);
    report.warnings = std::move(r.warnings);
  });

  // mazur -------------------------------------------------------------------
  auto* mazur_cmd = app.add_subcommand("mazur", "Mazur's principle verdict");
  int eigenvalues = 4;
  std::string irreducible = "true", unramified = "true", theta_trivial = "true";
  mazur_cmd->add_option("--eigenvalues", eigenvalues, "Distinct Frobenius eigenvalues (1-4)")->required();
  mazur_cmd->add_option("--irreducible", irreducible, "true or false");
  mazur_cmd->add_option("--unramified-mod-ell", unramified, "true or false");
  mazur_cmd->add_option("--component-group-trivial", theta_trivial, "true or false");
  bind(mazur_cmd, "mazur", [&] {
    pl::MazurInput in;
    in.n_distinct_frobenius_eigenvalues = eigenvalues;
    in.irreducible = parse_bool(irreducible, "--irreducible");
    in.unramified_mod_ell = parse_bool(unramified, "--unramified-mod-ell");
    in.component_group_trivial = parse_bool(theta_trivial, "--component-group-trivial");
    const auto v = pl::mazur_check(in);
    report.results["verdict"] = pl::to_string(v.outcome);
    report.results["failed_hypotheses"] = v.failed_hypotheses;
    report.results["reason"] = v.reason;
  });

  // dims --------------------------------------------------------------------
  auto* dims_cmd = app.add_subcommand("dims", "Dimension bookkeeping");
  dims_cmd->require_subcommand(1);
  std::int64_t weight = 2, k = 0, j = 3;
  std::uint64_t dims_prime = 2;
  std::string table_file;
  bool literal_delta = false;

  auto* classical = dims_cmd->add_subcommand("classical", "Elliptic cusp-form dimensions");
  classical->add_option("--weight", weight, "Even weight")->required();
  classical->add_option("--prime", dims_prime, "Level p")->required();
  bind(classical, "dims classical", [&] {
    auto& r = report.results;
    r["weight"] = weight;
    r["prime"] = dims_prime;
    r["level1"] = dims::dim_cusp_level1(weight);
    r["gamma0p"] = dims::dim_cusp_gamma0p(weight, dims_prime);
    r["gamma0p_new"] = dims::dim_cusp_gamma0p_new(weight, dims_prime);
    if (weight == 2) r["genus"] = dims::gamma0_invariants(dims_prime).genus;
  });

  auto add_kj = [&](CLI::App* sub) {
    sub->add_option("--k", k, "k >= 0")->required();
    sub->add_option("--j", j, "j >= 3")->required();
    sub->add_option("--prime", dims_prime, "Prime p")->required();
  };

  auto* ibu = dims_cmd->add_subcommand("ibukiyama", "Dimension of algebraic modular forms");
  add_kj(ibu);
  ibu->add_option("--table", table_file, "Siegel dimension CSV")->required();
  ibu->add_flag("--literal-delta", literal_delta, "Use the constant term delta_{j,0} instead of delta_{j,3}");
  bind(ibu, "dims ibukiyama", [&] {
    const auto table = session.read_table(table_file);
    const auto b = dims::ibukiyama_breakdown(k, j, dims_prime, table, literal_delta);
    auto& r = report.results;
    r["k"] = k;
    r["j"] = j;
    r["prime"] = dims_prime;
    r["yoshida"] = b.yoshida;
    r["siegel_kp"] = b.siegel_kp;
    r["siegel_k1"] = b.siegel_k1;
    r["level1_term"] = b.level1_term;
    r["constant_term"] = b.constant_term;
    r["delta_reading"] = literal_delta ? "delta_{j,0}" : "delta_{j,3}";
    r["dimension"] = b.total;
    r["paramodular_new"] = dims::paramodular_new_dim(k, j, dims_prime, table);
    if (const auto c = dims::cokernel_line(k, j); c > 0) {
      r["cokernel_line"] = c;
      report.warnings.push_back("k=0 with j-3 even: alpha is not surjective; cokernel contributes " +
                                std::to_string(c));
    }
    if (literal_delta) report.warnings.push_back("literal delta_{j,0} never fires for j >= 3");
  });

  auto* yoshida = dims_cmd->add_subcommand("yoshida", "Count of relevant Yoshida lifts");
  add_kj(yoshida);
  bind(yoshida, "dims yoshida", [&] {
    report.results["k"] = k;
    report.results["j"] = j;
    report.results["prime"] = dims_prime;
    report.results["yoshida"] = dims::yoshida_count(k, j, dims_prime);
  });

  auto* ver = dims_cmd->add_subcommand("verify", "Check every identity on every table row");
  ver->add_option("--table", table_file, "Dimension CSV")->required();
  ver->add_flag("--literal-delta", literal_delta, "Use delta_{j,0}");
  bool verify_failed = false;
  bind(ver, "dims verify", [&] {
    const auto table = session.read_table(table_file);
    const auto v = dims::verify(table, literal_delta);
    report.results["rows"] = table.size();
    report.results["checks"] = v.checks;
    report.results["violations"] = v.violations;
    report.results["ok"] = v.ok();
    report.warnings = v.notes;
    verify_failed = !v.ok();
  });

  // -------------------------------------------------------------------------
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }

  try {
    action();
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (raw_output) {
    out << *raw_output;
    return 0;
  }
  report.inputs_digest = session.digest();
  if (format == "table")
    out << report.to_table();
  else
    out << report.to_json().dump(2) << "\n";
  return verify_failed ? 1 : 0;
}

}  // namespace paramod::cli
