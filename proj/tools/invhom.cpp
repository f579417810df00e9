#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "invhom/chains.hpp"
#include "invhom/groups.hpp"
#include "invhom/homology.hpp"
#include "invhom/parallel.hpp"
#include "invhom/theorems.hpp"

using namespace invhom;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParseError = 2;
constexpr int kBudget = 3;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "table";
  unsigned threads = 0;
  std::size_t memory_budget = std::size_t{2} << 30;
  std::string cache_dir;
};

struct JobSpec {
  std::string group;
  std::string action = "negation";
  std::string coeff = "Z";
  std::size_t max_degree = 4;
  bool coinvariant = false;
  bool quotient_d = false;
  bool fixed = false;
  bool maps = false;
};

BuildOptions build_options(const Common& c) {
  BuildOptions b;
  b.memory_budget = c.memory_budget;
  b.threads = c.threads;
  return b;
}

Integer parse_coeff(const std::string& s) {
  if (s == "Z") return 0;
  if (s.rfind("Z/", 0) == 0 && s.size() > 2 &&
      s.find_first_not_of("0123456789", 2) == std::string::npos) {
    Integer m(s.substr(2));
    if (m >= 2) return m;
  }
  throw ParseError("coefficients must be Z or Z/m with m >= 2: " + s);
}

FiniteGroup group_of(const std::string& spec) {
  try {
    return parse_group_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

GroupAction action_of(const std::string& spec, const FiniteGroup& g) {
  try {
    return parse_action_spec(spec, g);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Json integer_json(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

Integer integer_from(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(std::to_string(j.get<long long>()));
}

Json group_json(const FgAbelianGroup& g) {
  Json t = Json::array();
  for (const auto& x : g.torsion) t.push_back(integer_json(x));
  return Json{{"free_rank", g.free_rank}, {"torsion", t}};
}

FgAbelianGroup group_from(const Json& j) {
  IntVector t;
  for (const auto& x : j.at("torsion")) t.push_back(integer_from(x));
  return FgAbelianGroup::from_invariants(j.at("free_rank").get<std::size_t>(), t);
}

Json order_json(const FgAbelianGroup& g) {
  if (!g.is_finite()) return "infinite";
  return integer_json(g.order());
}

Json rows_json(const std::vector<FgAbelianGroup>& groups, std::size_t first = 0) {
  Json rows = Json::array();
  for (std::size_t n = first; n < groups.size(); ++n) {
    Json g = group_json(groups[n]);
    rows.push_back(Json{{"degree", n}, {"free_rank", g["free_rank"]}, {"torsion", g["torsion"]}});
  }
  return rows;
}

Json map_json(const std::string& name, std::size_t degree, const AbelianHom& f) {
  Json matrix = Json::array();
  for (const auto& row : f.matrix) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(integer_json(x));
    matrix.push_back(r);
  }
  auto ker = kernel_of_hom(f);
  auto im = image_of_hom(f);
  return Json{{"name", name},           {"degree", degree},
              {"source", group_json(f.source)}, {"target", group_json(f.target)},
              {"matrix", matrix},       {"kernel_order", order_json(ker)},
              {"image_order", order_json(im)}};
}

Json checks_json(const std::vector<CheckResult>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"pass", c.pass}});
  return out;
}

void require_budget(std::size_t order, std::size_t top, const BuildOptions& b) {
  if (!fits_budget(order, top, b))
    throw BudgetExceeded("complexes through degree " + std::to_string(top) + " for a group of order " +
                         std::to_string(order) + " exceed the memory budget");
}

bool maps_supported(const Integer& m) {
  if (m == 0) return true;
  return mpz_probab_prime_p(m.get_mpz_t(), 25) > 0;
}

std::vector<CheckResult> inline_checks(const HomologyProfile& h, const Integer& m) {
  if (m != 0) return {};
  return engine_cross_checks(h, {2, 3, 5});
}

Json cmd_compute(const JobSpec& s, const Common& c) {
  auto g = group_of(s.group);
  auto a = action_of(s.action, g);
  Integer m = parse_coeff(s.coeff);
  auto b = build_options(c);
  const std::size_t top = s.max_degree;
  require_budget(g.order, top + 1, b);

  auto inv = invariant_complex(a, top + 1, b);
  auto h_inv = homology(inv, m, top);
  auto checks = inline_checks(h_inv, m);

  Json doc{{"schema", 1},       {"command", "compute"}, {"group", s.group},
           {"action", s.action}, {"coefficients", h_inv.coefficients_name()},
           {"max_degree", top}};
  doc["homology"] = rows_json(h_inv.groups);

  bool extras = maps_supported(m);
  std::optional<HomologyProfile> h_coinv, h_bar;
  ComplexPtr coinv, bar;
  if (s.coinvariant || s.maps) {
    coinv = coinvariant_complex(a, top + 1, b);
    h_coinv = homology(coinv, m, top);
    doc["coinvariant"] = rows_json(h_coinv->groups);
    for (auto& r : inline_checks(*h_coinv, m)) checks.push_back(r);
  }
  if (s.quotient_d) {
    auto d = quotient_complex_D(a, *inv);
    auto h_d = homology(d, 0, top);
    doc["quotient_D"] = rows_json(h_d.groups, 1);
  }
  if ((s.fixed || s.maps) && extras) {
    bar = bar_complex(g, top + 1, b);
    h_bar = homology(bar, m, top);
  }
  if (s.fixed) {
    if (!extras) throw ParseError("fixed homology needs Z or prime coefficients");
    std::vector<FgAbelianGroup> fixed;
    for (std::size_t n = 0; n <= top; ++n) fixed.push_back(fixed_homology(a, *h_bar, n));
    doc["fixed"] = rows_json(fixed);
  }

  Json maps = Json::array();
  if (s.maps) {
    if (!extras) throw ParseError("maps need Z or prime coefficients");
    auto gq = fixed_subgroup(a).group;
    auto bar_fixed = bar_complex(gq, top + 1, b);
    auto h_fixed = homology(bar_fixed, m, top);
    auto f = fixed_inclusion_chain_map(a, bar_fixed, inv);
    auto i = invariant_inclusion_chain_map(a, inv, bar);
    auto nm = norm_chain_map(a, coinv, inv);
    for (std::size_t n = 0; n <= top; ++n) {
      maps.push_back(map_json("f_*", n, induced_map(f, h_fixed, h_inv, n)));
      maps.push_back(map_json("i_*", n, induced_map(i, h_inv, *h_bar, n)));
      maps.push_back(map_json("N_*", n, induced_map(nm, *h_coinv, h_inv, n)));
    }
  }
  doc["maps"] = maps;
  doc["checks"] = checks_json(checks);
  return doc;
}

Json cmd_classical(const JobSpec& s, const Common& c) {
  auto g = group_of(s.group);
  Integer m = parse_coeff(s.coeff);
  auto b = build_options(c);
  require_budget(g.order, s.max_degree + 1, b);
  auto h = homology(bar_complex(g, s.max_degree + 1, b), m, s.max_degree);
  Json doc{{"schema", 1},       {"command", "classical"}, {"group", s.group},
           {"coefficients", h.coefficients_name()}, {"max_degree", s.max_degree}};
  doc["homology"] = rows_json(h.groups);
  doc["checks"] = checks_json(inline_checks(h, m));
  return doc;
}

Json cmd_info(const JobSpec& s, const Common& c) {
  auto g = group_of(s.group);
  auto a = action_of(s.action, g);
  auto b = build_options(c);
  auto gq = fixed_subgroup(a);
  Json doc{{"schema", 1},         {"command", "info"},    {"group", s.group},
           {"action", s.action},  {"group_order", g.order}, {"q_order", a.q.order},
           {"fixed_subgroup_order", gq.order()}, {"max_degree", s.max_degree}};
  Json degrees = Json::array();
  std::vector<double> dims;
  Integer prev_orbits = 0;
  for (std::size_t n = 0; n <= s.max_degree + 1; ++n) {
    Integer tuples = 1;
    for (std::size_t k = 0; k < n; ++k) tuples *= static_cast<unsigned long>(g.order);
    Integer orbits = orbit_count(a, n);
    dims.push_back(tuples.get_d());
    Json row{{"degree", n}, {"tuples", integer_json(tuples)}, {"orbits", integer_json(orbits)}};
    if (n > 0) row["boundary_shape"] = Json::array({integer_json(prev_orbits), integer_json(orbits)});
    degrees.push_back(row);
    prev_orbits = orbits;
  }
  doc["degrees"] = degrees;
  double bytes = estimate_bytes(dims, static_cast<double>(s.max_degree + 2));
  doc["estimated_bytes"] = static_cast<long long>(bytes);
  doc["fits_budget"] = fits_budget(g.order, s.max_degree + 1, b);
  return doc;
}

// Rendering from the JSON document keeps the table and cached output consistent.

std::string group_text(const Json& row) { return group_from(row).to_string(); }

void render_rows(std::ostream& os, const std::string& title, const Json& rows) {
  os << title << "\n";
  for (const auto& r : rows)
    os << "  " << std::setw(3) << r.at("degree").get<std::size_t>() << "  " << group_text(r) << "\n";
}

std::string order_text(const Json& j) {
  return j.is_string() ? j.get<std::string>() : std::to_string(j.get<long long>());
}

void render_table(std::ostream& os, const Json& doc) {
  const std::string cmd = doc.at("command");
  if (cmd == "info") {
    os << "G = " << doc["group"].get<std::string>() << " (order " << doc["group_order"].get<std::size_t>()
       << "), Q of order " << doc["q_order"].get<std::size_t>() << ", fixed subgroup order "
       << doc["fixed_subgroup_order"].get<std::size_t>() << "\n";
    os << "  degree  tuples  orbits  boundary\n";
    for (const auto& r : doc["degrees"]) {
      os << "  " << std::setw(6) << r["degree"].get<std::size_t>() << "  " << order_text(r["tuples"])
         << "  " << order_text(r["orbits"]);
      if (r.contains("boundary_shape"))
        os << "  " << order_text(r["boundary_shape"][0]) << " x " << order_text(r["boundary_shape"][1]);
      os << "\n";
    }
    os << "estimated bytes " << doc["estimated_bytes"].get<long long>()
       << (doc["fits_budget"].get<bool>() ? " (within budget)" : " (over budget)") << "\n";
    return;
  }
  if (cmd == "verify") {
    for (const auto& s : doc["suites"]) {
      os << "suite " << s["suite"].get<std::string>() << "\n";
      for (const auto& c : s["claims"]) {
        os << "  " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["statement"].get<std::string>()
           << "  [" << c["basis"].get<std::string>() << "] computed " << c["computed"].get<std::string>();
        if (!c["pass"].get<bool>()) os << ", expected " << c["expected"].get<std::string>();
        os << "\n";
      }
      for (const auto& n : s["not_computed"]) os << "  SKIP  " << n.get<std::string>() << "\n";
    }
    os << (doc["passed"].get<bool>() ? "all claims pass" : "some claims fail") << "\n";
    return;
  }
  const std::string coeffs = doc["coefficients"];
  if (cmd == "classical") {
    render_rows(os, "H_n(" + doc["group"].get<std::string>() + "; " + coeffs + ")", doc["homology"]);
  } else {
    std::string where = doc["group"].get<std::string>() + " under " + doc["action"].get<std::string>();
    render_rows(os, "invariant homology of " + where + ", coefficients " + coeffs, doc["homology"]);
    if (doc.contains("coinvariant"))
      render_rows(os, "quotient BG/Q, coefficients " + coeffs, doc["coinvariant"]);
    if (doc.contains("quotient_D")) render_rows(os, "h_n(D)", doc["quotient_D"]);
    if (doc.contains("fixed")) render_rows(os, "fixed part of H_n(G; " + coeffs + ")", doc["fixed"]);
    for (const auto& mp : doc["maps"]) {
      os << mp["name"].get<std::string>() << " in degree " << mp["degree"].get<std::size_t>() << ": "
         << group_from(mp["source"]).to_string() << " -> " << group_from(mp["target"]).to_string()
         << ", kernel order " << order_text(mp["kernel_order"]) << ", image order "
         << order_text(mp["image_order"]) << "\n";
    }
  }
  for (const auto& ch : doc["checks"])
    if (!ch["pass"].get<bool>()) os << "check failed: " << ch["name"].get<std::string>() << "\n";
}

Json cmd_verify(const std::vector<std::string>& suites, const std::map<std::string, std::string>& params,
                std::size_t max_degree, const Common& c, bool& passed) {
  SuiteOptions opt;
  opt.max_degree = max_degree;
  opt.build = build_options(c);
  auto known = suite_names();
  for (const auto& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw ParseError("unknown suite: " + s);
  Json out = Json::array();
  passed = true;
  for (const auto& name : suites) {
    VerificationReport r;
    try {
      r = run_suite(name, params, opt);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    passed = passed && r.passed();
    Json claims = Json::array();
    for (const auto& cl : r.claims)
      claims.push_back(Json{{"statement", cl.statement}, {"expected", cl.expected}, {"computed", cl.computed},
                            {"pass", cl.pass}, {"basis", cl.basis}});
    out.push_back(Json{{"suite", name}, {"passed", r.passed()}, {"claims", claims},
                       {"not_computed", r.not_computed}});
  }
  return Json{{"schema", 1}, {"command", "verify"}, {"suites", out}, {"passed", passed}};
}

std::string cache_key(const std::string& cmd, const JobSpec& s) {
  std::string key = cmd + "_" + s.group + "_" + s.action + "_" + s.coeff + "_" + std::to_string(s.max_degree) +
                    "_" + std::to_string(s.coinvariant) + std::to_string(s.quotient_d) +
                    std::to_string(s.fixed) + std::to_string(s.maps);
  for (auto& ch : key)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') ch = '-';
  return key + ".json";
}

// Cached documents are keyed by the request; perm actions read a file and are not cached.
Json cached(const std::string& cmd, const JobSpec& s, const Common& c, Json (*run)(const JobSpec&, const Common&)) {
  if (c.cache_dir.empty() || s.action.rfind("perm:", 0) == 0) return run(s, c);
  namespace fs = std::filesystem;
  fs::path file = fs::path(c.cache_dir) / cache_key(cmd, s);
  if (std::ifstream in{file}) {
    try {
      return Json::parse(in);
    } catch (const Json::parse_error&) {
    }
  }
  Json doc = run(s, c);
  std::error_code ec;
  fs::create_directories(c.cache_dir, ec);
  if (!ec) {
    fs::path tmp = file;
    tmp += ".tmp";
    std::ofstream(tmp) << doc.dump(2) << "\n";
    fs::rename(tmp, file, ec);
  }
  return doc;
}

void emit(const Json& doc, const Common& c) {
  if (c.format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    render_table(std::cout, doc);
}

int checks_status(const Json& doc) {
  if (!doc.contains("checks")) return kOk;
  for (const auto& ch : doc["checks"])
    if (!ch["pass"].get<bool>()) return kFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant group homology: computation and verification"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("INVHOM_CACHE_DIR")) common.cache_dir = env;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--threads", common.threads, "worker cap (0: all cores)");
    sub->add_option("--memory-budget", common.memory_budget, "budget in bytes, e.g. 512MiB")
        ->transform(CLI::AsSizeValue(false));
    sub->add_option("--cache-dir", common.cache_dir, "cache directory (default $INVHOM_CACHE_DIR)");
  };

  JobSpec spec;
  auto add_spec = [&](CLI::App* sub, bool with_action, bool with_coeff) {
    sub->add_option("--group", spec.group, "cyclic:N | product:<spec>,<spec>")->required();
    if (with_action) sub->add_option("--action", spec.action, "negation | trivial | perm:<file>");
    if (with_coeff) sub->add_option("--coeff", spec.coeff, "Z or Z/m");
    sub->add_option("--max-degree", spec.max_degree, "highest degree reported");
    add_common(sub);
  };

  auto* compute = app.add_subcommand("compute", "invariant homology H^Q(G; A)");
  add_spec(compute, true, true);
  compute->add_flag("--coinvariant", spec.coinvariant, "also H(BG/Q)");
  compute->add_flag("--quotient-D", spec.quotient_d, "also h(D), Q of prime order");
  compute->add_flag("--fixed", spec.fixed, "also the fixed part of H(G; A)");
  compute->add_flag("--maps", spec.maps, "also f_*, i_*, N_*");

  auto* classical = app.add_subcommand("classical", "ordinary homology H(G; A) of the bar complex");
  add_spec(classical, false, true);

  auto* info = app.add_subcommand("info", "sizes without building matrices");
  add_spec(info, true, false);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  std::map<std::string, std::string> params;
  std::size_t verify_degree = 4;
  verify->add_option("suites", suites, "suite names")->required();
  verify->add_option("--max-degree", verify_degree, "highest degree checked");
  for (const char* key : {"n", "k", "s", "M", "group", "action", "subgroup", "samples"}) {
    verify->add_option_function<std::string>(std::string("--") + key,
                                             [&params, key](const std::string& v) { params[key] = v; });
  }
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  if (common.threads > 0) set_thread_limit(common.threads);
  try {
    if (*verify) {
      bool passed = false;
      Json doc = cmd_verify(suites, params, verify_degree, common, passed);
      emit(doc, common);
      return passed ? kOk : kFailed;
    }
    Json doc;
    if (*compute)
      doc = cached("compute", spec, common, cmd_compute);
    else if (*classical)
      doc = cached("classical", spec, common, cmd_classical);
    else
      doc = cmd_info(spec, common);
    emit(doc, common);
    return checks_status(doc);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
