#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(INVHOM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args, int expect_code = 0) {
  auto r = run(args + " --format json");
  REQUIRE(r.code == expect_code);
  auto doc = Json::parse(r.out);
  CHECK(doc.dump(2) + "\n" == r.out);
  CHECK(doc["schema"] == 1);
  return doc;
}

Json row(const Json& doc, std::size_t degree) {
  for (const auto& r : doc["homology"])
    if (r["degree"] == degree) return r;
  FAIL("missing degree");
  return {};
}

}  // namespace

TEST_CASE("compute rows") {
  auto z3 = run_json("compute --group cyclic:3 --action negation --coeff Z --max-degree 4");
  CHECK(row(z3, 3)["torsion"] == Json::array({3}));
  CHECK(row(z3, 0)["free_rank"] == 1);

  auto z5 = run_json("compute --group cyclic:5 --action trivial --coeff Z --max-degree 2");
  CHECK(row(z5, 1)["torsion"] == Json::array({5}));

  // Degree 3 for Z/4 is (Z/2)^3; the Z/4 summand of the closed form does not appear.
  auto z4 = run_json("compute --group cyclic:4 --action negation --coeff Z --max-degree 4");
  CHECK(row(z4, 3) == Json{{"degree", 3}, {"free_rank", 0}, {"torsion", {2, 2, 2}}});
  CHECK(row(z4, 4)["torsion"] == Json::array({2, 2}));
  for (const auto& c : z4["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("trivial action matches classical homology") {
  for (std::string g : {"cyclic:4", "cyclic:6", "product:cyclic:2,cyclic:2"}) {
    for (std::string coeff : {"Z", "Z/2", "Z/6"}) {
      auto a = run_json("compute --group " + g + " --action trivial --coeff " + coeff + " --max-degree 3");
      auto b = run_json("classical --group " + g + " --coeff " + coeff + " --max-degree 3");
      CAPTURE(g);
      CAPTURE(coeff);
      CHECK(a["homology"] == b["homology"]);
    }
  }
  auto c6 = run_json("classical --group cyclic:6 --coeff Z --max-degree 3");
  CHECK(row(c6, 1)["torsion"] == Json::array({6}));
  CHECK(row(c6, 2)["torsion"] == Json::array());
  CHECK(row(c6, 3)["torsion"] == Json::array({6}));
}

TEST_CASE("maps section") {
  auto doc = run_json("compute --group cyclic:4 --max-degree 3 --maps");
  bool found = false;
  for (const auto& m : doc["maps"]) {
    CHECK(m.contains("matrix"));
    if (m["name"] == "f_*" && m["degree"] == 1) {
      found = true;
      CHECK(m["image_order"] == 2);
    }
    if (m["name"] == "N_*" && m["degree"] > 0) CHECK(m["kernel_order"] == 1);
  }
  CHECK(found);
  CHECK(run_json("compute --group cyclic:4 --max-degree 2")["maps"].empty());
}

TEST_CASE("auxiliary complexes") {
  auto doc = run_json("compute --group cyclic:6 --max-degree 3 --coinvariant --quotient-D --fixed");
  CHECK(doc["coinvariant"].size() == 4);
  // h(D) is the reduced mod-2 homology of the fixed subgroup Z/2; negation fixes H_3 = Z/6.
  for (const auto& r : doc["quotient_D"]) CHECK(r["torsion"] == Json::array({2}));
  CHECK(doc["fixed"][3]["torsion"] == Json::array({6}));
}

TEST_CASE("info") {
  auto doc = run_json("info --group cyclic:8 --action negation --max-degree 5");
  const auto& d5 = doc["degrees"][5];
  CHECK(d5["tuples"] == 32768);
  CHECK(d5["orbits"] == 16400);
  CHECK(run_json("info --group cyclic:2 --action negation")["fixed_subgroup_order"] == 2);
}

TEST_CASE("verify") {
  CHECK(run_json("verify n_odd --n 3 --max-degree 5")["passed"] == true);
  CHECK(run_json("verify structure --group cyclic:4 --action negation --max-degree 4")["passed"] == true);
  auto doc = run_json("verify n_0_mod_4 --s 2 --max-degree 5", 1);
  std::size_t failed = 0;
  for (const auto& c : doc["suites"][0]["claims"]) failed += c["pass"] == false;
  CHECK(failed == 3);
  CHECK(run("verify n_odd n_2k").code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("compute --group cyclic:4").code == 0);
  CHECK(run("compute --group cyclc:4").code == 2);
  CHECK(run("compute --group cyclic:4 --coeff Q").code == 2);
  CHECK(run("compute --group cyclic:4 --action rotate").code == 2);
  CHECK(run("compute").code == 2);
  CHECK(run("verify unknown_suite").code == 2);
  CHECK(run("compute --group cyclic:4 --max-degree 14").code == 3);
  CHECK(run("compute --group cyclic:8 --memory-budget 1MiB").code == 3);
  CHECK(run("compute --group cyclic:4 --coeff Z/4 --maps").code == 2);
}

TEST_CASE("perm action file") {
  auto file = std::filesystem::temp_directory_path() / "invhom_perm_test.json";
  std::ofstream(file) << "[[0, 2, 4, 1, 3]]";
  auto doc = run_json("compute --group cyclic:5 --action perm:" + file.string() + " --max-degree 3");
  // |Q| = 4 is prime to 5, so H_1^Q is the part of H_1 = Z/5 fixed by doubling, which is 0.
  CHECK(row(doc, 1)["torsion"] == Json::array());
  std::filesystem::remove(file);
}

TEST_CASE("output does not depend on threads or the cache") {
  auto dir = std::filesystem::temp_directory_path() / "invhom_cli_cache";
  std::filesystem::remove_all(dir);
  std::string args = "compute --group cyclic:6 --max-degree 3 --maps --format json";
  auto a = run(args + " --threads 1");
  auto b = run(args + " --threads 4");
  auto c = run(args + " --cache-dir " + dir.string());
  auto d = run(args + " --cache-dir " + dir.string());
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(c.out == d.out);
  CHECK(!std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}
