#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "fvslab/report.hpp"

using namespace fvslab;

namespace {

struct Run {
  int status = -1;
  std::string out;
  Json json;
};

Run run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " " FVSLAB_CLI " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  if (r.out.starts_with("{")) r.json = Json::parse(r.out);
  return r;
}

std::string data(const std::string& name) { return std::string(FVSLAB_DATA) + "/" + name; }

Rational frac(const Json& j) { return Rational::parse(j.get<std::string>()); }

// Every number in a report is an exact fraction string.
bool fractions_are_strings(const Json& j, const std::string& key = {}) {
  if (j.is_number_float()) return key == "wall_seconds" || key == "p";
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (!fractions_are_strings(v, k)) return false;
    }
  }
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!fractions_are_strings(v, key)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("solve") {
  const Run pd = run("solve fvs primal-dual " + data("butterfly.g") + " --format json");
  CHECK(pd.status == 0);
  CHECK(frac(pd.json["results"]["cost"]) == 1);
  CHECK(frac(pd.json["results"]["dual"]) >= Rational(1, 2));
  CHECK(pd.json["passed"] == true);
  CHECK(fractions_are_strings(pd.json));

  const Run ir = run("solve pfds iter-round " + data("butterfly.g") + " --format json");
  CHECK(ir.status == 0);
  CHECK(frac(ir.json["results"]["cost"]) == 1);

  const Run bf = run("solve fvs brute " + data("k4.g") + " --format json");
  CHECK(frac(bf.json["results"]["cost"]) == 2);

  CHECK(run("solve pfds primal-dual " + data("k4.g")).status == 2);
}

TEST_CASE("lp") {
  const Run wd = run("lp --formulation wd --and cc " + data("k4.g") + " --format json");
  CHECK(wd.status == 0);
  CHECK(frac(wd.json["results"]["value"]) == Rational(4, 3));
  const Run fig = run("lp --formulation orient --and 2pt " + data("fig1_10.g") + " --format json --cut-log");
  CHECK(frac(fig.json["results"]["value"]) <= 5);
  REQUIRE(fig.json["results"]["cut_log"].is_array());
  for (const auto& e : fig.json["results"]["cut_log"]) {
    CHECK(e.contains("iteration"));
    CHECK(e["family"] == "two-pseudotree");
  }
  const Run c3 = run("lp --formulation orient-fvs " + data("c3.g") + " --format json");
  CHECK(frac(c3.json["results"]["value"]) == 1);
  CHECK(run("lp --formulation wd " + data("k4.g"), "FVS_LAB_CAPS=density=3").status == 3);
  CHECK(run("lp --formulation bogus " + data("k4.g")).status == 2);
}

TEST_CASE("scan") {
  const Run b = run("scan orient --graph " + data("butterfly.g") + " --format json");
  CHECK(b.status == 0);
  REQUIRE(b.json["results"]["extreme_points"].size() == 21);
  CHECK(frac(b.json["results"]["extreme_points"][0]["max_x"]) == Rational(1, 3));
  CHECK(b.json["seed"] == 1);

  const Run wd = run("scan wd --all-graphs-n 5 --seed 3 --jobs 2 --format json");
  CHECK(wd.status == 0);
  CHECK(wd.json["results"]["theorem_violations"] == 0);
  CHECK(wd.json["results"]["instances"] == 15);
  CHECK(fractions_are_strings(wd.json));

  const Run sd = run("scan sd --random 5 --n 6 --objectives 2 --format json --fail-on conjecture");
  CHECK(sd.json["results"]["reports"] == 15);
  CHECK(sd.status == (sd.json["results"]["conjecture_findings"] == 0 ? 0 : 1));
}

TEST_CASE("separate") {
  const Run s = run("separate wd-sub --point 7/12,7/12,1/12,0,0 " + data("k5.g") + " --format json");
  CHECK(s.status == 0);
  CHECK(s.json["results"]["member"] == false);
  CHECK(s.json["results"]["cut"]["edges"].size() == 9);
  const Run cc = run("separate cc --point 1,0,0 " + data("c3.g") + " --format json");
  CHECK(cc.json["results"]["member"] == true);
  CHECK(cc.json["results"]["cut"].is_null());
}

TEST_CASE("reference battery and its negative control") {
  const Run clean = run("verify-paper --format json");
  std::vector<std::string> failed;
  for (const auto& a : clean.json["assertions"]) {
    if (a["passed"] == false) failed.push_back(a["name"].get<std::string>());
  }
  // The K5 point violates the full-set weak density row, and the subgraph row
  // evaluates to 31/12 there; both published claims fail exactly.
  CHECK(failed == std::vector<std::string>{"K5 point lies in the wd polyhedron", "K5 separation lhs 46/12"});
  CHECK(clean.status == 1);
  CHECK(run("verify-paper --fail-on none").status == 0);

  const Run bad = run("verify-paper --corrupt --format json");
  CHECK(bad.status == 1);
  int bad_failures = 0;
  for (const auto& a : bad.json["assertions"]) bad_failures += a["passed"] == false ? 1 : 0;
  CHECK(bad_failures > static_cast<int>(failed.size()));
}

TEST_CASE("generate round trip") {
  const Run g = run("generate erdos-renyi --n 7 --p 0.4 --seed 9");
  CHECK(g.status == 0);
  CHECK(g.out.starts_with("7 "));
}
