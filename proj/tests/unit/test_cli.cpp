#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "webrank/cli.hpp"
#include "webrank/report.hpp"

using namespace webrank;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(WEBRANK_TEST_DATA) + "/" + name; }

nlohmann::json payload(const Run& r) { return nlohmann::json::parse(r.out).at("payload"); }

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("rank subcommand") {
  auto r = run({"rank", "-i", data("fivweb.json"), "--orders", "8,10", "--json"});
  CHECK(r.code == 0);
  auto p = payload(r);
  CHECK(p["rank"] == 6);
  CHECK(p["is_maximal"] == true);

  auto h = run({"rank", "-i", data("hexagonal.json"), "--json"});
  auto hp = payload(h);
  CHECK(hp["rank"] == 1);
  CHECK(hp["bol_bound"] == 1);
  CHECK(hp["is_maximal"] == true);
  CHECK(h.out.find("\"rank\": 1") != std::string::npos);
}

TEST_CASE("exit codes") {
  auto broken = run({"rank", "-i", data("broken.json")});
  CHECK(broken.code == 1);
  CHECK(broken.err == "not-a-web: foliations 2 and 4 tangent at basepoint\n");

  CHECK(run({"rank", "-i", data("malformed.json")}).code == 1);
  CHECK(run({"rank", "-i", data("missing.json")}).code == 1);
  CHECK(run({"rank"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"rank", "-i", data("fivweb.json"), "--orders", "8"}).code == 1);
  CHECK(run({"rank", "-i", data("fivweb.json"), "--mode", "fuzzy"}).code == 1);
  CHECK(run({"rank", "-i", data("fivweb.json"), "--mode", "float", "--precision", "64"}).code == 1);
  CHECK(run({"spectrum", "-i", data("fivweb.json"), "--auto", "x+"}).code == 1);
  CHECK(run({"dualweb", "--params", "eps=0,0,0", "k=2", "a=4", "b=2", "--lambdas", "1,2"}).code == 1);
  CHECK(run({"--help"}).code == 0);

  auto unstable = run({"rank", "-i", data("unstable.json")});
  CHECK(unstable.code == 2);
  CHECK(unstable.err.rfind("numerical-instability:", 0) == 0);

  auto family = run({"family", "--degree", "5", "--count", "--json"});
  CHECK(family.code == 3);
  CHECK(family.err.rfind("theorem-violation:", 0) == 0);
  auto fp = payload(family);
  CHECK(fp["count"] == 11);
  CHECK(fp["formula_count"] == 10);

  auto trace = run({"trace", "--curve", "y^2*z-x^3-x*z^2+z^3", "--adjoint", "1", "--json"});
  CHECK(trace.code == 0);
  CHECK(payload(trace)["all_vanish"] == true);
}

TEST_CASE("spectrum and theorem1 subcommands") {
  auto s = run({"spectrum", "-i", data("fivweb.json"), "--json"});
  REQUIRE(s.code == 0);
  auto sp = payload(s);
  std::vector<std::string> values;
  for (const auto& e : sp["eigenvalues"]) values.push_back(e["eigenvalue"].get<std::string>());
  CHECK(std::find(values.begin(), values.end(), "1") != values.end());
  CHECK(std::find(values.begin(), values.end(), "2") != values.end());
  auto contract = payload(s)["automorphism_contract"];
  CHECK(contract["canonical_integrals_ok"] == true);
  CHECK(contract["base_relations_ok"] == true);

  auto t = run({"theorem1", "-i", data("hexagonal.json"), "--auto", "1,1", "--json"});
  CHECK(t.code == 0);
  CHECK(payload(t)["delta"] == 2);
  CHECK(payload(t)["with_fx"]["rank"] == 3);
}

TEST_CASE("identical invocations give identical bytes") {
  std::vector<std::string> args{"dualweb", "--params", "eps=0,0,0", "k=2", "a=2", "b=1", "--lambdas", "1,3", "--with-fx", "--json"};
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto p = payload(a);
  CHECK(p["fx_linear"] == false);
  CHECK(p["web_linear"] == nlohmann::json({true, true, true, true}));
  CHECK(p["family"]["seed"] == 1);

  auto other = run({"dualweb", "--params", "eps=0,0,0", "k=2", "a=2", "b=1", "--lambdas", "1,3", "--seed", "9", "--json"});
  CHECK(payload(other)["family"]["seed"] == 9);
}

TEST_CASE("environment defaults and flag precedence") {
  setenv("WEBRANK_SEED", "5", 1);
  setenv("WEBRANK_PRECISION_BITS", "300", 1);
  auto env = run({"trace", "--curve", "y^2*z-x^3-x*z^2+z^3", "--json"});
  auto j = nlohmann::json::parse(env.out);
  CHECK(j["seed"] == 5);
  CHECK(j["mode"]["precision_bits"] == 300);
  auto flag = nlohmann::json::parse(run({"trace", "--curve", "y^2*z-x^3-x*z^2+z^3", "--seed", "6", "--precision", "200", "--json"}).out);
  CHECK(flag["seed"] == 6);
  CHECK(flag["mode"]["precision_bits"] == 200);
  unsetenv("WEBRANK_SEED");
  unsetenv("WEBRANK_PRECISION_BITS");
}

TEST_CASE("output file and envelope round trip") {
  const std::string path = temp_path("webrank_cli_test.json");
  auto r = run({"rank", "-i", data("hexagonal.json"), "-o", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("webrank 0.1.0 rank", 0) == 0);
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  auto env = ReportEnvelope::from_json(j);
  CHECK(env.subcommand == "rank");
  CHECK(env.payload["rank"] == 1);
  CHECK(env.to_json() == j);
  CHECK(ReportEnvelope::from_json(env.to_json()) == env);
  CHECK(emit_report(env, ReportFormat::Json) == emit_report(env, ReportFormat::Json));
  std::filesystem::remove(path);
}

TEST_CASE("family listing") {
  auto r = run({"family", "--degree", "4", "--list", "--json"});
  CHECK(r.code == 0);
  CHECK(payload(r)["families"].size() == 7);
}
