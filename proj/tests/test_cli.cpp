#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hfree/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hfree::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hfree_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

json load(const fs::path& p) {
  std::ifstream f(p);
  return json::parse(f);
}

}  // namespace

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(call({}).code == 2);
  CHECK(call({"simulate", "--pattern", "K3", "--n", "10", "--bogus"}).code == 2);
  CHECK(call({"simulate", "--pattern", "K3"}).code == 2);
  CHECK(call({"simulate", "--pattern", "Z7", "--n", "10", "--out-dir", dir.string()}).code == 2);
  const Run cap = call({"oracle", "--pattern", "K3", "--n", "9", "--out-dir", dir.string()});
  CHECK(cap.code == 3);
  const json e = json::parse(cap.err);
  CHECK(e["error"]["kind"] == "capability");
  CHECK(call({"bound-calc", "--n", "1000", "--out-dir", dir.string()}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("simulate writes a trace and a summary") {
  const fs::path dir = scratch("simulate");
  const Run r = call({"simulate", "--pattern", "K3", "--n", "32", "--seed", "4", "--verify", "--quiet", "--out-dir",
                      dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const json doc = load(dir / "simulate.json");
  CHECK(doc["schema_version"] == hfree::cli::kSchemaVersion);
  CHECK(doc["command"] == "simulate");
  CHECK(doc["results"]["maximal"] == true);
  CHECK(doc.contains("timing"));
  std::ifstream trace(dir / "simulate_trace.csv");
  std::string header;
  std::getline(trace, header);
  CHECK(header == "rank,u,v,beta,accepted");
  std::size_t rows = 0, accepted = 0;
  for (std::string line; std::getline(trace, line); ++rows) accepted += line.back() == '1';
  CHECK(rows == 32 * 31 / 2);
  CHECK(accepted == doc["results"]["edges"].get<std::size_t>());
}

TEST_CASE("replay reproduces results bit for bit") {
  const fs::path dir = scratch("replay");
  const fs::path again = dir / "again";
  REQUIRE(call({"sweep", "--pattern", "C4", "--n", "16,24,32", "--reps", "8", "--seed", "21", "--quiet", "--out-dir",
                dir.string(), "--workers", "3"})
              .code == 0);
  REQUIRE(call({"replay", (dir / "sweep.json").string(), "--out-dir", again.string(), "--quiet"}).code == 0);
  const json a = load(dir / "sweep.json"), b = load(again / "sweep.json");
  CHECK(a["results"].dump() == b["results"].dump());
  CHECK(a["seeds"].dump() == b["seeds"].dump());

  REQUIRE(call({"survival", "--n", "64", "--reps", "20", "--x", "2,4", "--quiet", "--out-dir", dir.string()}).code == 0);
  REQUIRE(call({"replay", (dir / "survival.json").string(), "--out-dir", again.string(), "--quiet"}).code == 0);
  CHECK(load(dir / "survival.json")["results"].dump() == load(again / "survival.json")["results"].dump());
}

TEST_CASE("other subcommands produce artifacts") {
  const fs::path dir = scratch("misc");
  const std::string d = dir.string();
  CHECK(call({"oracle", "--pattern", "K3", "--n", "4", "--quiet", "--out-dir", d}).code == 0);
  CHECK(load(dir / "oracle.json")["results"]["expectation"]["exact"] == "56/15");
  CHECK(call({"oracle", "--mode", "extremal", "--pattern", "C4", "--n", "6", "--quiet", "--out-dir", d}).code == 0);
  CHECK(load(dir / "oracle.json")["results"]["ex"] == 7);
  CHECK(call({"pattern-check", "--pattern", "paw", "--quiet", "--out-dir", d}).code == 0);
  CHECK(load(dir / "pattern-check.json")["results"]["is_strictly_two_balanced"] == false);
  CHECK(call({"bound-calc", "--n", "1e9", "--c", "5", "--k", "12", "--depth", "5", "--quiet", "--out-dir", d}).code == 0);
  CHECK(load(dir / "bound-calc.json")["results"]["terms"].size() == 2);
  CHECK(call({"trimmed", "--n", "128", "--c", "2", "--reps", "3", "--quiet", "--out-dir", d}).code == 0);
  CHECK(call({"tree-audit", "--n", "30", "--rho", "0.3", "--c", "1", "--depth", "3", "--quiet", "--out-dir", d})
            .code == 0);
  const json audit = load(dir / "tree-audit.json")["results"];
  CHECK(audit.contains("E1"));
  CHECK(audit.contains("E3"));
  CHECK(audit["tree"].contains("P3"));
  CHECK(call({"survival", "--mode", "soundness", "--n", "30", "--rho", "0.3", "--c", "1", "--depth", "3", "--reps",
              "20", "--quiet", "--out-dir", d})
            .code == 0);
  CHECK(load(dir / "survival.json")["results"]["root_violations"] == 0);
}
