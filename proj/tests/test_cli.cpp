#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "eggshell/error.hpp"

using namespace eggshell;
using nlohmann::json;

namespace {
const char* kDisk = R"({"blocks":[{"p":[1],"a":1}]})";
const char* kEgg31 = R"({"blocks":[{"p":[3,1],"a":1}]})";

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "eggshell");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

cli::RunConfig base(const std::string& command) {
  cli::RunConfig c;
  c.command = command;
  c.workers = 1;
  return c;
}
}  // namespace

TEST_CASE("norm of the constant on the disk") {
  auto c = base("norm");
  c.domain = kDisk;
  c.index = "0";
  const json r = cli::execute(c);
  CHECK(r["result"]["log_norm"].get<double>() == doctest::Approx(std::log(std::numbers::pi)));
  CHECK(r["defaults"]["margin"].get<double>() == 0.15);
  CHECK(r["defaults"]["N_by_dimension"]["2"].get<int>() == 3000);
}

TEST_CASE("module-threshold breakdown") {
  auto c = base("module-threshold");
  c.domain = kEgg31;
  const json r = cli::execute(c)["result"];
  CHECK(r["value"].get<double>() == 3.0);
  CHECK(r["max_over_kinds"].get<double>() == 3.0);
  std::map<std::string, double> terms;
  for (const auto& t : r["breakdown"]) terms[t["label"]] = t["value"];
  CHECK(terms["d"] == 2.0);
  CHECK(terms["p[0][0]*(d-1)"] == 3.0);
  CHECK(terms["p[0][1]*(d-1)"] == 1.0);
}

TEST_CASE("threshold on the disk") {
  auto c = base("threshold");
  c.domain = kDisk;
  c.kind = "self:0:0";
  c.N = 20000;
  const json r = cli::execute(c)["result"];
  CHECK(r["predicted"].get<double>() == 0.5);
  CHECK(std::abs(r["empirical"].get<double>() - 0.5) <= 0.1);
  CHECK(r["probes"][0]["verdict"] == "Diverges");
  CHECK(r["probes"][1]["verdict"] == "Converges");
}

TEST_CASE("replay reproduces every field") {
  auto c = base("shells");
  c.domain = kEgg31;
  c.kind = "within:0:0:1";
  c.p = 2.7;
  c.N = 200;
  const json first = cli::execute(c);
  const json second = cli::execute(cli::config_from_json(first["config"]));
  CHECK(first.dump() == second.dump());

  auto z = base("zeta");
  z.spec = R"({"m":2,"powers":[0,0],"groups":[],"abs":null,"b":3})";
  z.N = 300;
  const json zf = cli::execute(z);
  CHECK(zf["result"]["critical_b"].get<double>() == 2.0);
  CHECK(zf.dump() == cli::execute(cli::config_from_json(zf["config"])).dump());

  auto g = base("verify-gamma");
  const json gf = cli::execute(g);
  CHECK(gf.dump() == cli::execute(cli::config_from_json(gf["config"])).dump());
}

TEST_CASE("verify-gamma documents the printed R3 coefficient") {
  const json r = cli::execute(base("verify-gamma"))["result"];
  bool saw_printed = false;
  for (const auto& row : r["rows"])
    if (row["r3"] == "printed") {
      saw_printed = true;
      CHECK(row["expected_rate"] == false);
    }
  CHECK(saw_printed);
}

TEST_CASE("csv projection") {
  auto c = base("shells");
  c.domain = kDisk;
  c.kind = "self:0:0";
  c.p = 1.0;
  c.N = 20;
  const std::string csv = cli::to_csv(cli::execute(c));
  CHECK(csv.find("n,shell_sum\n0,0.5\n") != std::string::npos);
  CHECK(csv.find("# default.margin=0.15") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"module-threshold", "--domain", kEgg31}) == cli::kOk);
  CHECK(run({"module-threshold", "--domain", "{\"blocks\":[{\"p\":[1]"}) == cli::kUsage);
  CHECK(run({"module-threshold", "--domain", "/nonexistent/domain.json"}) == cli::kUsage);
  CHECK(run({"norm", "--domain", kEgg31, "--index", "1"}) == cli::kUsage);
  CHECK(run({"shells", "--domain", kEgg31, "--kind", "self:0:0", "--p", "2", "--N", "500",
             "--cap", "1000"}) == cli::kResource);
  CHECK(run({"threshold", "--domain", kDisk, "--kind", "self:0:0", "--N", "1000", "--p-lo", "0.8",
             "--p-hi", "1.0"}) == cli::kBracket);
  CHECK(run({"shells", "--domain", kDisk, "--kind", "self:0:0", "--p", "-1"}) == cli::kUsage);
  CHECK(run({"frobnicate"}) == cli::kUsage);
}
