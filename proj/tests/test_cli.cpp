// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dce/cli.hpp"

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace dce;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

  struct Result {
    int status;
    std::string out;
    std::string err;
  };

  Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dce-bands");
    std::vector<const char *> argv;
    for (const auto &a : args)
      argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
  }

  std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  struct TempDir {
    fs::path path;
    TempDir() {
      path = fs::temp_directory_path() / ("dce-cli-" + std::to_string(::getpid()));
      fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &name) const { return (path / name).string(); }
  };

  json summary(const Result &r) {
    REQUIRE(!r.out.empty());
    return json::parse(r.out);
  }

} // namespace

TEST_CASE("spectrum csv for the squid preset", "[cli]") {
  TempDir dir;
  const auto r = invoke({"spectrum", "--preset", "squid", "--order", "3", "-o", dir / "s.csv"});
  REQUIRE(r.status == 0);
  const auto s = summary(r);
  CHECK(s["command"] == "spectrum");
  CHECK(s["params_digest"].get<std::string>().size() == 16);
  const auto text = slurp(dir / "s.csv");
  std::istringstream lines(text);
  std::string header, line, last;
  std::getline(lines, header);
  CHECK(header == "omega,omega_over_omega0,N2_over_tau,N3_over_tau,N4_over_tau,total_over_tau");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 820);
  CHECK(last.find(",2.05,") != std::string::npos);
  for (const auto &e : fs::directory_iterator(dir.path))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("same configuration gives byte-identical csv", "[cli]") {
  TempDir dir;
  REQUIRE(invoke({"spectrum", "--preset", "squid", "-o", dir / "a.csv"}).status == 0);
  REQUIRE(invoke({"spectrum", "--preset", "squid", "-o", dir / "b.csv"}).status == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("rates report", "[cli]") {
  TempDir dir;
  const auto r = invoke({"rates", "--preset", "squid", "--order", "1", "-o", dir / "r.json"});
  REQUIRE(r.status == 0);
  const auto j = json::parse(slurp(dir / "r.json"));
  CHECK(j.contains("ratios"));
  CHECK(j["ratios"]["enhancement"] == 1.0);
  CHECK(j["convention"]["description"].get<std::string>().find("dw") != std::string::npos);
  CHECK(j["total_rate"].get<double>() > 5.8e6);
  CHECK(j["total_rate"].get<double>() < 5.9e6);

  const auto cyc = invoke({"rates", "--preset", "squid", "--measure-divisor", "6.283185307179586", "-o",
                           dir / "c.json"});
  REQUIRE(cyc.status == 0);
  const auto k = json::parse(slurp(dir / "c.json"));
  CHECK(k["total_rate"].get<double>() < 1.1e6);
  CHECK(invoke({"rates", "--preset", "squid", "--format", "csv", "-o", dir / "x"}).status == 1);
}

TEST_CASE("validation failures exit with status 1", "[cli]") {
  TempDir dir;
  CHECK(invoke({"spectrum", "--order", "0", "-o", dir / "x.csv"}).status == 1);
  CHECK(invoke({"spectrum", "--preset", "squid", "--order", "0", "-o", dir / "x.csv"}).status == 1);
  CHECK(invoke({"spectrum", "--preset", "squid", "--epsilon", "1.5", "-o", dir / "x.csv"}).status == 1);
  CHECK(invoke({"spectrum", "--preset", "squid", "--epsilon", "abc", "-o", dir / "x.csv"}).status == 1);
  CHECK(invoke({"spectrum", "--preset", "lab"}).status == 1);
  CHECK(invoke({"--preset", "squid"}).status == 1);
  CHECK(invoke({"spectrum", "--preset", "squid", "--bogus", "1"}).status == 1);
  CHECK(invoke({"spectrum", "--preset", "squid", "-o", dir / "missing/x.csv"}).status == 1);
  const auto r = invoke({"spectrum", "--preset", "squid", "--tau", "1e-9", "-o", dir / "x.csv"});
  CHECK(r.status == 1);
  CHECK(r.err.find("omega0 * tau") != std::string::npos);
  CHECK(!fs::exists(dir / "x.csv"));
}

TEST_CASE("numerical failures exit with status 2", "[cli]") {
  TempDir dir;
  const auto r = invoke({"rates", "--preset", "squid", "--grid-min", "0.9", "--grid-max", "2.05", "--grid-count",
                         "500", "-o", dir / "r.json"});
  CHECK(r.status == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("layering: flags over file over preset", "[cli]") {
  TempDir dir;
  {
    std::ofstream f(dir / "run.conf");
    f << "# squid with a smaller drive\npreset = squid\nepsilon = 0.1\norder = 1\n";
  }
  auto r = invoke({"params-audit", "--config", dir / "run.conf", "-o", dir / "a.json"});
  REQUIRE(r.status == 0);
  auto j = json::parse(slurp(dir / "a.json"));
  CHECK(j["params"]["epsilon"] == 0.1);
  CHECK(j["params"]["order"] == 1);
  CHECK(j["params"]["v"] == 1.2e8);

  r = invoke({"params-audit", "--config", dir / "run.conf", "--epsilon", "0.2", "-o", dir / "b.json"});
  REQUIRE(r.status == 0);
  j = json::parse(slurp(dir / "b.json"));
  CHECK(j["params"]["epsilon"] == 0.2);
  CHECK(j["term_counts"] == json::array({2}));

  {
    std::ofstream f(dir / "bad.conf");
    f << "preset = squid\nomega = 3\n";
  }
  CHECK(invoke({"params-audit", "--config", dir / "bad.conf"}).status == 1);
}

TEST_CASE("json output re-ingested as config reproduces the digest", "[cli]") {
  TempDir dir;
  const auto a = invoke({"spectrum", "--preset", "squid", "--sign", "-", "--epsilon", "0.3", "--format", "json",
                         "-o", dir / "s.json"});
  REQUIRE(a.status == 0);
  const auto b = invoke({"params-audit", "--config", dir / "s.json", "-o", dir / "p.json"});
  REQUIRE(b.status == 0);
  CHECK(summary(a)["params_digest"] == summary(b)["params_digest"]);
  const auto j = json::parse(slurp(dir / "s.json"));
  CHECK(j["normalization_tag"] == kNormalizationTag);
  CHECK(j["params"]["sign"] == "-");
}

TEST_CASE("params audit", "[cli]") {
  TempDir dir;
  const auto r = invoke({"params-audit", "--preset", "squid", "-o", dir / "p.json"});
  REQUIRE(r.status == 0);
  const auto j = json::parse(slurp(dir / "p.json"));
  CHECK(j["term_counts"] == json::array({2, 7, 24}));
  CHECK(std::abs(j["natural"]["gamma0_omega0"].get<double>() - 0.2373) < 1e-4);
  CHECK(j["natural"]["monochromatic"] == true);
}

TEST_CASE("oracle check table", "[cli]") {
  TempDir dir;
  const auto r = invoke({"oracle-check", "--preset", "squid", "--order", "1", "--points", "0.5,0.25", "--omega0-tau",
                         "2000", "-o", dir / "o.json"});
  REQUIRE(r.status == 0);
  const auto j = json::parse(slurp(dir / "o.json"));
  REQUIRE(j["rows"].size() == 2);
  for (const auto &row : j["rows"]) {
    CHECK(row["rel_error"].get<double>() < 0.01);
    CHECK(row.contains("estimate"));
    CHECK(row.contains("mono"));
    CHECK(row.contains("oracle"));
  }
  CHECK(summary(r)["max_rel_error"].get<double>() < 0.01);
}

TEST_CASE("toy command and custom grid", "[cli]") {
  TempDir dir;
  const auto r = invoke({"toy", "--preset", "squid", "--grid-min", "0.5", "--grid-max", "1.5", "--grid-count", "3",
                         "-o", dir / "t.csv"});
  REQUIRE(r.status == 0);
  const auto text = slurp(dir / "t.csv");
  CHECK(text.find("\n1500000") == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.find(",1,0,0,0,0\n") != std::string::npos);
}

TEST_CASE("help and the installed binary", "[cli]") {
  CHECK(invoke({"--help"}).status == 0);
  CHECK(invoke({"--help"}).out.find("spectrum") != std::string::npos);
  if (const char *bin = std::getenv("DCE_CLI_BIN")) {
    const int raw = std::system((std::string(bin) + " spectrum --order 0 >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(raw) == 1);
  }
}
