#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aoiq/cli.hpp"
#include "aoiq/config.hpp"
#include "aoiq/sweep.hpp"
#include "doctest.h"

using namespace aoiq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("aoiq-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

const char* kApConfig = R"({
  "distribution": {"kind": "geometric", "y": 0.5, "M": 2},
  "policy": {"kind": "ap"},
  "arrivals": {"q": 1.0},
  "sim": {"slots": 200000, "warmup": 2000, "seed": 9}
})";

const char* kWeibullConfig = R"({
  "distribution": {"kind": "weibull", "alpha": 0.9, "beta": 2.0, "M": 4},
  "policy": {"kind": "pap", "p1": 0.0, "p2": 1.0, "delta": 2},
  "arrivals": {"q": 0.5},
  "optimizer": {"grid_step": 0.25}
})";

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int rc = run_command(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("evaluate prints the frozen values") {
  TempDir dir;
  const auto cfg = dir.file("ap.json", kApConfig);
  std::string out;
  CHECK(run({"evaluate", "--config", cfg}, &out) == 0);
  CHECK(out.find("delta_bar = 2.000000000") != std::string::npos);
  CHECK(out.find("pi = 1.000000000 0.000000000") != std::string::npos);
  CHECK(out.find("gamma=1 m1=2.000000000 m2=6.000000000") != std::string::npos);
}

TEST_CASE("usage and config errors exit with code 1") {
  TempDir dir;
  std::string err;
  CHECK(run({"evaluate", "--config", (dir.path / "absent.json").string()}, nullptr, &err) == 1);
  CHECK(err.find("missing-config") != std::string::npos);

  const auto broken = dir.file("broken.json", "{not json");
  CHECK(run({"evaluate", "--config", broken}, nullptr, &err) == 1);
  CHECK(err.find("malformed-config") != std::string::npos);

  const auto cfg = dir.file("ap.json", kApConfig);
  CHECK(run({"evaluate", "--config", cfg, "--bogus"}, nullptr, &err) == 1);
  CHECK(run({"frobnicate", "--config", cfg}, nullptr, &err) == 1);
}

TEST_CASE("numerical failures exit with code 2") {
  TempDir dir;
  const auto cfg = dir.file("dead.json", R"({
    "distribution": {"kind": "geometric", "y": 0.5, "M": 2},
    "policy": {"kind": "ap"},
    "arrivals": {"q": 0.0}
  })");
  std::string err;
  CHECK(run({"evaluate", "--config", cfg}, nullptr, &err) == 2);
  CHECK(err.find("nonabsorbing") != std::string::npos);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
  TempDir dir;
  const auto cfg = dir.file("ap.json", kApConfig);
  std::string first, second;
  CHECK(run({"simulate", "--config", cfg, "--slots", "100000", "--warmup", "1000", "--seed",
             "42"},
            &first) == 0);
  CHECK(run({"simulate", "--config", cfg, "--slots", "100000", "--warmup", "1000", "--seed",
             "42"},
            &second) == 0);
  CHECK(first == second);
  CHECK(first.find("mean_aoi = ") != std::string::npos);
  CHECK(first.find("ci = [") != std::string::npos);
}

TEST_CASE("every config accepted by evaluate is accepted by simulate and optimize") {
  TempDir dir;
  for (const char* text : {kApConfig, kWeibullConfig}) {
    const auto cfg = dir.file("c.json", text);
    CHECK(run({"evaluate", "--config", cfg}) == 0);
    CHECK(run({"simulate", "--config", cfg, "--slots", "50000", "--warmup", "500"}) == 0);
    CHECK(run({"optimize", "--config", cfg, "--family", "pp"}) == 0);
  }
}

TEST_CASE("optimize echoes family-native parameters") {
  TempDir dir;
  const auto cfg = dir.file("w.json", kWeibullConfig);
  std::string out;
  CHECK(run({"optimize", "--config", cfg, "--family", "pap"}, &out) == 0);
  CHECK(out.find("family = pap") != std::string::npos);
  CHECK(out.find("params = p1=") != std::string::npos);
  CHECK(out.find("evaluated = ") != std::string::npos);
}

TEST_CASE("csv formatting matches the pinned format") {
  std::vector<SweepRow> rows;
  rows.push_back({0.5, "pp", 2.5, {{"p", 1.0}}});
  rows.push_back({0.5, "ap", 3.2, {}});
  const std::string csv = format_sweep_csv(rows);
  CHECK(csv ==
        "param,family,delta_bar,params\n"
        "0.5,ap,3.20000000,\n"
        "0.5,pp,2.50000000,p=1\n");
}

TEST_CASE("csv rows sort by parameter then family") {
  std::vector<SweepRow> rows;
  rows.push_back({0.2, "pp", 2.0, {}});
  rows.push_back({0.1, "pp", 2.0, {}});
  rows.push_back({0.1, "ap", 2.0, {}});
  const std::string csv = format_sweep_csv(rows);
  const auto first = csv.find("0.1,ap");
  const auto second = csv.find("0.1,pp");
  const auto third = csv.find("0.2,pp");
  CHECK(first != std::string::npos);
  CHECK(first < second);
  CHECK(second < third);
}

TEST_CASE("empty sweep results never touch the filesystem") {
  CHECK_THROWS_AS(write_sweep_csv({}, "/nonexistent/dir/out.csv"), ValidationError);
}

TEST_CASE("sweep writes a deterministic csv") {
  TempDir dir;
  const auto cfg = dir.file("w.json", kWeibullConfig);
  const auto out1 = (dir.path / "a.csv").string();
  const auto out2 = (dir.path / "b.csv").string();
  std::string msg;
  CHECK(run({"sweep", "--config", cfg, "--param", "q", "--from", "0.4", "--to", "0.6", "--step",
             "0.2", "--families", "ap,pp", "--out", out1},
            &msg) == 0);
  CHECK(msg.find("4 rows") != std::string::npos);
  CHECK(run({"sweep", "--config", cfg, "--param", "q", "--from", "0.4", "--to", "0.6", "--step",
             "0.2", "--families", "ap,pp", "--out", out2}) == 0);
  std::ifstream a(out1), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("param,family,delta_bar,params\n", 0) == 0);
  // two parameter values times two families
  int lines = 0;
  for (char c : sa.str())
    if (c == '\n') ++lines;
  CHECK(lines == 5);
}

TEST_CASE("sweeping beta requires a weibull distribution") {
  TempDir dir;
  const auto cfg = dir.file("g.json", kApConfig);
  std::string err;
  CHECK(run({"sweep", "--config", cfg, "--param", "beta", "--from", "0.5", "--to", "1.0",
             "--step", "0.5", "--families", "ap", "--out", (dir.path / "x.csv").string()},
            nullptr, &err) == 1);
}
