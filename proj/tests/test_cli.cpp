#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("DPSQFT_CLI");
  REQUIRE_MESSAGE(p != nullptr,
                  "DPSQFT_CLI must point at the dps-qft binary (set by ctest)");
  return p;
}

int run(const std::string& args) {
  std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fresh_dir() {
  std::string tmpl = "/tmp/dpsqft-cli-XXXXXX";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s", tmpl.c_str());
  REQUIRE(mkdtemp(buf) != nullptr);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "expected file: ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_config(const std::string& dir, const std::string& body) {
  std::string path = dir + "/config.json";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("basis suite: exit 0, well-formed report") {
  std::string dir = fresh_dir();
  CHECK(run("basis --out " + dir) == 0);
  json rep = json::parse(slurp(dir + "/report.json"));
  CHECK(rep.at("version") == "1.0.0");
  CHECK(rep.at("suite") == "basis");
  CHECK(rep.at("summary").at("failed") == 0);
  CHECK(rep.at("summary").at("checks").get<size_t>() == rep.at("checks").size());
  size_t passed = 0;
  for (const auto& c : rep.at("checks")) {
    CHECK(c.contains("id"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("tolerance"));
    if (c.at("pass").get<bool>()) ++passed;
  }
  CHECK(rep.at("summary").at("passed").get<size_t>() == passed);
  CHECK(!rep.contains("timestamp"));
}

TEST_CASE("reports are byte-identical across runs (no clocks, fixed seed)") {
  std::string d1 = fresh_dir(), d2 = fresh_dir();
  CHECK(run("basis --out " + d1) == 0);
  CHECK(run("basis --out " + d2) == 0);
  CHECK(slurp(d1 + "/report.json") == slurp(d2 + "/report.json"));
}

TEST_CASE("seed override is echoed and keeps the run reproducible") {
  std::string d1 = fresh_dir(), d2 = fresh_dir();
  CHECK(run("lattice --seed 99 --out " + d1) == 0);
  CHECK(run("lattice --seed 99 --out " + d2) == 0);
  json rep = json::parse(slurp(d1 + "/report.json"));
  CHECK(rep.at("config").at("seed").get<uint64_t>() == 99);
  CHECK(slurp(d1 + "/report.json") == slurp(d2 + "/report.json"));
}

TEST_CASE("usage errors exit 2") {
  std::string dir = fresh_dir();
  CHECK(run("qcd --out " + dir) == 2);                       // unknown suite
  CHECK(run("--out " + dir) == 2);                           // missing positional
  CHECK(run("basis --config /nonexistent.json") == 2);       // unreadable config
  CHECK(run("basis --bogus-flag") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("configuration validation failures exit 2 without writing a report") {
  std::string dir = fresh_dir();

  auto expect_reject = [&](const std::string& body, const std::string& suite) {
    std::string cfg = write_config(fresh_dir(), body);
    CHECK(run(suite + " --config " + cfg + " --out " + dir) == 2);
  };

  expect_reject("{ not json", "basis");
  expect_reject("{\"unknown_key\": 1}", "basis");
  expect_reject("{\"tolerances\": {\"xi-gram-order32\": -1.0}}", "basis");
  expect_reject("{\"grid\": [0, 2, 2]}", "basis");
  expect_reject("{\"mu\": 0.0}", "observables");            // massive suite needs mu > 0
  expect_reject("{\"mu\": 0.0, \"quad_order\": 21}", "greens");  // odd order at mu = 0
  expect_reject("{\"quad_order\": 19}", "greens");          // too coarse for propagators
  CHECK(!std::ifstream(dir + "/report.json").good());
}

TEST_CASE("modes suite emits the dispersion table and the gamma-matrix dump") {
  std::string dir = fresh_dir();
  std::string cfg = write_config(fresh_dir(), "{\"grid\": [2, 2, 2]}");
  CHECK(run("modes --config " + cfg + " --out " + dir) == 0);

  std::string csv = slurp(dir + "/dispersion.csv");
  CHECK(csv.rfind("k1,k2,k3,omega,nu,E", 0) == 0);

  json gamma = json::parse(slurp(dir + "/gamma.json"));
  CHECK(gamma.at("signature") == "(+,+,+,-)");
  CHECK(gamma.at("temporal_index") == 4);
  CHECK(gamma.at("gamma").size() == 4);
}

TEST_CASE("greens suite emits the propagator table") {
  std::string dir = fresh_dir();
  std::string cfg = write_config(fresh_dir(), "{\"quad_order\": 20}");
  CHECK(run("greens --config " + cfg + " --out " + dir) == 0);
  std::string csv = slurp(dir + "/greens.csv");
  CHECK(csv.rfind("n1,n2,n3,nhat1,nhat2,nhat3,t,that,mu,kind,re,im,quad_order", 0) == 0);
}

TEST_CASE("observables suite emits the convergence table and passes on a small grid") {
  std::string dir = fresh_dir();
  std::string cfg = write_config(fresh_dir(), "{\"grid\": [2, 2, 2], \"n_box\": 2}");
  CHECK(run("observables --config " + cfg + " --out " + dir) == 0);
  std::string csv = slurp(dir + "/convergence.csv");
  CHECK(csv.rfind("species,quantity,n_box,lattice_value,mode_sum_value,abs_err,rel_err", 0) ==
        0);
  json rep = json::parse(slurp(dir + "/report.json"));
  CHECK(rep.at("summary").at("failed") == 0);
}

TEST_CASE("the all suite aggregates every family and emits every side table") {
  std::string dir = fresh_dir();
  std::string cfg = write_config(
      fresh_dir(),
      "{\"grid\": [2, 2, 2], \"n_box\": 4, \"quad_order\": 20, \"cutoff\": 2}");
  CHECK(run("all --config " + cfg + " --out " + dir) == 0);
  json rep = json::parse(slurp(dir + "/report.json"));
  CHECK(rep.at("suite") == "all");
  CHECK(rep.at("summary").at("failed") == 0);
  for (const char* f : {"dispersion.csv", "gamma.json", "greens.csv", "convergence.csv"})
    CHECK(std::ifstream(dir + "/" + f).good());
}
