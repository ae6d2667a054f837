#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "pdlab/poly_parse.hpp"
#include "pdlab/powersum.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pdlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("moment") {
  const auto r = run({"moment", "--alpha", "0.5", "--theta", "0.5", "--poly", "phi2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - 1.0 / 3) < 1e-15);
  CHECK(j.contains("method"));
  const auto c = run({"moment", "--alpha", "0", "--theta", "1", "--poly", "3*phi2*phi3 - phi4 + 1"});
  REQUIRE(c.code == 0);
  const double lib = pdlab::pd_expectation(pdlab::PdParams::make(0, 1), pdlab::parse_poly("3*phi2*phi3 - phi4 + 1"));
  CHECK(json::parse(c.out)["value"].get<double>() == lib);
}

TEST_CASE("form and spectrum") {
  const auto f = run({"form", "--alpha", "0.3", "--theta", "1", "--poly", "phi2", "--poly", "phi2"});
  REQUIRE(f.code == 0);
  const auto j = json::parse(f.out);
  CHECK(std::abs(j["value"].get<double>() - j["value_gradient_form"].get<double>()) < 1e-12);

  const auto s = run({"spectrum", "--alpha", "0.3", "--theta", "1", "--max-degree", "6", "--format", "csv"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("-12.5") != std::string::npos);
}

TEST_CASE("verify suites") {
  const auto e = run({"verify", "epsf", "--n", "12", "--alpha", "0.3", "--theta", "0.7"});
  CHECK(e.code == 0);
  CHECK(json::parse(e.out).contains("seed"));
  CHECK(run({"verify", "spectrum", "--theta", "1", "--max-degree", "6"}).code == 0);
  CHECK(run({"verify", "aux-identity", "--alpha", "0.5", "--theta", "0.5", "--n-max", "40"}).code == 0);
  CHECK(run({"verify", "generator"}).code == 0);
  CHECK(run({"verify", "no-such-suite"}).code == 2);
}

TEST_CASE("exit codes and error JSON") {
  const auto neg = run({"simulate", "two-type", "--alpha", "0.1", "--theta", "-0.2", "--p", "0.5"});
  CHECK(neg.code == 2);
  const auto ej = json::parse(neg.err.substr(neg.err.find('{')));
  CHECK(ej["error"]["kind"] == "unsupported");

  CHECK(run({"moment", "--alpha", "0.5", "--theta", "0.5", "--poly", "phi2", "--bogus"}).code == 2);
  CHECK(run({"moment", "--alpha", "1.5", "--theta", "0.5", "--poly", "phi2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);

  const auto bad = run({"moment", "--alpha", "0.5", "--theta", "0.5", "--poly", "phi2 + x7"});
  CHECK(bad.code == 2);
  const auto bj = json::parse(bad.err.substr(bad.err.find('{')));
  CHECK(bj["error"]["kind"] == "parse");
  CHECK(bj["error"]["message"].get<std::string>().find("x7") != std::string::npos);
}

TEST_CASE("seeded commands are reproducible") {
  const std::vector<std::string> args = {"sample", "pd", "--alpha", "0.5", "--theta", "1", "--paths",
                                         "3",      "--truncation", "20", "--seed", "5"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("seed=5") != std::string::npos);
  auto other = args;
  other.back() = "6";
  CHECK(run(other).out != a.out);

  const auto d = run({"simulate", "unlabeled", "--alpha", "0.5", "--theta", "0.5", "--t-end", "0.05", "--paths", "2"});
  REQUIRE(d.code == 0);
  CHECK(d.err.find("seed=") != std::string::npos);
}

TEST_CASE("--out writes a file") {
  const auto path = std::filesystem::temp_directory_path() / "pdlab_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run({"density", "two-type", "--alpha", "0.5", "--theta", "0", "--p", "0.5", "--grid", "9", "--format", "json", "--out",
                      path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  CHECK(!j.empty());
  std::filesystem::remove(path);
}
