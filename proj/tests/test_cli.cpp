#include "catch_amalgamated.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cvrob/cli.hpp"

using namespace cvrob;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json call_json(const std::vector<std::string>& args) {
  const Result r = call(args);
  INFO(r.err);
  REQUIRE(r.code == kExitOk);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("compute reports closed forms", "[cli]") {
  const json f = call_json({"compute", "nonclassicality", "fock:3"});
  const double cf = f["closed_form"].get<double>();
  CHECK_THAT(cf, WithinRel(6.0 * std::exp(3.0) / 27.0, 1e-12));
  CHECK(f["interval"]["lower"].get<double>() <= cf * (1.0 + 1e-12));
  CHECK(f["interval"]["upper"].get<double>() >= cf * (1.0 - 1e-12));
  CHECK(f["resource"] == "nonclassicality");
  CHECK(f["config_digest"].get<std::string>().size() == 16);

  const json c = call_json({"compute", "coherence", "ket:[0.6,0.8]"});
  CHECK_THAT(c["value"].get<double>(), WithinAbs(1.96, 1e-12));

  const json e = call_json({"compute", "entanglement", "schmidt:[0.8,0.6]"});
  CHECK_THAT(e["value"].get<double>(), WithinAbs(1.96, 1e-12));
}

TEST_CASE("compute on a free state", "[cli]") {
  const json j = call_json({"compute", "nonclassicality", "coherent:1.5"});
  const double lo = j["interval"]["lower"].get<double>();
  const double hi = j["interval"]["upper"].get<double>();
  CHECK(lo <= 1.0 + 1e-12);
  CHECK(hi >= 1.0 - 1e-12);
  CHECK(hi - lo <= 1e-6);
}

TEST_CASE("compute with csv output", "[cli]") {
  const Result r = call({"--format", "csv", "compute", "nonclassicality", "squeezed:0.5"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.rfind("resource,state,lower,upper", 0) == 0);
  CHECK(row.rfind("nonclassicality,squeezed:0.5,", 0) == 0);
}

TEST_CASE("scan series", "[cli]") {
  const json cat = call_json({"scan", "cat-bounds", "--parity=-", "--alpha=0.1:2.0:0.05"});
  const auto& rows = cat["rows"];
  REQUIRE(rows.size() == 39);
  bool found = false;
  for (const auto& r : rows) {
    CHECK(r[1].get<double>() <= r[2].get<double>() * (1.0 + 1e-9));
    CHECK(r[1].get<double>() >= 1.0);
    if (std::abs(r[0].get<double>() - 1.0) < 1e-9) {
      found = true;
      CHECK_THAT(r[1].get<double>(), WithinAbs(2.31304, 1e-5));
    }
  }
  CHECK(found);

  const json ng = call_json({"scan", "ng-table", "--nmax=4"});
  REQUIRE(ng["rows"].size() == 4);
  for (const auto& r : ng["rows"]) CHECK(r[1].get<double>() <= r[2].get<double>());

  const json h = call_json({"scan", "hilbert-growth", "--N=25,50,100"});
  REQUIRE(h["rows"].size() == 3);
  double prev = 0.0;
  for (const auto& r : h["rows"]) {
    CHECK(r[1].get<double>() > prev);
    prev = r[1].get<double>();
    CHECK(r[3].get<double>() == 2.0);
  }
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"compute", "nonclassicality"}).code == kExitUsage);
  CHECK(call({"compute", "nonclassicality", "banana:1"}).code == kExitUsage);
  CHECK(call({"compute", "magic", "fock:1"}).code == kExitUsage);
  CHECK(call({"--cutoff", "4", "compute", "nonclassicality", "fock:1"}).code == kExitUsage);
  CHECK(call({"scan", "nothing"}).code == kExitUsage);

  const Result t = call({"--cutoff", "20", "compute", "nonclassicality", "coherent:5"});
  CHECK(t.code == kExitTruncation);
  CHECK(t.err.find("truncation") != std::string::npos);
}

TEST_CASE("verify is deterministic", "[cli]") {
  const Result a = call({"verify", "duality", "--seed=7"});
  const Result b = call({"verify", "duality", "--seed=7"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["passed"] == true);
  CHECK(j["seed"] == 7);
}

TEST_CASE("configuration", "[cli]") {
  RunConfig c;
  const std::string d0 = c.digest();
  CHECK(d0.size() == 16);
  c.merge_json(R"({"cutoff": 80, "tolerances": {"rel_gap": 1e-7}})");
  CHECK(c.cutoff == 80);
  CHECK(c.tolerances.at("rel_gap") == 1e-7);
  CHECK(c.tolerances.at("tail") == 1e-8);
  CHECK(c.digest() != d0);

  RunConfig bad;
  bad.tolerances["tail"] = 0.0;
  CHECK_THROWS(bad.validate());

  const std::string path = "cvrob_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"cutoff": 70})";
  }
  setenv("CVROB_CONFIG", path.c_str(), 1);
  const json j = call_json({"compute", "nonclassicality", "fock:1"});
  unsetenv("CVROB_CONFIG");
  RunConfig expect;
  expect.cutoff = 70;
  CHECK(j["config_digest"] == expect.digest());
  std::remove(path.c_str());
}
