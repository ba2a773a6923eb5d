#include "doctest.h"

#include "contact9/cli/cli.hpp"
#include "contact9/model/library.hpp"
#include "contact9/model/schema.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace contact9;
using namespace contact9::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "contact9");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json structured(std::vector<std::string> args) {
  args.insert(args.begin(), "--format=structured");
  return json::parse(invoke(std::move(args)).out);
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "contact9_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("decide exit codes") {
  CHECK(invoke({"decide", "library:S9"}).code == kExitOk);
  CHECK(invoke({"decide", "library:S1xCP4"}).code == kExitOk);
  CHECK(invoke({"decide", "library:S1xHP2"}).code == kExitNoContact);
  CHECK(invoke({"decide", "library:Dold_5_2"}).code == kExitNoContact);
  CHECK(invoke({"decide", "library:RP7xS2#S1xCP4#S1xHP2"}).code == kExitOk);
  CHECK(invoke({"decide", "--strict", "library:RP7xS2#S1xCP4#S1xHP2"}).code == kExitUndetermined);
  CHECK(invoke({"--strict", "decide", "library:S9"}).code == kExitOk);
  CHECK(invoke({"decide", "library:S9", "library:S1xHP2"}).code == kExitNoContact);

  const json j = structured({"decide", "library:S1xHP2"});
  CHECK(j["results"][0]["verdict"]["outcome"] == "NoContact");
  CHECK(j["results"][0]["verdict"]["obstruction"] == "W8");
  CHECK(j["exit_code"] == kExitNoContact);
}

TEST_CASE("validation failures and parse errors") {
  model::ManifoldModel m = model::library("S1xCP4");
  auto& c = m.cohomology;
  for (std::size_t b = 0; b < c.dim2(7); ++b) c.cup2_entry(2, 0, 7, b) = F2Vector(c.dim2(9));
  const auto bad = scratch("degenerate.json");
  write(bad, model::emit_model(m));
  CHECK(invoke({"validate", bad.string()}).code == kExitInvalid);
  CHECK(invoke({"decide", bad.string()}).code == kExitInvalid);
  const json v = structured({"validate", bad.string()});
  bool pairing = false;
  for (const auto& x : v["results"][0]["violations"]) pairing = pairing || x["check"] == "poincare_pairing";
  CHECK(pairing);

  const auto broken = scratch("broken.yaml");
  write(broken, "schema_version: 1\nkind: manifold_model\nlabel: x\ndimension: nine\n");
  const Run r = invoke({"decide", broken.string()});
  CHECK(r.code == kExitUsage);
  const json e = structured({"decide", broken.string()})["results"][0]["error"];
  CHECK(e["kind"] == "parse_error");
  CHECK(e["field"] == "dimension");
  CHECK(e["line"] == 4);

  CHECK(invoke({"decide", scratch("missing.json").string()}).code == kExitUsage);
  CHECK(invoke({"decide", "library:Nope"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"decide"}).code == kExitUsage);
  CHECK(invoke({"sum", "library:S9"}).code == kExitUsage);
  CHECK(invoke({"--format", "xml", "decide", "library:S9"}).code == kExitUsage);
  CHECK(invoke({"selftest", "--inject-fault", "other"}).code == kExitUsage);
  const Run r = invoke({"--format=structured", "sum", "library:S9"});
  CHECK(json::parse(r.out)["results"][0]["error"]["kind"] == "usage_error");
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("connected sums through the command line") {
  const json j = structured({"sum", "library:S1xHP2", "library:S1xCP4"});
  CHECK(j["results"][0]["clause"] == "one spin");
  CHECK(j["results"][0]["verdict"]["obstruction"] == "O8");
  CHECK(j["results"][0]["direct"]["obstruction"] == "O8");
  CHECK(invoke({"sum", "library:S9", "library:S1xCP4"}).code == kExitOk);
}

TEST_CASE("corpus table") {
  const json j = structured({"corpus"});
  const std::vector<std::pair<std::string, std::string>> expect = {
      {"S9", "Contact"}, {"S1xHP2", "NoContact"}, {"S1xCP4", "Contact"},
      {"Dold_5_2", "NoContact"}, {"M1_surgered", "NoContact"}, {"M3_sum", "NoContact"}};
  REQUIRE(j["results"].size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(j["results"][i]["label"] == expect[i].first);
    CHECK(j["results"][i]["verdict"]["outcome"] == expect[i].second);
  }
  CHECK(j["exit_code"] == 0);

  const auto dir = scratch("corpus");
  std::filesystem::create_directories(dir);
  write(dir / "a.json", model::emit_model(model::library("M1_surgered")));
  write(dir / "b.json", model::emit_model(model::library("S9")));
  write(dir / "ignored.txt", "not a model");
  const json d = structured({"corpus", "--corpus-dir", dir.string()});
  REQUIRE(d["results"].size() == 2);
  CHECK(d["results"][0]["label"] == "M1_surgered");

  ::setenv(kCorpusDirEnv, dir.string().c_str(), 1);
  const json env = structured({"corpus"});
  ::unsetenv(kCorpusDirEnv);
  CHECK(env["results"].size() == 2);
  CHECK(env["results"][1]["verdict"]["outcome"] == "Contact");
}

TEST_CASE("structured reports are reproducible and round-trip") {
  const std::vector<std::string> args = {"--format=structured", "--seed=7", "corpus", "library:M3_sum", "library:RP9",
                                         "library:S1xCP4"};
  const Run a = invoke(args);
  const Run b = invoke(args);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.dump(2) + "\n" == a.out);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["settings"]["seed"] == 7);
  CHECK(j["tool"]["version"] == version());
  CHECK_FALSE(j.contains("timing"));
  CHECK(j["results"][0]["digest"] == digest(model::emit_model(model::library("M3_sum"))));

  const json t = structured({"--timing", "decide", "library:S9"});
  CHECK(t.contains("timing"));
  CHECK(t["results"][0].contains("elapsed_ms"));
}

TEST_CASE("FNV-1a digests") {
  CHECK(digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest("a") == "fnv1a64:af63dc4c8601ec8c");
  CHECK(digest("foobar") == "fnv1a64:85944171f73967e8");
}

TEST_CASE("class reports") {
  const json j = structured({"classes", "library:S1xHP2"});
  const json& r = j["results"][0];
  CHECK(r["spin"] == true);
  CHECK(r["stiefel_whitney"][8] == json::array({"u^2"}));
  CHECK(r["sigma_w4"] == 1);
  const json m3 = structured({"classes", "library:M3_sum"})["results"][0];
  CHECK(m3["spinc"] == true);
  CHECK(m3["omega_coset"]["representative"] == json::array({"u^2"}));
  CHECK(invoke({"classes", "library:Dold_5_2"}).code == kExitOk);
}

TEST_CASE("selftest and injected faults") {
  const Run ok = invoke({"selftest"});
  CHECK(ok.code == kExitOk);

  const json z = structured({"selftest", "--inject-fault", "zero-sq1"});
  CHECK(z["exit_code"] == kExitInternal);
  bool seen = false;
  for (const auto& s : z["results"]) {
    if (s["name"] != "bockstein") continue;
    seen = true;
    CHECK(s["passed"] == false);
    CHECK(s["counterexample"]["subject"] == "RP2");
    CHECK(s["counterexample"]["degree"] == 1);
  }
  CHECK(seen);

  const json p = structured({"selftest", "--inject-fault=drop-pairing-row"});
  CHECK(p["exit_code"] == kExitInternal);
  for (const auto& s : p["results"]) {
    if (s["name"] == "validate") {
      CHECK(s["passed"] == false);
      CHECK(s["counterexample"]["check"] == "poincare_pairing");
      CHECK(s["counterexample"]["degree"] == 2);
    } else {
      CHECK(s["passed"] == true);
    }
  }
  CHECK(invoke({"decide", "--inject-fault", "zero-sq1", "library:S9"}).code == kExitUsage);
}
