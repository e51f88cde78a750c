#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kpnlab/cli.hpp"

using namespace kpnlab;
using nlohmann::json;

namespace {

struct Result {
  int code;
  json report;
  std::string err;
};

Result invoke(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json rep;
  if (!out.str().empty() && out.str()[0] == '{')
    rep = json::parse(out.str());
  return {code, rep, err.str()};
}

std::filesystem::path scratch_dir(const std::string& name)
{
  auto d = std::filesystem::temp_directory_path() / ("kpnlab-test-" + name);
  std::filesystem::remove_all(d);
  return d;
}

} // namespace

TEST_CASE("report schema")
{
  Result r = invoke({"lemma", "skr", "--k", "2", "--r", "6"});
  CHECK(r.code == 0);
  for (const char* key : {"version", "bank_checksum", "command", "params", "payload", "witnesses", "duration_ms", "jobs"})
    CHECK(r.report.contains(key));
  CHECK(r.report["payload"]["value"] == 120);
  CHECK(r.report["command"] == "lemma skr");
}

TEST_CASE("documented invocations")
{
  Result c = invoke({"classify", "--p", "5", "--ext", "2", "--k", "2"});
  CHECK(c.code == 0);
  CHECK(c.report["payload"]["exponents"] == json::array({3, 15}));

  Result t = invoke({"test", "--p", "5", "--ext", "4", "--k", "2", "--n", "7", "--verify-witness"});
  CHECK(t.code == 1);
  REQUIRE(t.report["witnesses"].size() == 1);
  CHECK(t.report["witnesses"][0].contains("dirs"));
  CHECK(t.report["payload"]["witness_verified"] == true);

  CHECK(invoke({"test", "--p", "5", "--ext", "2", "--k", "2", "--n", "3"}).code == 0);
  CHECK(invoke({"lemma", "lucas", "--alpha", "1000", "--beta", "37", "--p", "7"}).code == 0);
  CHECK(invoke({"weil", "--p", "5"}).code == 0);
  CHECK(invoke({"counterexample", "--p", "7", "--verify-witness"}).code == 0);
}

TEST_CASE("usage errors exit 2 with distinct messages")
{
  std::set<std::string> messages;
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"frobnicate"},
           {"classify", "--p", "9", "--k", "2"},
           {"classify", "--p", "5", "--ext", "3", "--k", "2"},
           {"classify", "--p", "5", "--ext", "4", "--k", "4"},
           {"collide", "--p", "5", "--ext", "2", "--n", "3", "--dirs", "1;zz"},
           {"coeff", "--case", "nope", "--p", "5"},
       }) {
    Result r = invoke(args);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    messages.insert(r.err);
  }
  CHECK(messages.size() == 6);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("payloads do not depend on the worker count")
{
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "--p", "7", "--ext", "2", "--k", "3"},
           {"test", "--p", "5", "--ext", "4", "--k", "2", "--n", "31"},
           {"test", "--p", "5", "--ext", "2", "--k", "3", "--n", "7", "--full"},
           {"coeff", "--case", "k2-full-a2", "--p", "5", "--t", "2"},
       }) {
    auto one = args, eight = args;
    one.insert(one.end(), {"--jobs", "1"});
    eight.insert(eight.end(), {"--jobs", "8"});
    Result a = invoke(one), b = invoke(eight);
    CHECK(a.code == b.code);
    CHECK(a.report["jobs"] == 1);
    CHECK(b.report["jobs"] == 8);
    CHECK(cli::canonical(a.report) == cli::canonical(b.report));
  }
}

TEST_CASE("out file")
{
  auto dir = scratch_dir("out");
  std::filesystem::create_directories(dir);
  const auto path = (dir / "r.json").string();
  CHECK(invoke({"weil", "--p", "5", "--fermat", "--out", path}).code == 0);
  std::ifstream in(path);
  json rep = json::parse(in);
  CHECK(rep["payload"]["solvable"] == true);
}

TEST_CASE("coeff refuses a report from another bank")
{
  auto dir = scratch_dir("bank");
  std::filesystem::create_directories(dir);
  const auto good = (dir / "good.json").string();
  CHECK(invoke({"lemma", "skr", "--k", "2", "--r", "4", "--out", good}).code == 0);
  CHECK(invoke({"coeff", "--case", "k2-full-a0", "--p", "5", "--report", good}).code == 0);

  std::ifstream in(good);
  json rep = json::parse(in);
  rep["bank_checksum"] = "00000000";
  const auto bad = (dir / "bad.json").string();
  std::ofstream(bad) << rep.dump();
  Result r = invoke({"coeff", "--case", "k2-full-a0", "--p", "5", "--report", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("checksum") != std::string::npos);
}

TEST_CASE("goldens record and check")
{
  auto dir = scratch_dir("goldens");
  CHECK(invoke({"goldens", "--dir", dir.string(), "record"}).code == 0);
  CHECK(invoke({"goldens", "--dir", dir.string(), "check"}).code == 0);

  // corrupt one report
  const auto victim = dir / "lemma-skr-2-6.json";
  {
    std::ofstream(victim, std::ios::app) << " ";
  }
  Result r = invoke({"goldens", "--dir", dir.string(), "check"});
  CHECK(r.code == 1);
  CHECK(r.err.find("lemma-skr-2-6") != std::string::npos);

  // a golden recorded under another bank or version
  {
    std::ifstream in(dir / "weil-5.json");
    json g = json::parse(in);
    g["report"]["bank_checksum"] = "deadbeef";
    std::ofstream(dir / "weil-5.json") << g.dump(2) << "\n";
  }
  r = invoke({"goldens", "--dir", dir.string(), "check"});
  CHECK(r.code == 1);
  CHECK(r.err.find("weil-5") != std::string::npos);

  CHECK(invoke({"goldens", "--dir", (dir / "missing").string(), "check"}).code == 2);
}
