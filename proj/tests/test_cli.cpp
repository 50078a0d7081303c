#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef TROPAB_CLI_PATH
#error "TROPAB_CLI_PATH must point at the tropab binary"
#endif

using Json = nlohmann::json;

// Jobs with string matrices are parsed from text: a braced {"1", "0"} would
// become an object.

namespace {

struct Run {
  int rc = -1;
  std::string raw;
  Json doc;
};

// Writes the job to a temp file and runs `tropab <args> --input <file>`.
Run run(const std::string& args, const std::string& input) {
  static int counter = 0;
  auto path = std::filesystem::temp_directory_path() /
              ("tropab_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
  std::ofstream(path) << input;
  std::string cmd = std::string(TROPAB_CLI_PATH) + " " + args + " --input " + path.string() + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.raw.append(buf, n);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::filesystem::remove(path);
  r.doc = Json::parse(r.raw, nullptr, false);
  return r;
}

Run run_json(const std::string& cmd, const Json& input, const std::string& flags = "") {
  return run(cmd + " " + flags, input.dump());
}

}  // namespace

TEST_CASE("snf example") {
  Run r = run_json("snf", {{"m", {{2, 4}, {6, 8}}}});
  CHECK(r.rc == 0);
  CHECK(r.doc["kind"] == "snf.result");
  CHECK(r.doc["d"] == Json({2, 4}));
}

TEST_CASE("trop example") {
  Json tau = {{{0, 2}, {0, 0}}, {{0, 0}, {0, 2}}};
  Run r = run_json("trop", {{"tau", tau}, {"g_prime", 0}});
  REQUIRE(r.rc == 0);
  auto tr = r.doc["tr"];
  CHECK(tr[0][0].get<double>() == doctest::Approx(2.0));
  CHECK(tr[0][1].get<double>() == doctest::Approx(0.0));
  CHECK(tr[1][1].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("delaunay example and round trip") {
  Run d = run_json("delaunay", Json::parse(R"({"q":[["2","1"],["1","2"]]})"));
  REQUIRE(d.rc == 0);
  CHECK(d.doc["cell_count"] == 2);
  Json paving = d.doc["paving"];
  CHECK(paving["kind"] == "paving");

  Run v = run_json("voronoi-cone", {{"paving", paving}, {"q", Json::parse(R"([["1","0"],["0","1"]])")}});
  REQUIRE(v.rc == 0);
  CHECK(v.doc["contains"] == true);
  Run vn = run_json("voronoi-cone", {{"paving", paving}, {"q", Json::parse(R"([["2","-1"],["-1","2"]])")}});
  REQUIRE(vn.rc == 0);
  CHECK(vn.doc["contains"] == false);

  Run f = run_json("fiber", {{"paving", paving}, {"phi_image_basis", Json::parse(R"([["2","0"],["0","2"]])")}});
  REQUIRE(f.rc == 0);
  CHECK(f.doc["components"].size() == 8);
  CHECK(f.doc["incidences"].size() == 12);
}

TEST_CASE("sigma output feeds bend and legendre") {
  Run s = run_json("sigma", Json::parse(R"({"q":[["2","1"],["1","2"]]})"));
  REQUIRE(s.rc == 0);
  Json fn = s.doc["function"];
  Run b = run_json("bend", {{"function", fn}});
  REQUIRE(b.rc == 0);
  CHECK(b.doc["walls"].size() == 3);
  Run l = run_json("legendre", {{"function", fn}});
  CHECK(l.rc == 0);
}

TEST_CASE("heisenberg commands") {
  Json x = {{"t", 0}, {"a", {1}}, {"b", {0}}}, y = {{"t", 0}, {"a", {0}}, {"b", {1}}};
  Run h = run_json("heis", {{"delta", {3}}, {"M", 6}, {"x", x}, {"y", y}});
  REQUIRE(h.rc == 0);
  CHECK(h.doc["order"] == 54);
  CHECK(h.doc["power_map"] == true);
  CHECK(h.doc["relation"] == true);
  CHECK(h.doc["commutator"]["t"] == 2);

  Run k = run_json("kw", {{"delta", {2, 2}}});
  REQUIRE(k.rc == 0);
  Run bal = run_json("balanced", {{"delta", {3}}});
  REQUIRE(bal.rc == 0);
  CHECK(bal.doc["count"] == 36);
}

TEST_CASE("exit codes") {
  // Domain error: φ not injective.
  Run e = run_json("fourier", Json::parse(R"({"phi":[["1","0"],["0","0"]]})"));
  CHECK(e.rc == 1);
  CHECK(e.doc["kind"] == "error");
  CHECK(e.doc["code"] == "NotInjective");
  CHECK(e.doc["field"] == "phi");

  Run bad = run("snf", "{not json");
  CHECK(bad.rc == 2);
  CHECK(bad.doc["code"] == "MalformedInput");

  Run unknown = run_json("snf", {{"m", {{1}}}, {"extra", 1}});
  CHECK(unknown.rc == 2);
  CHECK(unknown.doc["field"] == "extra");

  Run wrong_kind = run_json("snf", {{"kind", "hnf"}, {"m", {{1}}}});
  CHECK(wrong_kind.rc == 2);

  Run no_cmd = run("", "{}");
  CHECK(no_cmd.rc == 2);

  Run npd = run_json("delaunay", Json::parse(R"({"q":[["1","2"],["2","1"]]})"));
  CHECK(npd.rc == 1);
  CHECK(npd.doc["code"] == "NotPositiveDefinite");
}

TEST_CASE("output is deterministic") {
  Json job = Json::parse(R"({"q":[["3","1"],["1","2"]]})");
  Run a = run_json("delaunay", job), b = run_json("delaunay", job);
  CHECK(a.raw == b.raw);
  Run ba = run_json("balanced", {{"delta", {2}}}), bb = run_json("balanced", {{"delta", {2}}});
  CHECK(ba.raw == bb.raw);
}

TEST_CASE("text format and flags") {
  Run t = run_json("snf", {{"m", {{2, 4}, {6, 8}}}}, "--format text");
  CHECK(t.rc == 0);
  CHECK(t.raw.find("d: [2,4]") != std::string::npos);
  CHECK(t.raw.find("kind: snf.result") != std::string::npos);

  Run small = run_json("delaunay", Json::parse(R"({"q":[["100","99"],["99","100"]]})"), "--window 2");
  CHECK(small.rc == 1);
  CHECK(small.doc["code"] == "WindowTooSmall");
}
