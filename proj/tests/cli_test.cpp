#include "tmoebius/cli/commands.hpp"
#include "tmoebius/verify/fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace tmoebius;

namespace {

struct Output {
  int code;
  std::string out, err;
};

Output run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, GenusOneAnchor) {
  auto r = run({"invariant", "--surface", "m0", "--genus", "1", "--a", "1", "--b", "1", "--nu", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("N = 12\n"), std::string::npos) << r.out;
}

TEST(Cli, WeightingMethodAgrees) {
  auto a = run({"invariant", "--surface", "m1", "--genus", "2", "--a", "3/2", "--b", "3/2", "--mu", "1", "--nu", "1,1",
                "--format", "json"});
  auto b = run({"invariant", "--surface", "m1", "--genus", "2", "--a", "3/2", "--b", "3/2", "--mu", "1", "--nu", "1,1",
                "--format", "json", "--method", "weightings"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(json::parse(a.out)["N"], json::parse(b.out)["N"]);
}

TEST(Cli, DiagramsIncludeReference) {
  auto r = run({"diagrams", "--surface", "m0", "--genus", "3", "--a", "3/2", "--b", "1", "--nu", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto want = canonical_form(fixtures::ground_double_elevator().diagram);
  std::istringstream lines(r.out);
  std::string line;
  bool found = false;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    auto doc = diagram_from_json(json::parse(line)["diagram"]);
    found = found || canonical_form(doc.diagram) == want;
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(count, 1);
}

TEST(Cli, ParityViolationIsInputError) {
  auto r = run({"invariant", "--a", "1/2", "--b", "1", "--surface", "m1", "--nu", "1,1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("2b = 2*delta*a"), std::string::npos) << r.err;
}

TEST(Cli, NormMismatchIsInputError) {
  auto r = run({"invariant", "--a", "1", "--b", "1", "--surface", "m0", "--nu", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("|mu| + |nu|"), std::string::npos) << r.err;
}

TEST(Cli, MalformedFlagsAreInputErrors) {
  EXPECT_EQ(run({"invariant", "--a", "1.5", "--b", "1", "--nu", "1,1"}).code, 1);
  EXPECT_EQ(run({"invariant", "--a", "1", "--b", "1", "--nu", "1,x"}).code, 1);
  EXPECT_EQ(run({"invariant", "--a", "1", "--b", "1", "--nu", "1,1", "--surface", "m2"}).code, 1);
  EXPECT_EQ(run({"invariant", "--a", "1", "--b", "1", "--nu", "1,1", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"invariant", "--a", "1", "--b", "1", "--nu", "1,1", "--convention", "other"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(Cli, MarkingsOfGivenDiagram) {
  auto text = to_json(fixtures::joint_double_elevator().diagram, SurfaceKind::M1).dump();
  auto r = run({"markings", "--diagram", text, "--nu", "1,1", "--format", "table"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto d = fixtures::joint_double_elevator().diagram;
  auto n = enumerate_markings(d, Partition(), Partition::parse("1,1")).size();
  EXPECT_NE(r.out.find(std::to_string(n) + " markings"), std::string::npos) << r.out;
}

TEST(Cli, InvalidDiagramRejected) {
  auto r = run({"markings", "--diagram", R"({"vertices":[{"kind":"etage","degree":1}],"edges":[],"ends":[]})"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, BgSpecializesToN) {
  auto r = run({"bg", "--surface", "m1", "--genus", "2", "--a", "3/2", "--b", "3/2", "--nu", "1,1,1", "--format",
                "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["symmetric"].get<bool>());
  InvariantRequest q{SurfaceKind::M1, 2, {HalfInt::parse("3/2"), HalfInt::parse("3/2")}, Partition(),
                     Partition::parse("1,1,1")};
  EXPECT_EQ(j["N"].get<std::string>(), to_string(compute_invariant(q).N));
}

TEST(Cli, SeriesCsv) {
  auto r = run({"series", "--surface", "m0", "--genus", "1", "--b", "1", "--nu", "1,1", "--order", "6", "--format",
                "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  // Genus 1, b = 1: the y^2 coefficient is N at a = 1.
  EXPECT_NE(r.out.find("2,1,12\n"), std::string::npos) << r.out;
}

TEST(Cli, RegularityCertificate) {
  auto r = run({"regularity", "--surface", "m0", "--genus", "1", "--a", "2", "--nu", "1,1", "--nu-dir", "1,3",
                "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["exact"].get<bool>());
  EXPECT_TRUE(j["single_polynomial"].get<bool>());
  auto bad = run({"regularity", "--surface", "m0", "--genus", "1", "--a", "2", "--nu", "1,1", "--nu-dir", "1"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, OutFlagWritesFile) {
  const std::string path = ::testing::TempDir() + "tmoebius_cli_out.txt";
  auto r = run({"invariant", "--a", "1", "--b", "1", "--nu", "1,1", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "N = 12");
  std::remove(path.c_str());
}

TEST(Cli, VerifySingleCriterion) {
  auto r = run({"verify", "--suite", "1"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("[PASS] 1.", 0), 0u) << r.out;
  auto documented = run({"verify", "--suite", "3"});
  EXPECT_EQ(documented.code, 2);
  EXPECT_NE(documented.out.find("(documented)"), std::string::npos);
}

TEST(Cli, ByteIdenticalAcrossWorkers) {
  for (const auto& args : determinism_invocations()) {
    if (args.front() == "verify") continue;
    std::string first;
    for (const char* jobs : {"1", "4", "8"}) {
      auto a = args;
      a.push_back("--jobs");
      a.push_back(jobs);
      auto r = run(a);
      ASSERT_EQ(r.code, 0) << args.front() << ": " << r.err;
      if (first.empty()) first = r.out;
      EXPECT_EQ(r.out, first) << args.front() << " with " << jobs << " workers";
    }
  }
}
