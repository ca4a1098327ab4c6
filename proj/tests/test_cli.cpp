#include <gtest/gtest.h>

#include <cstdio>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"

namespace {

struct Invocation {
  int code = -1;
  std::string out, err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Invocation r;
  r.code = ringsieve::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

using Fields = std::map<std::string, std::string>;

/// Machine-format output: one record per line.
std::vector<Fields> records(const std::string& text) {
  std::vector<Fields> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    Fields f;
    std::istringstream ls(line);
    std::string kv;
    while (ls >> kv) {
      const auto eq = kv.find('=');
      f[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string sample(const std::string& name) { return std::string(RINGSIEVE_SAMPLES) + "/" + name; }

/// Re-feeds a printed witness through rogers-check --shifts.
Invocation refeed(const std::string& ring, const std::vector<Fields>& recs) {
  std::vector<std::string> args{"--format", "machine", "rogers-check", ring};
  std::string shifts;
  for (const auto& r : recs) {
    if (r.count("generators")) {
      args.push_back("--ideal");
      args.push_back(r.at("generators"));
    }
    if (r.count("shifts")) shifts = r.at("shifts");
  }
  args.push_back("--shifts");
  args.push_back(shifts);
  return run(args);
}

}  // namespace

TEST(Cli, VerifyTheoremOnCyclicTwelve) {
  const Invocation r = run({"verify-theorem2", "catalog:Z12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("condition_holds=true"), std::string::npos);
  EXPECT_NE(r.out.find("agree=true"), std::string::npos);
}

TEST(Cli, CounterexampleOnSquareZeroPlane) {
  const Invocation r = run({"--format", "machine", "counterexample", "catalog:F2xy"});
  EXPECT_EQ(r.code, 2);
  const auto recs = records(r.out);
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs.back().at("union_shifted"), "3");
  EXPECT_EQ(recs.back().at("union_baseline"), "4");
}

TEST(Cli, SieveMinOfTwoAndThree) {
  const Invocation r = run({"sieve-min", "--moduli", "2,3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("min=2/3\n"), std::string::npos);
}

TEST(Cli, SieveDensity) {
  const Invocation r = run({"--format", "machine", "sieve", "--prog", "0:2", "--prog", "0:3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(records(r.out).front().at("density"), "2/3");
}

TEST(Cli, WitnessesReverify) {
  for (const std::string& ring : std::vector<std::string>{"catalog:F2xy", "catalog:C1", "catalog:Z4*F2xy", "catalog:Fqxy:3*Z5", sample("c1.ring")}) {
    const Invocation w = run({"--format", "machine", "counterexample", ring});
    ASSERT_EQ(w.code, 2) << ring << w.err;
    const auto recs = records(w.out);
    const Invocation v = refeed(ring, recs);
    ASSERT_EQ(v.code, 2) << ring << v.err;
    const auto check = records(v.out).back();
    EXPECT_EQ(check.at("minimum"), recs.back().at("union_shifted")) << ring;
    EXPECT_EQ(check.at("baseline"), recs.back().at("union_baseline")) << ring;
  }
}

TEST(Cli, SearchWitnessReverifies) {
  const Invocation s = run({"--format", "machine", "rogers-check", sample("f2xy.ring")});
  ASSERT_EQ(s.code, 2);
  const auto recs = records(s.out);
  EXPECT_EQ(recs.back().at("shifts"), "0,0,0;0,1,0;0,0,0");
  EXPECT_EQ(refeed(sample("f2xy.ring"), recs).code, 2);
}

TEST(Cli, ProbeWitnessReverifiesThroughOrderCheck) {
  const Invocation p = run({"--format", "machine", "probe", "catalog:Z2i", "--bound", "8"});
  ASSERT_EQ(p.code, 2);
  const auto recs = records(p.out);
  std::vector<std::string> args{"--format", "machine", "order-check", sample("z2i.order")};
  for (const auto& r : recs)
    if (r.count("generators")) {
      args.push_back("--ideal");
      args.push_back(r.at("generators"));
    }
  args.push_back("--shifts");
  args.push_back(recs.back().at("shifts"));
  const Invocation v = run(args);
  EXPECT_EQ(v.code, 2);
  EXPECT_EQ(records(v.out).back().at("minimum"), recs.back().at("union_shifted"));
}

TEST(Cli, OrderFilesAndCatalogAgree) {
  const Invocation a = run({"--format", "machine", "order-check", sample("z2i.order")});
  const Invocation b = run({"--format", "machine", "order-check", "catalog:Z2i", "--ideal", "2,0", "--ideal", "0,1", "--ideal",
                     "2,1;4,0"});
  EXPECT_EQ(a.code, 2);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(records(a.out).back().at("quotient_order"), "8");
  EXPECT_EQ(run({"order-check", sample("zi.order")}).code, 0);
  EXPECT_EQ(run({"probe", sample("zi.order"), "--bound", "20"}).code, 0);
  EXPECT_EQ(run({"probe", sample("z_sqrt_minus3.order")}).code, 2);
}

TEST(Cli, RingFileCommands) {
  EXPECT_EQ(run({"validate", sample("z12.ring")}).code, 0);
  EXPECT_EQ(run({"ideals", sample("c1.ring")}).code, 0);
  EXPECT_EQ(run({"classify", sample("c1.ring")}).code, 2);
  EXPECT_EQ(run({"classify", sample("z12.ring")}).code, 0);
  EXPECT_EQ(run({"rogers-check", sample("z12.ring")}).code, 0);
  EXPECT_EQ(run({"verify-theorem2", sample("c1.ring")}).code, 2);
  EXPECT_EQ(run({"counterexample", "catalog:Z12"}).code, 0);
}

TEST(Cli, WorkerCountDoesNotChangeOutput) {
  const std::vector<std::vector<std::string>> cmds{
      {"rogers-check", "catalog:Z4*F2xy", "--ideal", "0,0,1,0", "--ideal", "0,0,0,1", "--ideal", "1,0,1,1"},
      {"verify-theorem2", "catalog:Z4*C1"},
      {"verify-theorem2", "catalog:Z60*Z9"},
      {"order-check", "catalog:Z2i", "--ideal", "2,0", "--ideal", "0,1", "--ideal", "2,1;4,0"},
      {"probe", "catalog:Zsqrt5", "--bound", "12"},
  };
  for (const auto& c : cmds)
    for (const std::string fmt : {"human", "machine"}) {
      std::vector<std::string> one{"--format", fmt, "--workers", "1"}, four{"--format", fmt, "--workers", "4"};
      one.insert(one.end(), c.begin(), c.end());
      four.insert(four.end(), c.begin(), c.end());
      const Invocation a = run(one), b = run(four), a2 = run(one);
      EXPECT_EQ(a.out, b.out) << c[0];
      EXPECT_EQ(a.out, a2.out);
      EXPECT_EQ(a.code, b.code);
    }
}

TEST(Cli, UsageAndValidationErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"validate"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "validate", "catalog:Z12"}).code, 1);
  EXPECT_EQ(run({"--workers", "0", "validate", "catalog:Z12"}).code, 1);
  EXPECT_EQ(run({"validate", "catalog:Q"}).code, 1);
  EXPECT_EQ(run({"validate", "/nonexistent.ring"}).code, 1);
  EXPECT_EQ(run({"probe", "catalog:Z2i", "--bound", "1"}).code, 1);
  EXPECT_EQ(run({"rogers-check", "catalog:Z12"}).code, 1);
  EXPECT_EQ(run({"rogers-check", "catalog:Z12", "--ideal", "1,2"}).code, 1);
  EXPECT_EQ(run({"sieve", "--prog", "1"}).code, 1);
  const Invocation e = run({"--carrier-bound", "8", "validate", "catalog:Z12"});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("CarrierTooLarge"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(RINGSIEVE_CLI) + " " + args + " >/dev/null 2>&1";
    const int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("verify-theorem2 catalog:Z12"), 0);
  EXPECT_EQ(status("counterexample catalog:F2xy"), 2);
  EXPECT_EQ(status("sieve-min --moduli 2,3"), 0);
  EXPECT_EQ(status("nonsense"), 1);
}
