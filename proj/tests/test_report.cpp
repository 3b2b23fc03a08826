#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mobagent/report.hpp"

using namespace mobagent;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mobagent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parse(const std::string& text) { return Json::parse(text); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mobagent_test_" + name);
}

}  // namespace

TEST(Cli, RunTrianglesOnK4) {
  const auto r = cli({"run", "--gen", "complete:4", "--protocol", "triangles"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  EXPECT_EQ(doc["output"]["total"], 4);
  EXPECT_EQ(doc["verdict"], "pass");
  EXPECT_EQ(doc["graph"]["n"], 4);
  EXPECT_EQ(doc["metrics"]["rounds_total"], doc["metrics"]["round_bound"]);
}

TEST(Cli, RunTrussOnPetersen) {
  const auto r = cli({"run", "--gen", "petersen", "--protocol", "truss"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  EXPECT_EQ(doc["output"]["trussness"].size(), 15u);
  for (const auto& [key, value] : doc["output"]["trussness"].items()) EXPECT_EQ(value, 2) << key;
}

TEST(Cli, RunCentralityFromFile) {
  const auto path = temp_file("k3.txt");
  {
    std::ofstream out(path);
    out << "0 1\n1 2\n0 2\n";
  }
  const auto r = cli({"run", "--graph", path.string(), "--protocol", "centrality"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  for (const auto& [id, tc] : doc["output"]["per_node"].items()) {
    EXPECT_EQ(tc["exact"], "1/1") << id;
    EXPECT_EQ(tc["value"], 1.0);
  }
  std::filesystem::remove(path);
}

TEST(Cli, OracleReport) {
  const auto r = cli({"oracle", "--gen", "complete:4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r.out)["triangles"]["total"], 4);

  const auto a = cli({"oracle", "--gen", "gnp:16:0.3:seed=7"});
  const auto b = cli({"oracle", "--gen", "gnp:16:0.3:seed=7"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(cli({"oracle", "--graph", "/nonexistent/missing.txt"}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"run", "--protocol", "triangles"}).code, 2);
  EXPECT_EQ(cli({"run", "--gen", "complete:4", "--protocol", "squares"}).code, 2);
  EXPECT_EQ(cli({"run", "--gen", "complete:4", "--graph", "x", "--protocol", "lcc"}).code, 2);
  EXPECT_EQ(cli({"run", "--gen", "gnp:8:0", "--protocol", "lcc"}).code, 2);
  EXPECT_EQ(cli({"run", "--gen", "complete:4", "--protocol", "lcc", "--ids", "weird"}).code, 2);
  EXPECT_EQ(cli({"run", "--gen", "complete:4", "--protocol", "lcc", "--diameter", "x"}).code, 2);
  EXPECT_EQ(cli({"sweep", "--family", "gnp", "--n", "9:3"}).code, 2);
  EXPECT_EQ(cli({"sweep", "--family", "hexagon"}).code, 2);
  EXPECT_EQ(cli({"gen"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

// A known total that disagrees with the graph makes centrality wrong, so the
// verdict fails with exit code 1.
TEST(Cli, WrongVerdictExitsOne) {
  const auto r = cli({"run", "--gen", "complete:4", "--protocol", "centrality", "--known-total", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parse(r.out)["verdict"], "fail");
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::vector<std::string> args{"run",   "--gen",      "gnp:16:0.3:seed=4", "--protocol",
                                      "truss", "--ids",      "random",            "--id-seed",
                                      "9",     "--diameter", "n"};
  const auto a = cli(args);
  const auto b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TraceAndOutFiles) {
  const auto out = temp_file("report.json");
  const auto trace = temp_file("trace.txt");
  const auto r = cli({"run", "--gen", "complete:3", "--protocol", "triangles", "--out", out.string(),
                      "--trace", trace.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream report(out);
  EXPECT_EQ(Json::parse(report)["output"]["total"], 1);
  std::ifstream lines(trace);
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first.rfind("round=0 agent=", 0), 0u) << first;
  std::filesystem::remove(out);
  std::filesystem::remove(trace);
}

TEST(Cli, GenRoundTrips) {
  const auto r = cli({"gen", "--gen", "gnp:10:0.4:seed=3", "--ports", "2"});
  ASSERT_EQ(r.code, 0);
  GeneratorConfig config = parse_generator_spec("gnp:10:0.4:seed=3");
  config.port_seed = 2;
  EXPECT_EQ(load_graph(r.out), generate(config));
}

TEST(Cli, SweepCompleteGraphs) {
  const auto r = cli({"sweep", "--family", "complete", "--n", "3:8", "--protocol", "neighbors"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  EXPECT_EQ(doc["runs_executed"], 6);
  for (const auto& run : doc["runs"]) {
    EXPECT_EQ(run["discover_rounds"], run["schedule_length"]);
  }
}

TEST(Cli, SweepGnpHasNoFailures) {
  const auto r = cli({"sweep", "--family", "gnp", "--n", "16", "--p", "0.3", "--seeds", "1:50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  EXPECT_TRUE(doc["failures"].empty());
  EXPECT_EQ(doc["runs_executed"], 250);
  EXPECT_LE(doc["max_memory_constant_c"].get<double>(), 8.0);
}

TEST(Report, EmptySweepIsConfigError) {
  SweepSpec spec;
  spec.min_size = 5;
  spec.max_size = 4;
  EXPECT_THROW(sweep_corpus(spec), ConfigError);
}

TEST(Report, RationalRendering) {
  EXPECT_EQ(rational_text(Rational(5, 6)), "5/6");
  EXPECT_EQ(rational_text(Rational(0)), "0/1");
  EXPECT_DOUBLE_EQ(rational_value(Rational(1, 2)), 0.5);
}
