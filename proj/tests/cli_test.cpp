#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fairkc/instance_io.hpp"

namespace fairkc {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(FAIRKC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fairkc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

constexpr const char* kLineFair = R"({"kind":"fair","n":4,"k":2,
  "metric":{"type":"matrix","rows":[[0,1,2,3],[1,0,1,2],[2,1,0,1],[3,2,1,0]]},
  "groups":[0,0,1,1],"req":[1,1]})";

constexpr const char* kLineForbidden = R"({"kind":"forbidden","n":4,"k":2,
  "metric":{"type":"matrix","rows":[[0,1,2,3],[1,0,1,2],[2,1,0,1],[3,2,1,0]]},
  "allowed":[1,2]})";

TEST_F(CliTest, GenerateIsDeterministic) {
  for (const char* metric : {"euclidean", "grid", "graph"}) {
    const std::string args = std::string("generate --n 12 --t 3 --k 4 --seed 9 --metric ") + metric + " --out ";
    ASSERT_EQ(run(args + path("a.json")).code, 0) << metric;
    ASSERT_EQ(run(args + path("b.json")).code, 0) << metric;
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json"))) << metric;
    EXPECT_NO_THROW(read_instance(path("a.json")));
  }
  EXPECT_EQ(run("generate --n 8 --k 3 --kind forbidden --seed 1 --out " + path("f.json")).code, 0);
  EXPECT_TRUE(std::holds_alternative<ForbiddenInstance<double>>(read_instance(path("f.json"))));
}

TEST_F(CliTest, GenerateRejectsMoreGroupsThanCenters) {
  EXPECT_EQ(run("generate --n 10 --t 4 --k 3 --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("generate --n 10 --t 2 --k 3 --quota one-per-group --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("generate --n 3 --k 5 --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(CliTest, SolveExactLineInstance) {
  write("line.json", kLineFair);
  const auto r = run("solve --in " + path("line.json") + " --algo exact --out json");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["radius"], 1.0);
  EXPECT_EQ(doc["algorithm"], "exact");
  const auto csv = run("solve --in " + path("line.json") + " --algo fair3 --with-opt");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("instance_id,n,t,k,algorithm,radius,optimum,ratio,wall_ms,seed\n", 0), 0u);
  EXPECT_NE(csv.out.find(",fair3,1,1,1,"), std::string::npos) << csv.out;
}

TEST_F(CliTest, SolveReportsBudgetExhaustion) {
  ASSERT_EQ(run("generate --n 20 --t 3 --k 5 --metric graph --seed 2 --out " + path("g.json")).code, 0);
  EXPECT_EQ(run("solve --in " + path("g.json") + " --algo exact --budget 1").code, 3);
}

TEST_F(CliTest, ReduceWritesTargetAndProvenance) {
  write("src.json", kLineForbidden);
  ASSERT_EQ(run("reduce --type forbidden2fair --r2 1 --in " + path("src.json") + " --out " + path("dst.json")).code, 0);
  const auto target = read_instance(path("dst.json"));
  ASSERT_TRUE(std::holds_alternative<FairInstance<Rational>>(target));
  EXPECT_EQ(std::get<FairInstance<Rational>>(target).size(), 5u);
  const auto side = nlohmann::json::parse(slurp(path("dst.json.provenance.json")));
  EXPECT_EQ(side["r2"], 1);
  EXPECT_EQ(side["aux_distance"], 10);
  EXPECT_EQ(side["aux_points"], nlohmann::json::array({4}));

  const auto back = run("mapback --source " + path("src.json") + " --provenance " + path("dst.json.provenance.json") +
                        " --centers 1,2,4");
  ASSERT_EQ(back.code, 0);
  EXPECT_EQ(back.out, "centers 1 2\nradius 1\n");
}

TEST_F(CliTest, ReduceFairToOnePerGroup) {
  write("src.json", kLineFair);
  ASSERT_EQ(run("reduce --type fair2opg --in " + path("src.json") + " --out " + path("dst.json")).code, 0);
  const auto side = nlohmann::json::parse(slurp(path("dst.json.provenance.json")));
  EXPECT_EQ(side["delta"], "1/2");
  EXPECT_EQ(side["origin_map"].size(), 4u);
}

TEST_F(CliTest, VerifyPassesOnLineInstances) {
  write("forbidden.json", kLineForbidden);
  write("fair.json", kLineFair);
  const auto a = run("verify --in " + path("forbidden.json") + " --type forbidden2fair --report " + path("a.json"));
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("aux-mandatory"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(slurp(path("a.json")))["passed"], true);
  EXPECT_EQ(run("verify --in " + path("fair.json") + " --type fair2opg").code, 0);
  const auto p = run("verify --in " + path("forbidden.json") + " --type pipeline");
  EXPECT_EQ(p.code, 0) << p.out;
  EXPECT_NE(p.out.find("pipeline-opt-equality"), std::string::npos);
}

TEST_F(CliTest, MalformedInputExitsWithUsageError) {
  write("bad.json", R"({"kind":"fair","n":2})");
  EXPECT_EQ(run("solve --in " + path("bad.json")).code, 2);
  EXPECT_EQ(run("verify --in " + path("bad.json") + " --type forbidden2fair").code, 2);
}

TEST_F(CliTest, BenchProducesCsvWithinBounds) {
  const auto out = path("bench.csv");
  const auto r = run("bench --trials 6 --n-range 5:9 --seed 3 --algos gonzalez,fair3,exact --jobs 2 --out " + out);
  ASSERT_EQ(r.code, 0);
  const auto text = slurp(out);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "instance_id,n,t,k,algorithm,radius,optimum,ratio,wall_ms,seed");
  std::size_t rows = 0;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#') ++rows;
  EXPECT_EQ(rows, 18u);
  EXPECT_NE(text.find("# max_ratio gonzalez="), std::string::npos);
}

}  // namespace
}  // namespace fairkc
