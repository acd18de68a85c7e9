#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fairkc/generators.hpp"
#include "fairkc/instance_io.hpp"

namespace fairkc {
namespace {

constexpr const char* kRationalFair = R"({
  "kind": "fair",
  "n": 3,
  "k": 2,
  "metric": {"type": "matrix", "rows": [
    [0, "7/2", 2],
    ["7/2", 0, "3/2"],
    [2, "3/2", 0]
  ]},
  "groups": [0, 1, 1],
  "req": [1, 1]
}
)";

TEST(InstanceIoTest, CanonicalRationalFileRoundTripsByteForByte) {
  const auto inst = parse_instance(kRationalFair);
  ASSERT_TRUE(std::holds_alternative<FairInstance<Rational>>(inst));
  const auto& fair = std::get<FairInstance<Rational>>(inst);
  EXPECT_EQ(fair.metric()(0, 1), Rational(7, 2));
  EXPECT_EQ(to_json_string(inst), kRationalFair);
}

TEST(InstanceIoTest, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "fairkc_io_test.json").string();
  const auto inst = generate_euclidean(9, 3, 4, 42, QuotaPolicy::Balanced);
  write_instance(inst, path);
  const auto back = read_instance(path);
  ASSERT_TRUE(std::holds_alternative<FairInstance<double>>(back));
  EXPECT_EQ(std::get<FairInstance<double>>(back), inst);
  EXPECT_EQ(to_json_string(back), to_json_string(inst));
  std::remove(path.c_str());
}

TEST(InstanceIoTest, ForbiddenRoundTrip) {
  Rng rng(4);
  const auto inst = random_forbidden_instance(random_graph_metric(6, rng), 2, rng);
  const auto text = to_json_string(inst);
  const auto back = parse_instance(text);
  ASSERT_TRUE(std::holds_alternative<ForbiddenInstance<Rational>>(back));
  EXPECT_EQ(std::get<ForbiddenInstance<Rational>>(back), inst);
  EXPECT_EQ(to_json_string(back), text);
}

TEST(InstanceIoTest, ExactPointsStayExact) {
  Rng rng(8);
  const auto inst = random_fair_instance(random_grid_metric(7, rng), 2, 3, QuotaPolicy::Balanced, rng);
  const auto text = to_json_string(inst);
  EXPECT_NE(text.find("\"points\""), std::string::npos);
  const auto back = parse_instance(text);
  ASSERT_TRUE(std::holds_alternative<FairInstance<Rational>>(back));
  EXPECT_EQ(std::get<FairInstance<Rational>>(back), inst);
}

TEST(InstanceIoTest, DecimalStringsParseExactly) {
  const auto inst = parse_instance(R"({"kind":"forbidden","n":2,"k":1,
    "metric":{"type":"matrix","rows":[[0,"2.25"],["9/4",0]]},"allowed":[1]})");
  const auto& f = std::get<ForbiddenInstance<Rational>>(inst);
  EXPECT_EQ(f.metric()(0, 1), f.metric()(1, 0));
}

void expect_parse_error(const std::string& text, const std::string& fragment) {
  try {
    parse_instance(text);
    FAIL() << "expected ParseError mentioning '" << fragment << "'";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(InstanceIoTest, MalformedFilesReportFieldOrLine) {
  expect_parse_error(R"({"kind":"fair","n":2,"k":1,"metric":{"type":"matrix","rows":[[0,1],[1,0]]},"groups":[0,0]})",
                     "missing field 'req'");
  expect_parse_error("{\n\"kind\": \"fair\",\n  \"n\": ,\n}", "line 3");
  expect_parse_error(R"({"kind":"fair","n":2,"k":1,"metric":{"type":"matrix","rows":[[0,1],[1,true]]},"groups":[0,0],"req":[1]})",
                     "metric.rows[1][1]");
  expect_parse_error(R"({"kind":"fair","n":2,"k":1,"metric":{"type":"matrix","rows":[[0,"1/0"],[1,0]]},"groups":[0,0],"req":[1]})",
                     "metric.rows[0][1]");
  expect_parse_error(R"({"kind":"fair","n":3,"k":1,"metric":{"type":"matrix","rows":[[0,1],[1,0]]},"groups":[0,0],"req":[1]})",
                     "n:");
  expect_parse_error(R"({"kind":"fair","n":2,"k":2,"metric":{"type":"matrix","rows":[[0,1],[1,0]]},"groups":[0,0],"req":[1]})",
                     "req sums to 1");
  expect_parse_error(R"({"kind":"other"})", "kind");
  expect_parse_error(R"({"kind":"fair","n":2,"k":1,"metric":{"type":"matrix","rows":[[0,1],[1]]},"groups":[0,0],"req":[1]})",
                     "not square");
  expect_parse_error(R"({"kind":"forbidden","n":2,"k":1,"metric":{"type":"points","norm":"L7","coords":[[0],[1]]},"allowed":[0]})",
                     "unknown norm");
  expect_parse_error(R"({"kind":"fair","n":2,"k":1,"metric":{"type":"matrix","rows":[[0,1],[1,0]]},"groups":[0,-1],"req":[1]})",
                     "groups[1]");
}

TEST(InstanceIoTest, MissingFileIsParseError) {
  EXPECT_THROW(read_instance("/nonexistent/fairkc.json"), ParseError);
}

}  // namespace
}  // namespace fairkc
