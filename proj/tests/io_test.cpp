#include <gtest/gtest.h>

#include <numbers>
#include <stdexcept>

#include "loewner/io.hpp"
#include "support/generators.hpp"

namespace loewner {
namespace {

TEST(ParseAngles, Json) {
  const StepDriver d = parse_angles(R"({"m": 2, "angles_rad": [0.5, 1.5]})");
  EXPECT_EQ(d, make_driver({0.5, 1.5}));
  EXPECT_EQ(parse_angles(R"({"angles_rad": [1]})").m(), 1u);
}

TEST(ParseAngles, JsonErrors) {
  EXPECT_THROW(parse_angles(R"({"m": 3, "angles_rad": [0.5, 1.5]})"), std::invalid_argument);
  EXPECT_THROW(parse_angles(R"({"m": 0, "angles_rad": []})"), std::invalid_argument);
  EXPECT_THROW(parse_angles(R"({"angles_rad": ["x"]})"), std::invalid_argument);
  EXPECT_THROW(parse_angles(R"({"m": 1})"), std::invalid_argument);
  EXPECT_THROW(parse_angles("{not json"), std::invalid_argument);
  EXPECT_THROW(parse_angles(""), std::invalid_argument);
}

TEST(ParseAngles, Csv) {
  EXPECT_EQ(parse_angles("angle\n0.25\n\n# comment\n1.0\n"), make_driver({0.25, 1.0}));
  EXPECT_EQ(parse_angles("3.14159,\n2\n"), make_driver({3.14159, 2.0}));
  EXPECT_THROW(parse_angles("1.0\nabc\n"), std::invalid_argument);
  EXPECT_THROW(parse_angles("header only\n"), std::invalid_argument);
}

TEST(AnglesWriters, RoundTripExactly) {
  testing::DriverGenerator gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const StepDriver d = gen.driver(1, 60);
    EXPECT_EQ(parse_angles(angles_to_json(d)), d);
    EXPECT_EQ(parse_angles(angles_to_csv(d)), d);
  }
}

TEST(Trace, JsonRoundTrip) {
  RefinementTrace trace;
  trace.stages.push_back({2, {make_driver({0.1, std::numbers::pi}), 0.0123456789012345, 17, true}});
  trace.stages.push_back({4, {make_driver({0.1, 0.1, 3.0, 3.0}), 0.02, 3, false}});
  const ParsedTrace parsed = parse_trace(trace_to_json("milin2", 42, trace));
  EXPECT_EQ(parsed.functional, "milin2");
  EXPECT_EQ(parsed.seed, 42u);
  ASSERT_EQ(parsed.trace.stages.size(), 2u);
  for (std::size_t s = 0; s < 2; ++s) {
    EXPECT_EQ(parsed.trace.stages[s].m, trace.stages[s].m);
    EXPECT_EQ(parsed.trace.stages[s].result.driver, trace.stages[s].result.driver);
    EXPECT_EQ(parsed.trace.stages[s].result.value, trace.stages[s].result.value);
    EXPECT_EQ(parsed.trace.stages[s].result.iterations, trace.stages[s].result.iterations);
    EXPECT_EQ(parsed.trace.stages[s].result.converged, trace.stages[s].result.converged);
  }
  // a trace is also a valid angle file: the last stage is used
  EXPECT_EQ(parse_angles(trace_to_json("milin2", 42, trace)), trace.stages[1].result.driver);
}

TEST(Trace, Csv) {
  RefinementTrace trace;
  trace.stages.push_back({2, {make_driver({0.5, 1.0}), 0.25, 3, true}});
  EXPECT_EQ(trace_to_csv(trace), "m,value,iterations,converged,angles_rad\n2,0.25,3,true,0.5;1\n");
}

TEST(Trace, RejectsMismatchedStage) {
  EXPECT_THROW(parse_trace(R"({"functional":"odd7","seed":1,"stages":[{"m":3,"value":1,"angles_rad":[1,2],"iterations":0,"converged":false}]})"),
               std::invalid_argument);
}

}  // namespace
}  // namespace loewner
