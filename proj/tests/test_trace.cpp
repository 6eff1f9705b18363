#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "sicspin/error.hpp"
#include "sicspin/trace.hpp"

using namespace sicspin;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_trace_csv(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("basic parse") {
  const Trace t = parse_trace_csv("x,y\n1,2\n2,3.5\n3,-1e-3\n");
  REQUIRE(t.size() == 3);
  CHECK(t.x() == std::vector<double>{1, 2, 3});
  CHECK(t.y() == std::vector<double>{2, 3.5, -1e-3});
  CHECK_FALSE(t.has_errors());
  CHECK(t.units().x == "unitless");
}

TEST_CASE("comments, units, blank lines and CRLF") {
  const Trace t = parse_trace_csv("x,y,yerr\r\n# units: us,arb\r\n\r\n# a comment\r\n0,1,0.1\r\n0.5,0.8,0.2\r\n");
  REQUIRE(t.size() == 2);
  CHECK(t.units().x == "us");
  CHECK(t.units().y == "arb");
  CHECK(t.y_err() == std::vector<double>{0.1, 0.2});
}

TEST_CASE("rejections name the offending line") {
  CHECK(parse_error("x,y\n1,2\n1,3\n").find("line 3") != std::string::npos);
  CHECK(parse_error("x,y\n1,2\n0.5,3\n").find("line 3") != std::string::npos);
  CHECK(parse_error("x,y,yerr\n1,2,0\n").find("line 2") != std::string::npos);
  CHECK(parse_error("x,y,yerr\n1,2,-1\n").find("line 2") != std::string::npos);
  CHECK(parse_error("x,y\n1,2,3\n").find("line 2") != std::string::npos);
  CHECK(parse_error("x,y\n1\n").find("line 2") != std::string::npos);
  CHECK(parse_error("x,y\n1,abc\n").find("line 2") != std::string::npos);
  CHECK(parse_error("x,y\n1,nan\n").find("line 2") != std::string::npos);
  CHECK_FALSE(parse_error("time,signal\n1,2\n").empty());
  CHECK_FALSE(parse_error("").empty());
}

TEST_CASE("format and parse round trip exactly") {
  const double tiny = std::numeric_limits<double>::denorm_min();
  const Trace t({0.1, 0.2, 1.0 / 3.0, 1e10}, {tiny, -0.0, 2.0 / 3.0, 1e-300}, {0.5, 1e-9, 3.0, 7.0},
                Units{"MHz", "normalized"});
  const std::string text = format_trace_csv(t);
  const Trace back = parse_trace_csv(text);
  CHECK(back == t);
  CHECK(format_trace_csv(back) == text);
  CHECK(text.rfind("x,y,yerr\n# units: MHz,normalized\n", 0) == 0);
}

TEST_CASE("trace invariants") {
  CHECK_THROWS_AS(Trace({1, 2}, {1}), Error);
  CHECK_THROWS_AS(Trace({2, 1}, {1, 1}), Error);
  CHECK_THROWS_AS(Trace({1, 2}, {1, std::nan("")}), Error);
  CHECK_THROWS_AS(Trace({1, 2}, {1, 1}, {1, 0}), Error);
  CHECK_NOTHROW(Trace({}, {}));
}
