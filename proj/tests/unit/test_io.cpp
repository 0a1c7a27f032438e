// SPDX-License-Identifier: Apache-2.0
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "slf/certifier.hpp"
#include "slf/io.hpp"
#include "slf/metrics.hpp"
#include "support/fixtures.hpp"

using namespace slf;
using nlohmann::json;
using slf::testing::make_instance;
using slf::testing::toy_instance;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("schedule CSV") {
    Schedule s = simulate(make_instance(Rat(1), {{0, 3}, {1, 1}}), Policy::srpt);
    auto ls = lines(schedule_csv(s));
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "start,end,job_id,rate");
    CHECK(ls[1] == "0,1,1,1");
    CHECK(ls[2] == "1,2,2,1");
    CHECK(ls[3] == "2,4,1,1");
  }

  TEST_CASE("fractional rates print exactly") {
    Schedule s = simulate(make_instance(Rat(1), {{0, 1}, {0, 1}, {0, 1}}), Policy::rr);
    auto ls = lines(schedule_csv(s));
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == "0,3,1,1/3");
  }

  TEST_CASE("event log JSONL") {
    Schedule s = simulate(make_instance(Rat(1, 2), {{0, 2}}), Policy::slf);
    auto ls = lines(events_jsonl(s));
    REQUIRE_FALSE(ls.empty());
    for (const auto& l : ls) {
      json e = json::parse(l);
      CHECK(e.contains("t"));
      CHECK(e["t"].is_string());
      CHECK(e.contains("kind"));
      CHECK(e.contains("job"));
    }
    CHECK(json::parse(ls.front())["kind"] == "arrival");
    CHECK(json::parse(ls.back())["kind"] == "completion");
  }

  TEST_CASE("metrics JSON and counts CSV") {
    Instance toy = toy_instance();
    Schedule a = simulate(toy, Policy::slf), o = simulate(toy, Policy::srpt);
    auto local = local_competitiveness(a, o, 2);
    json m = json::parse(metrics_json(total_flow_time(a, toy), total_flow_time(o, toy), local));
    CHECK(m["flow_alg"] == "66");
    CHECK(m["flow_opt"] == "50");
    CHECK(m["ratio"] == "33/25");
    CHECK(m["local_ok"] == true);
    CHECK(m["witness"].is_null());
    CHECK(lines(counts_csv(local)).front() == "t,count_alg,count_opt");
  }

  TEST_CASE("certificate and verification JSON") {
    Certificate c = create_valid_assignment(toy_instance(), 9);
    json j = json::parse(certificate_json(c));
    CHECK(j.is_object());
    json v = json::parse(verify_json(verify_certificate(c)));
    CHECK(v.is_object());
    for (const auto& l : lines(transcript_jsonl(c.transcript))) CHECK(json::parse(l).contains("kind"));
  }

  TEST_CASE("interval parsing") {
    IntervalSet a = parse_intervals(R"([["1","2"],["3","7/2"]])");
    CHECK(a.intervals().size() == 2);
    IntervalSet b = parse_intervals(R"({"forbidden":[[1,2]]})");
    CHECK(b.measure_between(0, 5) == 1);
    CHECK_THROWS_AS(parse_intervals(R"([[1]])"), InputError);
    CHECK_THROWS_AS(parse_intervals("nope"), InputError);
  }

  TEST_CASE("missing files are input errors") {
    CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), InputError);
  }
}
