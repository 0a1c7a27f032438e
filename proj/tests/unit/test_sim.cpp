// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "slf/metrics.hpp"
#include "slf/sim.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace slf;
using slf::testing::make_instance;
using slf::testing::toy_instance;

TEST_SUITE("sim") {
  TEST_CASE("toy instance under SLF") {
    Instance toy = toy_instance();
    Schedule s = simulate(toy, Policy::slf);
    CHECK(s.completions.at(6) == Rat(7, 2));
    CHECK(s.completions.at(5) == 7);
    auto e = elapsed_at(s, 9);
    for (JobId j = 1; j <= 4; ++j) CHECK(e.at(j) == Rat(3, 2));
  }

  TEST_CASE("single job finishes at its size") {
    for (Policy p : {Policy::slf, Policy::srpt, Policy::setf, Policy::rr}) {
      Schedule s = simulate(make_instance(Rat(1, 3), {{0, Rat(7, 3)}}), p);
      CHECK(s.completions.at(1) == Rat(7, 3));
    }
  }

  TEST_CASE("late short job under SLF") {
    // job 1 alone until 1, known there with r=1; job 2 arrives with estimate 0,
    // becomes known at 3/2 with r=1/2, completes at 2; job 1 completes at 3
    Schedule s = simulate(make_instance(Rat(1, 2), {{0, 2}, {1, 1}}), Policy::slf);
    CHECK(s.completions.at(2) == 2);
    CHECK(s.completions.at(1) == 3);
    CHECK(s.known_times.at(1) == 1);
    CHECK(s.known_times.at(2) == Rat(3, 2));
    CHECK(total_flow_time(s, make_instance(Rat(1, 2), {{0, 2}, {1, 1}})) == 4);
  }

  TEST_CASE("state_at and active_count") {
    Instance toy = toy_instance();
    Schedule slf = simulate(toy, Policy::slf);
    Schedule opt = simulate(toy, Policy::srpt);
    auto st = state_at(slf, toy, 9);
    REQUIRE(st.size() == 4);
    for (JobId j = 1; j <= 4; ++j) CHECK(st.at(j).elapsed == Rat(3, 2));
    CHECK(active_count(slf, 9) == 4);
    CHECK(active_count(opt, 9) == 2);
    auto zero = state_at(slf, toy, 0);
    CHECK(zero.size() == 6);
    for (const auto& [id, s] : zero) CHECK(s.elapsed == 0);
    CHECK(state_at(slf, toy, 100).empty());
    CHECK(active_count(slf, 100) == 0);
    CHECK(active_count(slf, -1) == 0);
  }

  TEST_CASE("touched_jobs") {
    Instance toy = toy_instance();
    Schedule slf = simulate(toy, Policy::slf);
    CHECK(touched_jobs(slf, 3, Rat(7, 2)) == std::set<JobId>{6});
    CHECK(touched_jobs(slf, 0, 3) == std::set<JobId>{1, 2, 3, 4, 5, 6});
    CHECK(touched_jobs(slf, 2, 2).empty());
  }

  TEST_CASE("work conservation and event exactness on random instances") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
      Instance inst = slf::testing::random_instance(rng, Rat(1, 3));
      for (Policy p : {Policy::slf, Policy::srpt, Policy::setf, Policy::rr}) {
        Schedule s = simulate(inst, p);
        CHECK(s.completions.size() == inst.jobs.size());
        for (std::size_t k = 0; k < s.segments.size(); ++k) {
          const auto& seg = s.segments[k];
          CHECK(seg.start < seg.end);
          if (k > 0) CHECK(s.segments[k - 1].end == seg.start);
          if (!seg.alloc.empty()) CHECK(seg.alloc.total() == 1);
          if (seg.alloc.empty()) CHECK(active_count(s, seg.start) == 0);
        }
        for (const auto& j : inst.jobs) CHECK(elapsed_at(s, s.completions.at(j.id)).at(j.id) == j.size);
      }
    }
  }

  TEST_CASE("replay determinism") {
    std::mt19937_64 rng(8);
    Instance inst = slf::testing::random_instance(rng, Rat(1, 4));
    Schedule a = simulate(inst, Policy::slf), b = simulate(inst, Policy::slf);
    CHECK(a.completions == b.completions);
    CHECK(normalized_segments(a).size() == normalized_segments(b).size());
  }

  TEST_CASE("speed s on J equals speed 1 on the scaled instance") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
      Instance inst = slf::testing::random_instance(rng, Rat(1, 2));
      Rat speed(3, 2);
      Schedule fast = simulate(inst, Policy::setf, speed);
      Schedule slow = simulate(scale_instance(inst, 1 / speed), Policy::setf);
      CHECK(event_times(fast) == event_times(slow));
      CHECK(fast.completions == slow.completions);
    }
  }

  TEST_CASE("forbidden intervals force idling") {
    Instance inst = make_instance(Rat(1, 2), {{0, 2}});
    IntervalSet I({{Rat(1), Rat(2)}});
    Schedule s = simulate(inst, Policy::setf, Rat(1), I);
    CHECK(s.completions.at(1) == 3);
    CHECK(elapsed_at(s, 2).at(1) == 1);
    bool saw_start = false, saw_end = false;
    for (const auto& e : s.events) {
      saw_start = saw_start || (e.kind == EventKind::forbidden_start && e.t == 1);
      saw_end = saw_end || (e.kind == EventKind::forbidden_end && e.t == 2);
    }
    CHECK(saw_start);
    CHECK(saw_end);
  }

  TEST_CASE("interval sets merge overlaps") {
    IntervalSet I({{Rat(3), Rat(4)}, {Rat(1), Rat(2)}, {Rat(2), Rat(3)}});
    REQUIRE(I.intervals().size() == 1);
    CHECK(I.contains(1));
    CHECK_FALSE(I.contains(4));
    CHECK(I.measure_between(0, 10) == 3);
    CHECK_THROWS_AS(IntervalSet({{Rat(2), Rat(2)}}), InputError);
  }

  TEST_CASE("undeclared jobs only accumulate elapsed time") {
    Instance inst;
    inst.epsilon = Rat(1, 2);
    inst.jobs.push_back(Job{1, {Rat(0), 0}, Rat(0), false});
    inst.jobs.push_back(Job{2, {Rat(0), 0}, Rat(0), false});
    Simulator sim(inst, Policy::slf);
    sim.run_until(4);
    CHECK(sim.elapsed(1) == 2);
    CHECK(sim.elapsed(2) == 2);
    CHECK(sim.active_count() == 2);
    sim.declare(1, 4);
    sim.settle();
    CHECK(sim.schedule().known_times.at(1) == 4);
    CHECK_THROWS_AS(Simulator(inst, Policy::srpt), InputError);
  }

  TEST_CASE("event log records arrivals, knowledge and completions") {
    Schedule s = simulate(toy_instance(), Policy::slf);
    std::size_t arrivals = 0, completions = 0, known = 0;
    for (const auto& e : s.events) {
      arrivals += e.kind == EventKind::arrival;
      completions += e.kind == EventKind::completion;
      known += e.kind == EventKind::known;
    }
    CHECK(arrivals == 6);
    CHECK(completions == 6);
    CHECK(known == 6);
  }

  TEST_CASE("bad speed is an input error") {
    CHECK_THROWS_AS(simulate(toy_instance(), Policy::slf, Rat(0)), InputError);
  }
}
