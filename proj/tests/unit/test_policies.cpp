// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "slf/policies.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace slf;

namespace {

JobState st(JobId id, const Rat& e, const Rat& p, const Rat& eps) {
  JobState s;
  s.id = id;
  s.elapsed = e;
  s.remaining = p - e;
  s.known = e >= (1 - eps) * p;
  return s;
}

}  // namespace

TEST_SUITE("policies") {
  TEST_CASE("SLF at t=0 on the toy instance shares equally") {
    Rat eps(1, 2);
    std::vector<JobState> v;
    JobId id = 1;
    for (int p : {5, 4, 3, 3, 2, 1}) v.push_back(st(id++, 0, p, eps));
    auto a = slf_allocation(v, eps, 1);
    REQUIRE(a.rates.size() == 6);
    for (const auto& [j, r] : a.rates) CHECK(r == Rat(1, 6));
  }

  TEST_CASE("SLF at t=3 runs the known job 6") {
    Rat eps(1, 2);
    std::vector<JobState> v;
    JobId id = 1;
    for (int p : {5, 4, 3, 3, 2, 1}) v.push_back(st(id++, Rat(1, 2), p, eps));
    REQUIRE(v[5].known);
    auto a = slf_allocation(v, eps, 1);
    REQUIRE(a.rates.size() == 1);
    CHECK(a.rates[0].first == 6);
    CHECK(a.rates[0].second == 1);
  }

  TEST_CASE("SLF at eps=1 matches SRPT") {
    std::vector<JobState> v{st(1, 0, 3, 1), st(2, 1, 4, 1), st(3, 0, 2, 1)};
    CHECK(slf_allocation(v, 1, 1) == srpt_allocation(v, 1));
  }

  TEST_CASE("SRPT") {
    std::vector<JobState> v;
    JobId id = 1;
    for (int p : {5, 4, 3, 3, 2, 1}) v.push_back(st(id++, 0, p, Rat(1, 2)));
    CHECK(srpt_allocation(v, 1).rates == std::vector<std::pair<JobId, Rat>>{{6, Rat(1)}});
    CHECK(srpt_allocation({st(4, 0, 2, 0)}, 1).rates[0].first == 4);
    CHECK(srpt_allocation({st(2, 0, 2, 0), st(1, 0, 2, 0)}, 1).rates[0].first == 1);
    JobState u = st(9, 0, 1, 0);
    u.declared = false;
    CHECK_THROWS_AS(srpt_allocation({u}, 1), std::invalid_argument);
  }

  TEST_CASE("SETF") {
    auto a = setf_allocation({st(1, 0, 5, 0), st(2, 0, 5, 0), st(3, 1, 5, 0)}, 1);
    CHECK(a.rates == std::vector<std::pair<JobId, Rat>>{{1, Rat(1, 2)}, {2, Rat(1, 2)}});
    CHECK(setf_allocation({st(1, 0, 5, 0)}, 1).rates[0].second == 1);
    auto c = setf_allocation({st(1, Rat(1, 2), 5, 0), st(2, Rat(1, 2), 4, 0), st(3, Rat(1, 2), 3, 0)}, 1);
    for (const auto& [j, r] : c.rates) CHECK(r == Rat(1, 3));
  }

  TEST_CASE("RR") {
    std::vector<JobState> four{st(1, 0, 1, 0), st(2, 0, 1, 0), st(3, 0, 1, 0), st(4, 0, 1, 0)};
    for (const auto& [j, r] : rr_allocation(four, 1).rates) CHECK(r == Rat(1, 4));
    CHECK(rr_allocation({st(1, 0, 1, 0)}, 1).rates[0].second == 1);
    CHECK(rr_allocation({}, 1).empty());
  }

  TEST_CASE("empty active sets are rejected by the priority rules") {
    CHECK_THROWS_AS(slf_allocation({}, Rat(1, 2), 1), std::invalid_argument);
    CHECK_THROWS_AS(srpt_allocation({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(setf_allocation({}, 1), std::invalid_argument);
  }

  TEST_CASE("estimate is continuous at the knowledge transition") {
    Rat eps(1, 3), p(6);
    JobState before = st(1, (1 - eps) * p, p, eps);
    JobState unknown = before;
    unknown.known = false;
    CHECK(estimate(before, eps) == eps * p);
    CHECK(estimate(unknown, eps) == eps * p);
  }

  TEST_CASE("SLF trace properties on random instances") {
    std::mt19937_64 rng(21);
    for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(2, 3)}) {
      for (int i = 0; i < 150; ++i) {
        Instance inst = slf::testing::random_instance(rng, eps);
        Schedule s = simulate(inst, Policy::slf);
        auto a = check_slf_argmin(s);
        auto b = check_new_job_property(s);
        auto c = check_known_blocks_property(s);
        CHECK_MESSAGE(!a, a.value_or(""));
        CHECK_MESSAGE(!b, b.value_or(""));
        CHECK_MESSAGE(!c, c.value_or(""));
      }
    }
  }

  TEST_CASE("policy names") {
    for (Policy p : {Policy::slf, Policy::srpt, Policy::setf, Policy::rr}) CHECK(parse_policy(policy_name(p)) == p);
    CHECK_THROWS_AS(parse_policy("fifo"), InputError);
  }
}
