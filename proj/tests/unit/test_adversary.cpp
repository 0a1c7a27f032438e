// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include "doctest.h"
#include "slf/adversary.hpp"
#include "slf/metrics.hpp"

using namespace slf;

TEST_SUITE("adversary") {
  TEST_CASE("one round at eps=1/2") {
    AdversaryTranscript tr = deterministic_lb_run(Policy::slf, Rat(1, 2), 1, 0);
    REQUIRE(tr.rounds.size() == 1);
    const auto& rd = tr.rounds[0];
    CHECK(rd.t_c == 0);
    CHECK(rd.gamma == 1);
    CHECK(rd.t_prime == 2);
    REQUIRE(rd.declared.size() == 2);
    for (const auto& [id, p] : rd.declared) CHECK(p == 2);
    CHECK(rd.alg_count == 2);
    CHECK(rd.smart_count == 1);
    CHECK(rd.claim_ok);
    CHECK(tr.replay_ok);
  }

  TEST_CASE("zero rounds give an empty transcript") {
    AdversaryTranscript tr = deterministic_lb_run(Policy::slf, Rat(1, 2), 0, 0);
    CHECK(tr.rounds.empty());
    CHECK(tr.instance.jobs.empty());
  }

  TEST_CASE("counts after c rounds are c against cK") {
    for (const Rat& eps : {Rat(1, 2), Rat(1, 3), Rat(1, 4)}) {
      AdversaryTranscript tr = deterministic_lb_run(Policy::slf, eps, 3, 0);
      CHECK(tr.replay_ok);
      std::size_t K = static_cast<std::size_t>(ceil_inverse(eps));
      for (const auto& rd : tr.rounds) {
        CHECK(rd.claim_ok);
        CHECK(rd.alg_count == static_cast<std::size_t>(rd.c) * K);
        CHECK(rd.smart_count == static_cast<std::size_t>(rd.c));
      }
    }
  }

  TEST_CASE("tail jobs are unit sized and released on integer offsets") {
    AdversaryTranscript tr = deterministic_lb_run(Policy::slf, Rat(1, 2), 2, 5);
    CHECK(tr.tail == 5);
    std::size_t units = 0;
    Rat end = tr.rounds.back().t_dprime;
    for (const auto& j : tr.instance.jobs)
      if (j.release.time >= end && j.size == 1) ++units;
    CHECK(units == 5);
    CHECK(tr.ratio >= 1);
    CHECK(tr.flow_opt > 0);
  }

  TEST_CASE("geometric sampler") {
    GeometricSample one = randomized_lb_sample(1, 3);
    CHECK(one.tau == 0);
    CHECK(geometric_tau(1) == 0);
    CHECK(one.instance.jobs.size() == 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      for (const auto& j : randomized_lb_sample(4, seed).instance.jobs) {
        CHECK(j.size >= 1);
        CHECK(j.size.get_den() == 1);
      }
    }
    CHECK_THROWS_AS(randomized_lb_sample(0, 1), InputError);
  }

  TEST_CASE("geometric sizes have mean 3") {
    // variance of 2+Geom(1/2) failures is 2
    double sum = 0;
    std::size_t n = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed)
      for (const auto& j : randomized_lb_sample(10, seed).instance.jobs) {
        sum += j.size.get_d();
        ++n;
      }
    double mean = sum / static_cast<double>(n);
    CHECK(std::abs(mean - 3.0) < 3 * std::sqrt(2.0 / static_cast<double>(n)));
  }

  TEST_CASE("phase sampler") {
    Instance one = phase_lb_sample(Rat(1, 2), 1, 5);
    REQUIRE(one.jobs.size() == 2);
    std::multiset<Rat> sizes{one.jobs[0].size, one.jobs[1].size};
    CHECK(sizes == std::multiset<Rat>{9, 18});
    CHECK(phase_lb_sample(Rat(1, 2), 0, 5).jobs.empty());
    Instance three = phase_lb_sample(Rat(1, 2), 3, 5);
    CHECK(three.jobs.size() == 6);
    Rat last = 0;
    for (const auto& j : three.jobs) last = std::max(last, j.release.time);
    CHECK(last == 729 + 81);
    CHECK(three.meta.at("horizon") == "819");
  }

  TEST_CASE("exponential sampler") {
    Instance one = exp_simultaneous_sample(1, 2);
    REQUIRE(one.jobs.size() == 1);
    CHECK(one.jobs[0].size > 0);
    Instance many = exp_simultaneous_sample(10000, 42);
    double sum = 0;
    std::set<Rat> distinct;
    for (const auto& j : many.jobs) {
      sum += j.size.get_d();
      distinct.insert(j.size);
      CHECK(j.release.time == 0);
    }
    double mean = sum / 10000.0;
    CHECK(mean > 0.97);
    CHECK(mean < 1.03);
    CHECK(distinct.size() == many.jobs.size());
    CHECK(exp_simultaneous_sample(50, 9) == exp_simultaneous_sample(50, 9));
    CHECK_FALSE(exp_simultaneous_sample(50, 9) == exp_simultaneous_sample(50, 10));
  }

  TEST_CASE("statistics") {
    LbSummary one = lb_statistics(SamplerKind::exponential, 1, Rat(1, 2), 3, Policy::slf, 1);
    REQUIRE(one.rows.size() == 3);
    for (const auto& r : one.rows) CHECK(r.ratio == doctest::Approx(1.0));
    CHECK(one.target == doctest::Approx(1.5));
    LbSummary geo = lb_statistics(SamplerKind::geometric, 4, Rat(1, 2), 5, Policy::slf, 7);
    CHECK(geo.rows.size() == 5);
    CHECK(geo.rows[0].seed == 7);
    CHECK(geo.rows[4].seed == 11);
    CHECK(geo.mean_delta_alg >= 0);
    LbSummary again = lb_statistics(SamplerKind::geometric, 4, Rat(1, 2), 5, Policy::slf, 7, 2);
    for (std::size_t i = 0; i < 5; ++i) CHECK(geo.rows[i].delta_alg == again.rows[i].delta_alg);
  }

  TEST_CASE("sampler names") {
    CHECK(parse_sampler_kind("exp") == SamplerKind::exponential);
    for (auto k : {SamplerKind::geometric, SamplerKind::phase, SamplerKind::exponential})
      CHECK(parse_sampler_kind(sampler_kind_name(k)) == k);
    CHECK_THROWS_AS(parse_sampler_kind("gauss"), InputError);
  }
}
