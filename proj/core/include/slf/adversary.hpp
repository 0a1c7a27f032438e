// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slf/instance.hpp"
#include "slf/sim.hpp"

namespace slf {

struct AdversaryRound {
  int c = 0;
  Rat t_c;        // round start
  Rat t_prime;    // first time a tracked job reached the quota
  Rat t_dprime;   // round end
  Rat gamma;      // work quota
  Rat r_star;     // min remaining over earlier active jobs at t_c (0 in round one)
  JobId j_c = 0;  // lowest id among the jobs reaching the quota
  JobId j_max = 0;
  JobId j_min = 0;
  std::vector<std::pair<JobId, Rat>> declared;
  std::size_t alg_count = 0;
  std::size_t smart_count = 0;
  std::size_t opt_count = 0;  // SRPT on the declared instance, for reference
  bool claim_ok = false;
};

struct AdversaryTranscript {
  Rat epsilon;
  Policy policy = Policy::slf;
  std::vector<AdversaryRound> rounds;
  std::int64_t tail = 0;
  Instance instance;  // every job with its final size, tail included
  Rat flow_alg;
  Rat flow_opt;
  Rat ratio{1};
  bool replay_ok = true;
};

// Thrown when one of the construction's inequalities fails on a run.
class AdversaryClaimFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AdversaryTranscript deterministic_lb_run(Policy policy, const Rat& eps, int rounds, std::int64_t tail);

struct GeometricSample {
  Instance instance;
  Rat tau;
};

// n = 2^k jobs at 0 with sizes 1 + Geom(1/2), ε = 1/(2k).
GeometricSample randomized_lb_sample(int k, std::uint64_t seed);
// ⌊3(n − n^{3/4})⌋ for n = 2^k, computed exactly.
Rat geometric_tau(int k);

Instance phase_lb_sample(const Rat& eps, int phases, std::uint64_t seed);

// Exp(1) sizes quantized to multiples of 2^-64.
Instance exp_simultaneous_sample(int n, std::uint64_t seed, const Rat& eps = Rat(1, 2));

enum class SamplerKind { geometric, phase, exponential };
SamplerKind parse_sampler_kind(const std::string& name);  // throws InputError
std::string sampler_kind_name(SamplerKind k);

struct SampleRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t delta_alg = 0;  // δ(τ,1), geometric only
  std::size_t delta_opt = 0;  // δ*(τ), geometric only
  Rat flow_alg;
  Rat flow_opt;
  double ratio = 0;
};

struct LbSummary {
  SamplerKind kind = SamplerKind::geometric;
  Rat epsilon;
  int param = 0;  // k for geometric and phase, n for exponential
  std::vector<SampleRow> rows;
  double mean_delta_alg = 0;
  double mean_delta_opt = 0;
  double delta_ratio = 0;  // mean δ(τ,1) / mean δ*(τ)
  double mean_ratio = 0;
  double ratio_half_width = 0;  // 95% normal half-width
  double target = 0;            // 2−ε for the exponential family
};

// Runs `samples` instances with seeds seed, seed+1, ... against policy and SRPT.
// The geometric family stops at τ; the others run to completion.
// eps is ignored for the geometric family (it is 1/(2k)).
LbSummary lb_statistics(SamplerKind kind, int param, const Rat& eps, int samples, Policy policy,
                        std::uint64_t seed, unsigned jobs = 1);

}  // namespace slf
