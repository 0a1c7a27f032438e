// SPDX-License-Identifier: Apache-2.0
#include "slf/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "slf/metrics.hpp"

namespace slf {

namespace {

std::string claim(const std::string& what, int c) {
  return "round " + std::to_string(c) + ": " + what;
}

}  // namespace

AdversaryTranscript deterministic_lb_run(Policy policy, const Rat& eps, int rounds, std::int64_t tail) {
  if (!(sgn(eps) > 0 && eps < 1)) throw InputError("adversary needs epsilon in (0,1)");
  if (rounds < 0 || tail < 0) throw InputError("rounds and tail must be non-negative");
  if (policy == Policy::srpt) throw InputError("SRPT needs sizes up front and cannot face the adversary");

  AdversaryTranscript tr;
  tr.epsilon = eps;
  tr.policy = policy;
  tr.tail = tail;
  tr.instance.epsilon = eps;
  tr.instance.meta["kind"] = "deterministic";
  tr.instance.meta["rounds"] = std::to_string(rounds);
  tr.instance.meta["tail"] = std::to_string(tail);

  const std::int64_t K = ceil_inverse(eps);  // k + 1
  Instance empty;
  empty.epsilon = eps;
  Simulator sim(empty, policy);
  JobId next_id = 1;
  std::vector<JobId> earlier;  // jobs of finished rounds
  std::map<JobId, Rat> sizes;

  for (int c = 1; c <= rounds; ++c) {
    AdversaryRound rd;
    rd.c = c;
    rd.t_c = sim.now();

    std::vector<JobId> q;
    for (JobId id : earlier)
      if (!sim.completed(id)) q.push_back(id);
    if (c == 1) {
      rd.r_star = 0;
      rd.gamma = 1;
    } else {
      if (q.empty()) throw AdversaryClaimFailure(claim("no earlier job is active", c));
      bool first = true;
      for (JobId id : q) {
        Rat r = sizes.at(id) - sim.elapsed(id);
        if (first || r < rd.r_star) rd.r_star = r;
        first = false;
      }
      rd.gamma = rd.r_star / Rat(K) * (1 - eps) / eps;
      if (!(rd.gamma < rd.r_star)) throw AdversaryClaimFailure(claim("gamma >= r*", c));
    }

    std::vector<JobId> batch;
    for (std::int64_t i = 0; i < K; ++i) {
      Job j;
      j.id = next_id++;
      j.release = {sim.now(), 0};
      j.declared = false;
      sim.add_job(j);
      batch.push_back(j.id);
    }

    std::vector<JobId> tracked = q;
    tracked.insert(tracked.end(), batch.begin(), batch.end());
    std::map<JobId, Rat> base;
    for (JobId id : tracked) base[id] = sim.elapsed(id);

    // Step until some tracked job has received gamma units since t_c.
    for (;;) {
      std::vector<JobId> hit;
      for (JobId id : tracked)
        if (sim.elapsed(id) - base[id] >= rd.gamma) hit.push_back(id);
      if (!hit.empty()) {
        rd.j_c = *std::min_element(hit.begin(), hit.end());
        break;
      }
      const Allocation& a = sim.settle();
      std::optional<Rat> t_hit;
      for (JobId id : tracked) {
        Rat rate = a.rate_of(id);
        if (sgn(rate) <= 0) continue;
        Rat t = sim.now() + (rd.gamma - (sim.elapsed(id) - base[id])) / rate;
        if (!t_hit || t < *t_hit) t_hit = t;
      }
      if (!t_hit && !sim.next_event()) throw AdversaryClaimFailure(claim("machine idles before the quota", c));
      sim.advance(t_hit);
    }
    rd.t_prime = sim.now();

    Rat untouched = eps * rd.gamma / (1 - eps);
    std::map<JobId, Rat> r;
    for (JobId id : batch) {
      Rat e = sim.elapsed(id);
      Rat p = sgn(e) > 0 ? Rat(e / (1 - eps)) : untouched;
      sim.declare(id, p);
      sizes[id] = p;
      r[id] = p - e;
      rd.declared.emplace_back(id, p);
    }
    sim.settle();

    rd.j_max = batch.front();
    for (JobId id : batch)
      if (r[id] > r[rd.j_max]) rd.j_max = id;
    rd.j_min = 0;
    for (JobId id : batch) {
      if (id == rd.j_max) continue;
      if (rd.j_min == 0 || r[id] < r[rd.j_min]) rd.j_min = id;
    }
    Rat rest = 0, rest_p = 0;
    for (JobId id : batch)
      if (id != rd.j_max) {
        rest += r[id];
        rest_p += sizes[id];
      }
    rd.claim_ok = rest < rd.gamma + r[rd.j_min];
    if (!rd.claim_ok) throw AdversaryClaimFailure(claim("r(J_c \\ j_max) >= gamma + r_jmin", c));
    for (JobId id : q)
      if (sizes.at(id) - sim.elapsed(id) < r[rd.j_min])
        throw AdversaryClaimFailure(claim("an earlier job is shorter than j_min", c));

    rd.t_dprime = rd.t_c + rest_p;
    if (rd.t_dprime < rd.t_prime) throw AdversaryClaimFailure(claim("t'' before t'", c));
    if (!(rd.t_dprime < rd.t_prime + r[rd.j_min])) throw AdversaryClaimFailure(claim("t'' >= t' + r_jmin", c));
    sim.run_until(rd.t_dprime);
    rd.alg_count = sim.active_count();
    rd.smart_count = static_cast<std::size_t>(c);
    earlier.insert(earlier.end(), batch.begin(), batch.end());
    tr.rounds.push_back(std::move(rd));
  }

  // unit jobs back to back after the last round
  const Rat tail_start = sim.now();
  for (std::int64_t i = 0; i < tail; ++i) {
    Job j;
    j.id = next_id++;
    j.release = {tail_start + Rat(static_cast<long>(i)), 0};
    j.size = 1;
    sim.add_job(j);
    sizes[j.id] = 1;
  }
  sim.run_to_end();
  Schedule live = sim.take_schedule();
  tr.instance.jobs = live.jobs;

  if (tr.instance.jobs.empty()) return tr;
  Schedule replay = simulate(tr.instance, policy);
  Schedule opt = simulate(tr.instance, Policy::srpt);
  // jobs of later rounds released exactly at t''_c are not counted
  auto count_upto = [&](const Schedule& s, const AdversaryRound& rd) {
    JobId last = rd.declared.back().first;
    std::size_t n = 0;
    for (const auto& [id, st] : state_at(s, tr.instance, rd.t_dprime))
      if (id <= last) ++n;
    return n;
  };
  for (auto& rd : tr.rounds) {
    rd.opt_count = count_upto(opt, rd);
    if (count_upto(replay, rd) != rd.alg_count) tr.replay_ok = false;
  }
  if (replay.completions != live.completions) tr.replay_ok = false;
  tr.flow_alg = total_flow_time(live, tr.instance);
  tr.flow_opt = total_flow_time(opt, tr.instance);
  tr.ratio = tr.flow_alg / tr.flow_opt;
  return tr;
}

// ---------------------------------------------------------------------------

Rat geometric_tau(int k) {
  if (k < 1 || k > 60) throw InputError("k must be in [1, 60]");
  mpz_class n = mpz_class(1) << k;
  mpz_class x = 81 * (mpz_class(1) << (3 * k));  // (3 n^{3/4})^4
  mpz_class root;
  mpz_root(root.get_mpz_t(), x.get_mpz_t(), 4);
  mpz_class p = root * root * root * root;
  if (p != x) root += 1;
  return Rat(3 * n - root);
}

GeometricSample randomized_lb_sample(int k, std::uint64_t seed) {
  if (k < 1 || k > 24) throw InputError("k must be in [1, 24]");
  std::mt19937_64 rng(seed);
  std::geometric_distribution<int> geo(0.5);  // failures before the first success
  GeometricSample out;
  out.instance.epsilon = Rat(1, 2 * k);
  out.instance.meta = {{"kind", "geometric"}, {"k", std::to_string(k)}, {"seed", std::to_string(seed)}};
  const long n = 1L << k;
  out.instance.jobs.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Job j;
    j.id = i + 1;
    j.release = {Rat(0), 0};
    j.size = Rat(2 + geo(rng));  // P = 1 + Y with Y counting trials, so E[P] = 3
    out.instance.jobs.push_back(std::move(j));
  }
  out.tau = geometric_tau(k);
  return out;
}

Instance phase_lb_sample(const Rat& eps, int phases, std::uint64_t seed) {
  if (!(sgn(eps) > 0 && eps < 1)) throw InputError("phase sampler needs epsilon in (0,1)");
  if (phases < 0) throw InputError("phase count must be non-negative");
  Rat lambda = (5 - eps) / (1 - eps);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  Instance inst;
  inst.epsilon = eps;
  inst.meta = {{"kind", "phase"}, {"k", std::to_string(phases)}, {"seed", std::to_string(seed)},
               {"lambda", to_string(lambda)}};
  Rat start = 0;
  JobId id = 1;
  for (int i = phases; i >= 1; --i) {
    Rat len = 1;
    for (int m = 0; m < i; ++m) len *= lambda;
    bool first_short = coin(rng);
    Job a{id++, {start, 0}, first_short ? len : Rat(2 * len), true};
    Job b{id++, {start, 0}, first_short ? Rat(2 * len) : len, true};
    inst.jobs.push_back(std::move(a));
    inst.jobs.push_back(std::move(b));
    start += len;
  }
  inst.meta["horizon"] = to_string(start);
  return inst;
}

Instance exp_simultaneous_sample(int n, std::uint64_t seed, const Rat& eps) {
  if (n < 1) throw InputError("n must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> dist(1.0);
  Instance inst;
  inst.epsilon = eps;
  inst.meta = {{"kind", "exponential"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)},
               {"quantization", "floor(x*2^64)/2^64, min 2^-64"}};
  const mpz_class denom = mpz_class(1) << 64;
  for (int i = 0; i < n; ++i) {
    double x = dist(rng);
    mpz_class num(std::floor(std::ldexp(x, 64)));
    if (num < 1) num = 1;
    Rat size(num, denom);
    size.canonicalize();
    inst.jobs.push_back(Job{i + 1, {Rat(0), 0}, size, true});
  }
  return inst;
}

SamplerKind parse_sampler_kind(const std::string& name) {
  if (name == "geometric") return SamplerKind::geometric;
  if (name == "phase") return SamplerKind::phase;
  if (name == "exp" || name == "exponential") return SamplerKind::exponential;
  throw InputError("unknown sampler kind '" + name + "'");
}

std::string sampler_kind_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::geometric: return "geometric";
    case SamplerKind::phase: return "phase";
    case SamplerKind::exponential: return "exponential";
  }
  return "?";
}

namespace {

SampleRow geometric_row(int k, std::uint64_t seed, Policy policy) {
  auto g = randomized_lb_sample(k, seed);
  SampleRow row;
  row.seed = seed;
  row.n = g.instance.jobs.size();
  SimOptions o;
  o.record_segments = false;
  Simulator alg(g.instance, policy, o);
  alg.run_until(g.tau);
  for (const auto& s : alg.active())
    if (s.remaining >= 1) ++row.delta_alg;
  Simulator opt(g.instance, Policy::srpt, o);
  opt.run_until(g.tau);
  row.delta_opt = opt.active_count();
  row.ratio = row.delta_opt ? static_cast<double>(row.delta_alg) / static_cast<double>(row.delta_opt) : 0.0;
  return row;
}

SampleRow flow_row(const Instance& inst, std::uint64_t seed, Policy policy) {
  SampleRow row;
  row.seed = seed;
  row.n = inst.jobs.size();
  SimOptions o;
  o.record_segments = false;
  row.flow_alg = total_flow_time(simulate(inst, policy, o), inst);
  row.flow_opt = total_flow_time(simulate(inst, Policy::srpt, o), inst);
  row.ratio = sgn(row.flow_opt) > 0 ? to_double(row.flow_alg / row.flow_opt) : 1.0;
  return row;
}

}  // namespace

LbSummary lb_statistics(SamplerKind kind, int param, const Rat& eps, int samples, Policy policy,
                        std::uint64_t seed, unsigned jobs) {
  if (samples < 0) throw InputError("sample count must be non-negative");
  LbSummary sum;
  sum.kind = kind;
  sum.param = param;
  sum.epsilon = kind == SamplerKind::geometric ? Rat(1, 2 * std::max(param, 1)) : eps;
  if (kind == SamplerKind::exponential) sum.target = 2 - to_double(eps);
  sum.rows.resize(static_cast<std::size_t>(samples));

  auto one = [&](std::size_t i) {
    std::uint64_t s = seed + i;
    switch (kind) {
      case SamplerKind::geometric: sum.rows[i] = geometric_row(param, s, policy); break;
      case SamplerKind::phase: sum.rows[i] = flow_row(phase_lb_sample(eps, param, s), s, policy); break;
      case SamplerKind::exponential:
        sum.rows[i] = flow_row(exp_simultaneous_sample(param, s, eps), s, policy);
        break;
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || samples < 2) {
    for (std::size_t i = 0; i < sum.rows.size(); ++i) one(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sum.rows.size(); i += jobs) one(i);
      });
    for (auto& th : pool) th.join();
  }
  if (sum.rows.empty()) return sum;

  double n = static_cast<double>(sum.rows.size());
  double sa = 0, so = 0, sr = 0, sr2 = 0;
  for (const auto& r : sum.rows) {
    sa += static_cast<double>(r.delta_alg);
    so += static_cast<double>(r.delta_opt);
    sr += r.ratio;
    sr2 += r.ratio * r.ratio;
  }
  sum.mean_delta_alg = sa / n;
  sum.mean_delta_opt = so / n;
  sum.delta_ratio = so > 0 ? sa / so : 0.0;
  sum.mean_ratio = sr / n;
  if (n > 1) {
    double var = std::max(0.0, (sr2 - n * sum.mean_ratio * sum.mean_ratio) / (n - 1));
    sum.ratio_half_width = 1.96 * std::sqrt(var / n);
  }
  return sum;
}

}  // namespace slf
