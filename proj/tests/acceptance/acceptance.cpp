// SPDX-License-Identifier: Apache-2.0
//
// One line per criterion: "[PASS] C<n> ..." or "[FAIL] C<n> ...".
// Usage: slf_acceptance [criterion...]   (no arguments runs all of them)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slf/adversary.hpp"
#include "slf/certifier.hpp"
#include "slf/metrics.hpp"
#include "slf/reduction.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace slf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  bool gating;
  std::function<Outcome()> run;
};

bool same_segments(const Schedule& a, const Schedule& b) {
  auto x = normalized_segments(a), y = normalized_segments(b);
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k].start != y[k].start || x[k].end != y[k].end || !(x[k].alloc == y[k].alloc)) return false;
  return true;
}

Outcome c1_worked_example() {
  auto t0 = std::chrono::steady_clock::now();
  Instance toy = slf::testing::toy_instance();
  Schedule s = simulate(toy, Policy::slf);
  auto e = elapsed_at(s, 9);
  bool ok = s.completions.at(6) == Rat(7, 2) && s.completions.at(5) == 7;
  for (JobId j = 1; j <= 4; ++j) ok = ok && e.at(j) == Rat(3, 2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream d;
  d << "C6=" << to_string(s.completions.at(6)) << " C5=" << to_string(s.completions.at(5))
    << " e1..4(9)=" << to_string(e.at(1)) << " runtime=" << secs << "s";
  return {ok && secs < 1.0, d.str()};
}

Outcome c2_assignment() {
  Graph g = update_valid_assignment(slf::testing::toy_instance(), {1, 2, 3, 4, 5, 6}, 0, 9, Graph{});
  Rat phi = prefix_expansion(g);
  bool edges = g.edges.size() == 4 && g.edges.count({1, 1}) && g.edges.at({1, 1}) == Rat(7, 2) &&
               g.edges.count({2, 2}) && g.edges.at({2, 2}) == Rat(5, 2) && g.edges.count({3, 1}) &&
               g.edges.at({3, 1}) == Rat(3, 2) && g.edges.count({4, 2}) && g.edges.at({4, 2}) == Rat(3, 2);
  return {edges && phi == 2, "phi=" + to_string(phi) + " edges=" + std::to_string(g.edges.size())};
}

Outcome c3_degeneration() {
  std::mt19937_64 rng(301);
  int ok1 = 0, ok0 = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    Instance inst = slf::testing::random_instance(rng, Rat(1));
    ok1 += same_segments(simulate(inst, Policy::slf), simulate(inst, Policy::srpt));
    inst.epsilon = 0;
    ok0 += same_segments(simulate(inst, Policy::slf), simulate(inst, Policy::setf));
  }
  return {ok1 == n && ok0 == n,
          "eps=1 vs SRPT " + std::to_string(ok1) + "/1000, eps=0 vs SETF " + std::to_string(ok0) + "/1000"};
}

Outcome c4_local() {
  std::mt19937_64 rng(401);
  int ok = 0, total = 0;
  std::string first_bad;
  for (const Rat& eps : {Rat(1, 5), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(9, 10)}) {
    for (int i = 0; i < 1000; ++i) {
      Instance inst = slf::testing::random_instance(rng, eps);
      auto rep = local_competitiveness(simulate(inst, Policy::slf), simulate(inst, Policy::srpt),
                                       Rat(ceil_inverse(eps)));
      ++total;
      if (rep.pass)
        ++ok;
      else if (first_bad.empty())
        first_bad = " first violation eps=" + to_string(eps) + " t=" + to_string(*rep.witness_time);
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + first_bad};
}

Outcome c5_certificates() {
  std::mt19937_64 rng(501);
  slf::testing::RandomSpec spec;
  spec.max_jobs = 12;
  const Rat eps_grid[] = {Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(2, 3), Rat(3, 4)};
  int certs = 0, ok = 0;
  std::string first_bad;
  for (int i = 0; i < 300; ++i) {
    Instance inst = slf::testing::random_instance(rng, eps_grid[i % 5], spec);
    Schedule s = simulate(inst, Policy::slf);
    for (const Rat& t : event_times(s)) {
      ++certs;
      try {
        Certificate c = create_valid_assignment(inst, t);
        bool inv = true;
        for (const auto& r : c.transcript) inv = inv && r.inv1 && r.inv2 && r.inv3;
        if (inv && verify_certificate(c).pass())
          ++ok;
        else if (first_bad.empty())
          first_bad = " first failure instance " + std::to_string(i) + " t=" + to_string(t);
      } catch (const CertificationFailure& f) {
        if (first_bad.empty())
          first_bad = " first failure instance " + std::to_string(i) + " t=" + to_string(t) + ": " + f.what();
      }
    }
  }
  return {ok == certs, std::to_string(ok) + "/" + std::to_string(certs) + " certificates" + first_bad};
}

Outcome c6_adversary() {
  bool counts = true, ratio_ok = true;
  std::ostringstream d;
  for (const Rat& eps : {Rat(1, 2), Rat(1, 3), Rat(1, 4)}) {
    std::size_t K = static_cast<std::size_t>(ceil_inverse(eps));
    AdversaryTranscript tr = deterministic_lb_run(Policy::slf, eps, 5, 10000);
    for (const auto& rd : tr.rounds)
      counts = counts && rd.claim_ok && rd.smart_count == static_cast<std::size_t>(rd.c) &&
               rd.alg_count == static_cast<std::size_t>(rd.c) * K;
    counts = counts && tr.replay_ok && tr.rounds.size() == 5;
    double ratio = tr.ratio.get_d();
    ratio_ok = ratio_ok && ratio >= static_cast<double>(K) - 0.01;
    d << " eps=" << to_string(eps) << " ratio=" << ratio << " (need " << static_cast<double>(K) - 0.01 << ")";
  }
  return {counts && ratio_ok, std::string("counts ") + (counts ? "exact" : "WRONG") + ";" + d.str()};
}

Outcome c7_simultaneous() {
  bool ok = true;
  std::ostringstream d;
  for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
    LbSummary s = lb_statistics(SamplerKind::exponential, 200, eps, 200, Policy::slf, 7001);
    Rat bound = 2 - eps;
    int within = 0;
    for (const auto& r : s.rows) within += r.flow_alg <= bound * r.flow_opt;
    bool mean_ok = std::abs(s.mean_ratio - bound.get_d()) <= 0.15;
    ok = ok && within == static_cast<int>(s.rows.size()) && mean_ok;
    d << " eps=" << to_string(eps) << " bound " << within << "/" << s.rows.size() << " mean=" << s.mean_ratio
      << " target=" << bound.get_d();
  }
  return {ok, d.str()};
}

Outcome c8_reduction() {
  std::mt19937_64 rng(801);
  int ok = 0, total = 0;
  std::string first_bad;
  for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
    for (int i = 0; i < 500; ++i) {
      Instance inst = slf::testing::random_instance(rng, eps);
      ReductionReport r = reduction_check(inst, eps);
      ++total;
      if (r.pass()) {
        ++ok;
      } else if (first_bad.empty()) {
        for (const auto& c : r.checks)
          if (!c.pass) first_bad = " first failure: " + c.name + " " + c.detail;
      }
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + first_bad};
}

Outcome c9_water_filling() {
  std::mt19937_64 rng(901);
  int ok = 0;
  std::string first_bad;
  for (int i = 0; i < 10000; ++i) {
    DominanceReport d = water_filling_dominance(slf::testing::random_water_filling(rng));
    if (d.holds)
      ++ok;
    else if (first_bad.empty())
      first_bad = " first failure: " + d.detail;
  }
  return {ok == 10000, std::to_string(ok) + "/10000" + first_bad};
}

Outcome c10_trend() {
  std::ostringstream d;
  double prev = -1;
  bool mono = true;
  for (int k : {6, 8, 10}) {
    LbSummary s = lb_statistics(SamplerKind::geometric, k, Rat(1, 2), 200, Policy::slf, 10001);
    mono = mono && s.delta_ratio >= prev;
    prev = s.delta_ratio;
    d << " k=" << k << " mean delta=" << s.mean_delta_alg << " mean delta*=" << s.mean_delta_opt
      << " ratio=" << s.delta_ratio;
  }
  return {mono, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "worked example exactness", true, c1_worked_example},
      {2, "assignment machinery exactness", true, c2_assignment},
      {3, "policy degeneration", true, c3_degeneration},
      {4, "local competitiveness suite", true, c4_local},
      {5, "certificate suite", true, c5_certificates},
      {6, "deterministic adversary", true, c6_adversary},
      {7, "simultaneous release", true, c7_simultaneous},
      {8, "reduction chain", true, c8_reduction},
      {9, "water-filling dominance", true, c9_water_filling},
      {10, "randomized lower-bound trend (diagnostic)", false, c10_trend},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] C%d %s: %s [%.1fs]%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs,
                c.gating ? "" : " (non-gating)");
    std::fflush(stdout);
    if (!o.pass && c.gating) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
