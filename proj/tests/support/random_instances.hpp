// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <set>

#include "slf/instance.hpp"
#include "slf/reduction.hpp"

namespace slf::testing {

inline Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

// Small rationals with denominators in {1,2,3,4}.
inline Rat small_rat(std::mt19937_64& rng, int max_num, int min_num = 0) {
  std::uniform_int_distribution<int> den(1, 4);
  int d = den(rng);
  std::uniform_int_distribution<int> num(min_num * d, max_num * d);
  Rat r(num(rng), d);
  r.canonicalize();
  return r;
}

struct RandomSpec {
  int max_jobs = 10;
  int max_release = 8;
  int max_size = 6;
  bool distinct_sizes = false;
  bool clustered = true;  // releases drawn from a few shared values
};

inline Instance random_instance(std::mt19937_64& rng, const Rat& eps, const RandomSpec& spec = {}) {
  Instance inst;
  inst.epsilon = eps;
  std::uniform_int_distribution<int> count(1, spec.max_jobs);
  int n = count(rng);
  std::vector<Rat> releases;
  int pool = spec.clustered ? std::max(1, n / 2) : n;
  for (int i = 0; i < pool; ++i) releases.push_back(small_rat(rng, spec.max_release));
  std::uniform_int_distribution<int> pick(0, pool - 1);
  std::set<Rat> used;
  for (int i = 0; i < n; ++i) {
    Rat size;
    do {
      size = small_rat(rng, spec.max_size);
      if (sgn(size) == 0) size = Rat(1, 4);
    } while (spec.distinct_sizes && used.count(size));
    used.insert(size);
    inst.jobs.push_back(Job{i + 1, {releases[static_cast<std::size_t>(pick(rng))], 0}, size, true});
  }
  return inst;
}

inline WaterFillingConfig random_water_filling(std::mt19937_64& rng, int max_jars = 10) {
  std::uniform_int_distribution<int> count(1, max_jars);
  int n = count(rng);
  WaterFillingConfig cfg;
  for (int i = 0; i < n; ++i) {
    Rat p = small_rat(rng, 6, 1);
    std::uniform_int_distribution<int> a(0, 12), b(0, 12);
    int u = a(rng), v = b(rng);
    if (u > v) std::swap(u, v);
    cfg.p.push_back(p);
    cfg.x.push_back(p * frac(u, 12));
    cfg.x_prime.push_back(p * frac(v, 12));
  }
  return cfg;
}

inline std::vector<std::pair<Rat, Rat>> random_intervals(std::mt19937_64& rng, int max_count = 3) {
  std::uniform_int_distribution<int> count(0, max_count);
  std::vector<std::pair<Rat, Rat>> iv;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Rat a = small_rat(rng, 12);
    Rat len = small_rat(rng, 3, 1);
    iv.emplace_back(a, a + len);
  }
  return iv;
}

}  // namespace slf::testing
