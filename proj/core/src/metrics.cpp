// SPDX-License-Identifier: Apache-2.0
#include "slf/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace slf {

Rat total_flow_time(const Schedule& sched, const Instance& inst) {
  Rat sum = 0;
  for (const auto& j : inst.jobs) {
    auto it = sched.completions.find(j.id);
    if (it == sched.completions.end())
      throw std::invalid_argument("job " + std::to_string(j.id) + " never completes");
    sum += it->second - j.release.time;
  }
  return sum;
}

Rat integrated_active_count(const Schedule& sched) {
  std::vector<std::pair<Rat, int>> steps;
  for (const auto& j : sched.jobs) {
    steps.emplace_back(j.release.time, +1);
    auto it = sched.completions.find(j.id);
    if (it == sched.completions.end()) throw std::invalid_argument("incomplete schedule");
    steps.emplace_back(it->second, -1);
  }
  std::sort(steps.begin(), steps.end());
  Rat area = 0;
  long count = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (k > 0) area += Rat(count) * (steps[k].first - steps[k - 1].first);
    count += steps[k].second;
  }
  return area;
}

CompetitivenessReport local_competitiveness(const Schedule& alg, const Schedule& opt, const Rat& rho) {
  CompetitivenessReport rep;
  rep.rho = rho;
  rep.max_count_ratio = 0;
  auto ts = event_times(alg);
  auto to = event_times(opt);
  ts.insert(ts.end(), to.begin(), to.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (const auto& t : ts) {
    CountRow row{t, active_count(alg, t), active_count(opt, t)};
    if (row.opt > 0) {
      Rat ratio(static_cast<long>(row.alg), static_cast<long>(row.opt));
      ratio.canonicalize();
      if (ratio > rep.max_count_ratio) rep.max_count_ratio = ratio;
    }
    if (Rat(static_cast<long>(row.alg)) > rho * Rat(static_cast<long>(row.opt))) {
      if (rep.pass) rep.witness_time = t;
      rep.pass = false;
    }
    rep.table.push_back(std::move(row));
  }
  return rep;
}

std::size_t delta_at(const Schedule& sched, const Rat& t, const Rat& threshold) {
  auto e = elapsed_at(sched, t);
  std::size_t n = 0;
  for (const auto& j : sched.jobs) {
    if (j.release.time > t || !j.declared) continue;
    Rat r = j.size - e[j.id];
    if (r > 0 && r >= threshold) ++n;
  }
  return n;
}

std::vector<std::pair<Rat, std::size_t>> delta_profile(const Schedule& sched, const Instance&,
                                                       const Rat& threshold) {
  auto ts = event_times(sched);
  // remaining is linear on each segment; add the instant it drops below the threshold
  std::vector<Rat> extra;
  for_each_segment(sched, [&](const Segment& seg, const std::map<JobId, Rat>& e) {
    for (const auto& [id, rate] : seg.alloc.rates) {
      const Job& j = sched.job(id);
      if (!j.declared) continue;
      Rat r0 = j.size - e.at(id);
      if (r0 >= threshold) {
        Rat cross = seg.start + (r0 - threshold) / rate;
        if (cross < seg.end) extra.push_back(cross);
      }
    }
  });
  ts.insert(ts.end(), extra.begin(), extra.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  // value on (t_k, t_k+1) is constant; sample the midpoint
  std::vector<std::pair<Rat, std::size_t>> out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    Rat probe = k + 1 < ts.size() ? Rat((ts[k] + ts[k + 1]) / 2) : Rat(ts[k] + 1);
    out.emplace_back(ts[k], delta_at(sched, probe, threshold));
  }
  return out;
}

Rat competitive_ratio(const Schedule& alg, const Schedule& opt, const Instance& inst) {
  Rat fo = total_flow_time(opt, inst);
  if (fo == 0) throw std::invalid_argument("optimal flow time is zero");
  return total_flow_time(alg, inst) / fo;
}

}  // namespace slf
