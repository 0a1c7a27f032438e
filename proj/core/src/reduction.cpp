// SPDX-License-Identifier: Apache-2.0
#include "slf/reduction.hpp"

#include <algorithm>

namespace slf {

namespace {

// Elapsed vectors at each of the sorted times, in one pass over the segments.
std::vector<std::map<JobId, Rat>> elapsed_series(const Schedule& sched, const std::vector<Rat>& times) {
  std::vector<std::map<JobId, Rat>> out;
  out.reserve(times.size());
  std::map<JobId, Rat> e;
  for (const auto& j : sched.jobs) {
    auto it = sched.initial_elapsed.find(j.id);
    e[j.id] = it == sched.initial_elapsed.end() ? Rat(0) : it->second;
  }
  std::size_t k = 0;
  Rat at = sched.segments.empty() ? Rat(0) : sched.segments.front().start;
  for (const auto& t : times) {
    while (k < sched.segments.size() && sched.segments[k].start < t) {
      const Segment& seg = sched.segments[k];
      Rat from = max_rat(at, seg.start);
      const Rat& to = min_rat(seg.end, t);
      for (const auto& [id, r] : seg.alloc.rates) e[id] += r * (to - from);
      at = to;
      if (seg.end <= t)
        ++k;
      else
        break;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<Rat> merged_times(std::initializer_list<const Schedule*> scheds) {
  std::vector<Rat> ts;
  for (const Schedule* s : scheds) {
    auto e = event_times(*s);
    ts.insert(ts.end(), e.begin(), e.end());
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

Instance jar_instance(const std::vector<Rat>& p) {
  Instance inst;
  inst.epsilon = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    inst.jobs.push_back(Job{static_cast<JobId>(i + 1), {Rat(0), 0}, p[i], true});
  return inst;
}

Schedule fill(const std::vector<Rat>& levels, const std::vector<Rat>& p) {
  SimOptions o;
  for (std::size_t i = 0; i < levels.size(); ++i) o.initial_elapsed[static_cast<JobId>(i + 1)] = levels[i];
  return simulate(jar_instance(p), Policy::setf, o);
}

}  // namespace

void validate_water_filling(const WaterFillingConfig& cfg) {
  if (cfg.x.size() != cfg.p.size() || cfg.x_prime.size() != cfg.p.size())
    throw InputError("water-filling vectors differ in length");
  for (std::size_t i = 0; i < cfg.p.size(); ++i) {
    if (sgn(cfg.p[i]) <= 0) throw InputError("jar capacity must be positive");
    if (sgn(cfg.x[i]) < 0 || cfg.x[i] > cfg.x_prime[i] || cfg.x_prime[i] > cfg.p[i])
      throw InputError("need 0 <= x <= x' <= p at jar " + std::to_string(i + 1));
  }
}

std::pair<Schedule, Schedule> water_filling_trajectories(const WaterFillingConfig& cfg) {
  validate_water_filling(cfg);
  return {fill(cfg.x, cfg.p), fill(cfg.x_prime, cfg.p)};
}

DominanceReport water_filling_dominance(const WaterFillingConfig& cfg) {
  auto [a, b] = water_filling_trajectories(cfg);
  DominanceReport rep;
  auto ts = merged_times({&a, &b});
  auto ea = elapsed_series(a, ts);
  auto eb = elapsed_series(b, ts);
  for (std::size_t k = 0; k < ts.size() && rep.holds; ++k)
    for (const auto& [id, v] : ea[k])
      if (v > eb[k].at(id)) {
        rep.holds = false;
        rep.witness_time = ts[k];
        rep.witness_job = id;
        rep.detail = "jar " + std::to_string(id) + ": " + to_string(v) + " > " + to_string(eb[k].at(id));
        break;
      }
  return rep;
}

SetfiReport setfi_vs_setf(const Instance& inst, const IntervalSet& forbidden) {
  SetfiReport rep;
  rep.setf = simulate(inst, Policy::setf);
  rep.setfi = simulate(inst, Policy::setf, Rat(1), forbidden);
  auto ts = merged_times({&rep.setf, &rep.setfi});
  auto e = elapsed_series(rep.setf, ts);
  auto ei = elapsed_series(rep.setfi, ts);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    for (const auto& [id, v] : ei[k])
      if (v > e[k].at(id)) {
        rep.pass = false;
        rep.detail = "job " + std::to_string(id) + " has more SETFI work";
      }
    std::size_t a = active_count(rep.setf, ts[k]);
    std::size_t b = active_count(rep.setfi, ts[k]);
    if (a > b) {
      rep.pass = false;
      rep.detail = "|SETF|=" + std::to_string(a) + " > |SETFI|=" + std::to_string(b);
    }
    if (!rep.pass) {
      rep.witness_time = ts[k];
      break;
    }
  }
  return rep;
}

IntervalSet known_work_intervals(const Schedule& slf) {
  std::vector<std::pair<Rat, Rat>> iv;
  for (const auto& seg : slf.segments) {
    if (!(seg.start < seg.end)) continue;
    bool known = false;
    for (const auto& [id, r] : seg.alloc.rates) {
      auto it = slf.known_times.find(id);
      known = known || (it != slf.known_times.end() && it->second <= seg.start);
    }
    if (known) iv.emplace_back(seg.start, seg.end);
  }
  return IntervalSet(std::move(iv));
}

bool ReductionReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ReductionReport reduction_check(const Instance& inst, const Rat& eps) {
  if (!(sgn(eps) > 0 && eps < 1)) throw InputError("reduction needs epsilon in (0,1)");
  Instance j = inst;
  j.epsilon = eps;
  validate_instance(j);

  ReductionReport rep;
  rep.epsilon = eps;
  rep.delta = eps / (1 - eps);
  Schedule slf = simulate(j, Policy::slf);
  rep.forbidden = known_work_intervals(slf);
  Instance jp = scale_instance(j, 1 - eps);
  Schedule fast = simulate(j, Policy::setf, 1 + rep.delta);
  Schedule scaled = simulate(jp, Policy::setf);
  Schedule setfi = simulate(jp, Policy::setf, Rat(1), rep.forbidden);

  // speed 1+δ on J against speed 1 on J′: same boundaries, same running sets
  CheckResult ident{"scale identity", true, ""};
  auto na = normalized_segments(fast);
  auto nb = normalized_segments(scaled);
  if (na.size() != nb.size()) {
    ident = {"scale identity", false, "segment counts differ"};
  } else {
    for (std::size_t k = 0; k < na.size(); ++k) {
      bool same = na[k].start == nb[k].start && na[k].end == nb[k].end &&
                  na[k].alloc.rates.size() == nb[k].alloc.rates.size();
      for (std::size_t m = 0; same && m < na[k].alloc.rates.size(); ++m)
        same = na[k].alloc.rates[m].first == nb[k].alloc.rates[m].first &&
               na[k].alloc.rates[m].second == (1 + rep.delta) * nb[k].alloc.rates[m].second;
      if (!same) {
        ident = {"scale identity", false, "segment " + std::to_string(k) + " at " + to_string(na[k].start)};
        break;
      }
    }
  }
  if (ident.pass && fast.completions != scaled.completions) ident = {"scale identity", false, "completions differ"};
  rep.checks.push_back(ident);

  auto ts = merged_times({&slf, &fast, &scaled, &setfi});
  auto es = elapsed_series(scaled, ts);
  auto ei = elapsed_series(setfi, ts);
  CheckResult dom{"SETFI elapsed dominance", true, ""};
  CheckResult lo{"|SETF_J'| <= |SETFI_J',I|", true, ""};
  CheckResult hi{"|SETFI_J',I| <= |SLF_J|", true, ""};
  CheckResult chain{"|SETF_J,1+delta| <= |SLF_J|", true, ""};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const Rat& t = ts[k];
    ChainRow row{t, active_count(fast, t), active_count(scaled, t), active_count(setfi, t), active_count(slf, t)};
    auto mark = [&](CheckResult& c, bool ok, const std::string& what) {
      if (ok || !c.pass) return;
      c.pass = false;
      c.detail = what + " at t=" + to_string(t);
      if (!rep.witness_time) rep.witness_time = t;
    };
    for (const auto& [id, v] : ei[k]) mark(dom, v <= es[k].at(id), "job " + std::to_string(id));
    mark(lo, row.setf_scaled <= row.setfi, std::to_string(row.setf_scaled) + " > " + std::to_string(row.setfi));
    mark(hi, row.setfi <= row.slf, std::to_string(row.setfi) + " > " + std::to_string(row.slf));
    mark(chain, row.setf_fast <= row.slf, std::to_string(row.setf_fast) + " > " + std::to_string(row.slf));
    rep.rows.push_back(row);
  }
  rep.checks.push_back(dom);
  rep.checks.push_back(lo);
  rep.checks.push_back(hi);
  rep.checks.push_back(chain);
  return rep;
}

std::optional<Rat> setf_speed_violation(const Instance& inst, const Rat& eps) {
  if (sgn(eps) <= 0) throw InputError("epsilon must be positive");
  Schedule fast = simulate(inst, Policy::setf, 1 + eps);
  Schedule opt = simulate(inst, Policy::srpt);
  Rat bound(1 + ceil_inverse(eps));
  for (const auto& t : merged_times({&fast, &opt}))
    if (Rat(static_cast<long>(active_count(fast, t))) > bound * Rat(static_cast<long>(active_count(opt, t))))
      return t;
  return std::nullopt;
}

}  // namespace slf
