// SPDX-License-Identifier: Apache-2.0
#include "slf/policies.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace slf {

namespace {

void require_nonempty(const std::vector<JobState>& s) {
  if (s.empty()) throw std::invalid_argument("allocation requested for an empty active set");
}

Allocation share(std::vector<JobId> ids, const Rat& speed) {
  std::sort(ids.begin(), ids.end());
  Allocation a;
  Rat each = speed / Rat(static_cast<long>(ids.size()));
  a.rates.reserve(ids.size());
  for (JobId id : ids) a.rates.emplace_back(id, each);
  return a;
}

Allocation min_elapsed_pool(const std::vector<JobState>& states, const Rat& speed, bool unknown_only) {
  const Rat* lo = nullptr;
  for (const auto& s : states) {
    if (unknown_only && s.known) continue;
    if (!lo || s.elapsed < *lo) lo = &s.elapsed;
  }
  std::vector<JobId> ids;
  for (const auto& s : states) {
    if (unknown_only && s.known) continue;
    if (s.elapsed == *lo) ids.push_back(s.id);
  }
  return share(std::move(ids), speed);
}

}  // namespace

Rat estimate(const JobState& s, const Rat& eps) {
  if (s.known) return s.remaining;
  if (eps >= 1) throw std::invalid_argument("unknown job with eps = 1");
  return eps / (1 - eps) * s.elapsed;
}

Allocation slf_allocation(const std::vector<JobState>& states, const Rat& eps, const Rat& speed) {
  require_nonempty(states);
  const JobState* best_known = nullptr;
  const Rat* min_unknown = nullptr;
  for (const auto& s : states) {
    if (s.known) {
      if (!best_known || s.remaining < best_known->remaining ||
          (s.remaining == best_known->remaining && s.id < best_known->id))
        best_known = &s;
    } else if (!min_unknown || s.elapsed < *min_unknown) {
      min_unknown = &s.elapsed;
    }
  }
  // known wins ties: r ≤ ε/(1−ε)·e  ⇔  r·(1−ε) ≤ ε·e
  if (best_known && (!min_unknown || best_known->remaining * (1 - eps) <= eps * *min_unknown)) {
    Allocation a;
    a.rates.emplace_back(best_known->id, speed);
    return a;
  }
  return min_elapsed_pool(states, speed, true);
}

Allocation srpt_allocation(const std::vector<JobState>& states, const Rat& speed) {
  require_nonempty(states);
  const JobState* best = nullptr;
  for (const auto& s : states) {
    if (!s.declared) throw std::invalid_argument("SRPT needs declared sizes");
    if (!best || s.remaining < best->remaining || (s.remaining == best->remaining && s.id < best->id))
      best = &s;
  }
  Allocation a;
  a.rates.emplace_back(best->id, speed);
  return a;
}

Allocation setf_allocation(const std::vector<JobState>& states, const Rat& speed) {
  require_nonempty(states);
  return min_elapsed_pool(states, speed, false);
}

Allocation rr_allocation(const std::vector<JobState>& states, const Rat& speed) {
  if (states.empty()) return {};
  std::vector<JobId> ids;
  ids.reserve(states.size());
  for (const auto& s : states) ids.push_back(s.id);
  return share(std::move(ids), speed);
}

Allocation allocate(Policy p, const std::vector<JobState>& states, const Rat& eps, const Rat& speed) {
  switch (p) {
    case Policy::slf: return slf_allocation(states, eps, speed);
    case Policy::srpt: return srpt_allocation(states, speed);
    case Policy::setf: return setf_allocation(states, speed);
    case Policy::rr: return rr_allocation(states, speed);
  }
  throw std::logic_error("unknown policy");
}

namespace {

bool known_at(const Schedule& sched, JobId id, const Rat& t) {
  auto it = sched.known_times.find(id);
  return it != sched.known_times.end() && it->second <= t;
}

bool done_at(const Schedule& sched, JobId id, const Rat& t) {
  auto it = sched.completions.find(id);
  return it != sched.completions.end() && it->second <= t;
}

std::string at(const Rat& t) { return " at t=" + to_string(t); }

}  // namespace

std::optional<std::string> check_slf_argmin(const Schedule& sched) {
  std::optional<std::string> bad;
  for_each_segment(sched, [&](const Segment& seg, const std::map<JobId, Rat>& e) {
    if (bad) return;
    std::vector<JobState> states;
    for (const auto& j : sched.jobs) {
      if (j.release.time > seg.start || done_at(sched, j.id, seg.start)) continue;
      JobState s;
      s.id = j.id;
      s.elapsed = e.at(j.id);
      s.declared = j.declared;
      if (j.declared) s.remaining = j.size - s.elapsed;
      s.known = known_at(sched, j.id, seg.start);
      states.push_back(std::move(s));
    }
    if (states.empty()) {
      if (!seg.alloc.empty()) bad = "allocation with no active job" + at(seg.start);
      return;
    }
    if (!(slf_allocation(states, sched.epsilon, sched.speed) == seg.alloc))
      bad = "segment allocation is not the SLF argmin" + at(seg.start);
  });
  return bad;
}

std::optional<std::string> check_new_job_property(const Schedule& sched) {
  // i unknown at t and t' > t, j released at t, i touched at t' => e_j(t') = e_i(t') or j done.
  std::optional<std::string> bad;
  for_each_segment(sched, [&](const Segment& seg, const std::map<JobId, Rat>& e) {
    if (bad) return;
    const Rat& tp = seg.start;
    for (const auto& [i, rate] : seg.alloc.rates) {
      (void)rate;
      if (known_at(sched, i, tp)) continue;
      const Job& ji = sched.job(i);
      for (const auto& j : sched.jobs) {
        if (j.id == i) continue;
        const Rat& t = j.release.time;
        if (!(t < tp) || t < ji.release.time) continue;
        if (known_at(sched, i, t)) continue;
        if (done_at(sched, j.id, tp)) continue;
        if (e.at(j.id) != e.at(i)) {
          std::ostringstream os;
          os << "job " << j.id << " released at " << t << " has elapsed " << e.at(j.id)
             << " while unknown job " << i << " runs with elapsed " << e.at(i) << at(tp);
          bad = os.str();
          return;
        }
      }
    }
  });
  return bad;
}

std::optional<std::string> check_known_blocks_property(const Schedule& sched) {
  // j known and touched at t' => no unknown-at-t' job released before t' is touched in (t', C_j].
  std::optional<std::string> bad;
  const auto& segs = sched.segments;
  for (std::size_t k = 0; k < segs.size() && !bad; ++k) {
    const Rat& tp = segs[k].start;
    for (const auto& [j, rate] : segs[k].alloc.rates) {
      (void)rate;
      if (!known_at(sched, j, tp)) continue;
      auto cj = sched.completions.find(j);
      Rat end = cj == sched.completions.end() ? sched.horizon : cj->second;
      for (std::size_t m = k; m < segs.size() && segs[m].start < end && !bad; ++m) {
        for (const auto& [o, r2] : segs[m].alloc.rates) {
          (void)r2;
          if (o == j) continue;
          const Job& jo = sched.job(o);
          if (!(jo.release.time < tp) || known_at(sched, o, tp)) continue;
          std::ostringstream os;
          os << "unknown job " << o << " touched at " << segs[m].start << " while known job " << j
             << " (touched at " << tp << ") is unfinished";
          bad = os.str();
          break;
        }
      }
    }
  }
  return bad;
}

}  // namespace slf
