// SPDX-License-Identifier: Apache-2.0
#include "slf/sim.hpp"

#include <algorithm>
#include <stdexcept>

#include "slf/policies.hpp"

namespace slf {

std::string policy_name(Policy p) {
  switch (p) {
    case Policy::slf: return "slf";
    case Policy::srpt: return "srpt";
    case Policy::setf: return "setf";
    case Policy::rr: return "rr";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  if (name == "slf") return Policy::slf;
  if (name == "srpt") return Policy::srpt;
  if (name == "setf") return Policy::setf;
  if (name == "rr") return Policy::rr;
  throw InputError("unknown policy '" + name + "'");
}

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::arrival: return "arrival";
    case EventKind::known: return "known";
    case EventKind::completion: return "completion";
    case EventKind::mode_switch: return "mode-switch";
    case EventKind::forbidden_start: return "forbidden-start";
    case EventKind::forbidden_end: return "forbidden-end";
  }
  return "?";
}

Rat Allocation::rate_of(JobId id) const {
  auto it = std::lower_bound(rates.begin(), rates.end(), id,
                             [](const auto& p, JobId v) { return p.first < v; });
  if (it != rates.end() && it->first == id) return it->second;
  return 0;
}

Rat Allocation::total() const {
  Rat s = 0;
  for (const auto& [id, r] : rates) s += r;
  return s;
}

IntervalSet::IntervalSet(std::vector<std::pair<Rat, Rat>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  for (auto& [a, b] : intervals) {
    if (!(a < b)) throw InputError("interval [" + to_string(a) + "," + to_string(b) + ") is empty");
    if (!iv_.empty() && a <= iv_.back().second) {
      if (b > iv_.back().second) iv_.back().second = b;
    } else {
      iv_.emplace_back(a, b);
    }
  }
}

bool IntervalSet::contains(const Rat& t) const {
  for (const auto& [a, b] : iv_)
    if (a <= t && t < b) return true;
  return false;
}

bool IntervalSet::is_start(const Rat& t) const {
  for (const auto& [a, b] : iv_)
    if (a == t) return true;
  return false;
}

bool IntervalSet::is_end(const Rat& t) const {
  for (const auto& [a, b] : iv_)
    if (b == t) return true;
  return false;
}

std::optional<Rat> IntervalSet::next_boundary_after(const Rat& t) const {
  for (const auto& [a, b] : iv_) {
    if (t < a) return a;
    if (t < b) return b;
  }
  return std::nullopt;
}

Rat IntervalSet::measure_between(const Rat& lo, const Rat& hi) const {
  Rat m = 0;
  for (const auto& [a, b] : iv_) {
    const Rat& x = max_rat(a, lo);
    const Rat& y = min_rat(b, hi);
    if (x < y) m += y - x;
  }
  return m;
}

const Job& Schedule::job(JobId id) const {
  for (const auto& j : jobs)
    if (j.id == id) return j;
  throw std::out_of_range("no job " + std::to_string(id) + " in schedule");
}

// ---------------------------------------------------------------------------

Simulator::Simulator(const Instance& inst, Policy policy, SimOptions opts)
    : policy_(policy), opts_(std::move(opts)), eps_(inst.epsilon) {
  if (opts_.speed <= 0) throw InputError("speed must be positive");
  sched_.policy = policy;
  sched_.epsilon = eps_;
  sched_.speed = opts_.speed;
  sched_.initial_elapsed = opts_.initial_elapsed;
  for (const auto& j : inst.jobs) add_job(j);
}

void Simulator::add_job(const Job& job) {
  if (index_.count(job.id)) throw InputError("duplicate job id " + std::to_string(job.id));
  if (job.release.time < now_)
    throw std::logic_error("job " + std::to_string(job.id) + " released in the past");
  if (job.release.time == now_) settled_ = false;
  if (!job.declared && policy_ == Policy::srpt)
    throw InputError("SRPT cannot run undeclared job " + std::to_string(job.id));
  Rec r;
  r.job = job;
  if (job.declared) r.threshold = (1 - eps_) * job.size;
  recs_.push_back(std::move(r));
  std::size_t idx = recs_.size() - 1;
  index_[job.id] = idx;
  auto less = [this](std::size_t a, std::size_t b) {
    const Job& x = recs_[a].job;
    const Job& y = recs_[b].job;
    if (!(x.release == y.release)) return x.release < y.release;
    return x.id < y.id;
  };
  auto pos = std::upper_bound(pending_.begin() + static_cast<std::ptrdiff_t>(pending_pos_),
                              pending_.end(), idx, less);
  pending_.insert(pos, idx);
  sched_.jobs.push_back(job);
}

void Simulator::declare(JobId id, const Rat& size) {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("declare: no job " + std::to_string(id));
  Rec& r = recs_[it->second];
  if (r.job.declared) throw std::logic_error("job " + std::to_string(id) + " already declared");
  if (size <= 0 || size < r.elapsed) throw std::logic_error("declared size below elapsed work");
  r.job.size = size;
  r.job.declared = true;
  r.threshold = (1 - eps_) * size;
  for (auto& j : sched_.jobs)
    if (j.id == id) {
      j.size = size;
      j.declared = true;
    }
  for (std::size_t k = 0; k < view_.size(); ++k)
    if (view_[k].id == id) {
      view_[k].declared = true;
      view_[k].remaining = size - view_[k].elapsed;
    }
  settled_ = false;
}

void Simulator::admit(std::size_t idx) {
  Rec& r = recs_[idx];
  r.released = true;
  if (auto it = opts_.initial_elapsed.find(r.job.id); it != opts_.initial_elapsed.end())
    r.elapsed = it->second;
  sched_.events.push_back({now_, EventKind::arrival, r.job.id});
  JobState s;
  s.id = r.job.id;
  s.elapsed = r.elapsed;
  s.declared = r.job.declared;
  if (r.job.declared) s.remaining = r.job.size - r.elapsed;
  view_.push_back(std::move(s));
  view_rec_.push_back(idx);
}

void Simulator::refresh_flags() {
  std::size_t w = 0;
  for (std::size_t k = 0; k < view_.size(); ++k) {
    Rec& r = recs_[view_rec_[k]];
    bool keep = true;
    if (r.job.declared) {
      if (!r.known && r.elapsed >= r.threshold) {
        r.known = true;
        view_[k].known = true;
        sched_.known_times[r.job.id] = now_;
        sched_.events.push_back({now_, EventKind::known, r.job.id});
      }
      if (r.elapsed >= r.job.size) {
        r.done = true;
        keep = false;
        sched_.completions[r.job.id] = now_;
        sched_.events.push_back({now_, EventKind::completion, r.job.id});
      }
    }
    if (keep) {
      if (w != k) {
        view_[w] = std::move(view_[k]);
        view_rec_[w] = view_rec_[k];
      }
      ++w;
    }
  }
  view_.resize(w);
  view_rec_.resize(w);
}

Allocation Simulator::allocate() const {
  if (view_.empty() || opts_.forbidden.contains(now_)) return {};
  return slf::allocate(policy_, view_, eps_, opts_.speed);
}

const Allocation& Simulator::settle() {
  if (settled_) return alloc_;
  if (crossing_hit_) {
    sched_.events.push_back({now_, EventKind::mode_switch, 0});
    crossing_hit_ = false;
  }
  if (opts_.forbidden.is_end(now_)) sched_.events.push_back({now_, EventKind::forbidden_end, 0});
  if (opts_.forbidden.is_start(now_)) sched_.events.push_back({now_, EventKind::forbidden_start, 0});
  while (pending_pos_ < pending_.size()) {
    std::size_t idx = pending_[pending_pos_];
    const Rat& q = recs_[idx].job.release.time;
    if (q > now_) break;
    if (q < now_) throw std::logic_error("missed an arrival");
    admit(idx);
    ++pending_pos_;
  }
  refresh_flags();
  alloc_ = allocate();
  settled_ = true;
  return alloc_;
}

// Time until the policy's choice set changes without any job event.
std::optional<Rat> Simulator::crossing_dt() const {
  if (alloc_.empty()) return std::nullopt;
  bool pool = policy_ == Policy::setf || policy_ == Policy::slf;
  if (!pool) return std::nullopt;
  const JobId first = alloc_.rates.front().first;
  const Rat& rho = alloc_.rates.front().second;
  const JobState* head = nullptr;
  for (const auto& s : view_)
    if (s.id == first) head = &s;
  if (policy_ == Policy::slf && head->known) return std::nullopt;
  const Rat& e0 = head->elapsed;
  std::optional<Rat> best;
  const Rat* next_level = nullptr;
  const Rat* min_known = nullptr;
  for (const auto& s : view_) {
    if (policy_ == Policy::slf && s.known) {
      if (!min_known || s.remaining < *min_known) min_known = &s.remaining;
      continue;
    }
    if (s.elapsed > e0 && (!next_level || s.elapsed < *next_level)) next_level = &s.elapsed;
  }
  if (next_level) best = (*next_level - e0) / rho;
  if (min_known && eps_ > 0 && eps_ < 1) {
    Rat dt = (*min_known * (1 - eps_) / eps_ - e0) / rho;
    if (dt > 0 && (!best || dt < *best)) best = dt;
  }
  return best;
}

std::optional<Rat> Simulator::next_event() {
  settle();
  std::optional<Rat> best;
  auto offer = [&](const Rat& t) {
    if (!best || t < *best) best = t;
  };
  if (pending_pos_ < pending_.size()) offer(recs_[pending_[pending_pos_]].job.release.time);
  bool work_left = !view_.empty() || pending_pos_ < pending_.size();
  if (work_left)
    if (auto b = opts_.forbidden.next_boundary_after(now_)) offer(*b);
  if (!alloc_.empty()) {
    // all positive rates are equal for the built-in policies; keep one minimum gap per rate
    std::vector<std::pair<const Rat*, Rat>> gaps;
    std::size_t k = 0;
    for (const auto& [id, rate] : alloc_.rates) {
      while (view_[k].id != id) {
        ++k;
        if (k == view_.size()) k = 0;
      }
      const Rec& r = recs_[view_rec_[k]];
      if (!r.job.declared) continue;
      Rat gap = r.known ? Rat(r.job.size - r.elapsed) : Rat(r.threshold - r.elapsed);
      auto g = std::find_if(gaps.begin(), gaps.end(), [&](const auto& p) { return *p.first == rate; });
      if (g == gaps.end())
        gaps.emplace_back(&rate, std::move(gap));
      else if (gap < g->second)
        g->second = std::move(gap);
    }
    for (const auto& [rate, gap] : gaps) offer(now_ + gap / *rate);
    if (auto c = crossing_dt()) offer(now_ + *c);
  }
  return best;
}

void Simulator::advance(const std::optional<Rat>& limit) {
  auto ne = next_event();
  Rat target;
  if (ne && limit)
    target = min_rat(*ne, *limit);
  else if (ne)
    target = *ne;
  else if (limit)
    target = *limit;
  else
    throw std::logic_error("advance: nothing to wait for");
  if (target < now_) throw std::logic_error("advance: target in the past");
  if (target == now_) return;
  if (ne && !alloc_.empty()) {
    auto c = crossing_dt();
    crossing_hit_ = c && now_ + *c == target;
  }
  Rat dt = target - now_;
  std::size_t k = 0;
  for (const auto& [id, rate] : alloc_.rates) {
    while (view_[k].id != id) {
      ++k;
      if (k == view_.size()) k = 0;
    }
    Rat work = rate * dt;
    recs_[view_rec_[k]].elapsed += work;
    view_[k].elapsed += work;
    if (view_[k].declared) view_[k].remaining -= work;
  }
  if (opts_.record_segments) {
    if (!sched_.segments.empty() && sched_.segments.back().end == now_ && sched_.segments.back().alloc.empty() &&
        alloc_.empty())
      sched_.segments.back().end = target;
    else
      sched_.segments.push_back({now_, target, alloc_});
  }
  now_ = std::move(target);
  sched_.horizon = now_;
  settled_ = false;
}

void Simulator::run_until(const Rat& t) {
  while (now_ < t) advance(t);
  settle();
}

void Simulator::run_to_end() {
  while (next_event()) advance();
  settle();
}

bool Simulator::finished() {
  settle();
  return view_.empty() && pending_pos_ == pending_.size();
}

const std::vector<JobState>& Simulator::active() {
  settle();
  return view_;
}

std::size_t Simulator::active_count() { return active().size(); }

Rat Simulator::elapsed(JobId id) const { return recs_.at(index_.at(id)).elapsed; }

bool Simulator::completed(JobId id) const { return recs_.at(index_.at(id)).done; }

Schedule Simulator::take_schedule() {
  sched_.horizon = now_;
  return std::move(sched_);
}

Schedule simulate(const Instance& inst, Policy policy, const SimOptions& opts) {
  Simulator sim(inst, policy, opts);
  sim.run_to_end();
  return sim.take_schedule();
}

Schedule simulate(const Instance& inst, Policy policy, const Rat& speed, const IntervalSet& forbidden) {
  SimOptions o;
  o.speed = speed;
  o.forbidden = forbidden;
  return simulate(inst, policy, o);
}

// ---------------------------------------------------------------------------

std::map<JobId, Rat> elapsed_at(const Schedule& sched, const Rat& t) {
  std::map<JobId, Rat> e;
  for (const auto& j : sched.jobs) {
    auto it = sched.initial_elapsed.find(j.id);
    e[j.id] = it == sched.initial_elapsed.end() ? Rat(0) : it->second;
  }
  for (const auto& seg : sched.segments) {
    if (!(seg.start < t)) break;
    Rat len = min_rat(seg.end, t) - seg.start;
    for (const auto& [id, r] : seg.alloc.rates) e[id] += r * len;
  }
  return e;
}

std::map<JobId, JobState> state_at(const Schedule& sched, const Instance& inst, const Rat& t) {
  const Rat& eps = inst.epsilon;
  auto e = elapsed_at(sched, t);
  std::map<JobId, JobState> out;
  for (const auto& j : sched.jobs) {
    if (j.release.time > t) continue;
    auto c = sched.completions.find(j.id);
    if (c != sched.completions.end() && c->second <= t) continue;
    JobState s;
    s.id = j.id;
    s.elapsed = e[j.id];
    s.declared = j.declared;
    if (j.declared) {
      s.remaining = j.size - s.elapsed;
      s.known = s.elapsed >= (1 - eps) * j.size;
    }
    out.emplace(j.id, std::move(s));
  }
  return out;
}

std::size_t active_count(const Schedule& sched, const Rat& t) {
  std::size_t n = 0;
  for (const auto& j : sched.jobs) {
    if (j.release.time > t) continue;
    auto c = sched.completions.find(j.id);
    if (c != sched.completions.end() && c->second <= t) continue;
    ++n;
  }
  return n;
}

std::set<JobId> touched_jobs(const Schedule& sched, const Rat& a, const Rat& b) {
  std::set<JobId> out;
  if (!(a < b)) return out;
  for (const auto& seg : sched.segments) {
    if (!(seg.start < b)) break;
    if (!(a < seg.end)) continue;
    for (const auto& [id, r] : seg.alloc.rates)
      if (r > 0) out.insert(id);
  }
  return out;
}

std::vector<Rat> event_times(const Schedule& sched) {
  std::vector<Rat> ts;
  ts.reserve(2 * sched.segments.size() + sched.jobs.size() + 1);
  for (const auto& seg : sched.segments) {
    ts.push_back(seg.start);
    ts.push_back(seg.end);
  }
  for (const auto& j : sched.jobs) ts.push_back(j.release.time);
  for (const auto& [id, c] : sched.completions) ts.push_back(c);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::vector<Segment> normalized_segments(const Schedule& sched) {
  std::vector<Segment> out;
  for (const auto& seg : sched.segments) {
    if (!out.empty() && out.back().end == seg.start && out.back().alloc == seg.alloc)
      out.back().end = seg.end;
    else
      out.push_back(seg);
  }
  return out;
}

void for_each_segment(const Schedule& sched,
                      const std::function<void(const Segment&, const std::map<JobId, Rat>&)>& fn) {
  std::map<JobId, Rat> e;
  for (const auto& j : sched.jobs) {
    auto it = sched.initial_elapsed.find(j.id);
    e[j.id] = it == sched.initial_elapsed.end() ? Rat(0) : it->second;
  }
  for (const auto& seg : sched.segments) {
    fn(seg, e);
    Rat len = seg.end - seg.start;
    for (const auto& [id, r] : seg.alloc.rates) e[id] += r * len;
  }
}

}  // namespace slf
