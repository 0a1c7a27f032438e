// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slf/instance.hpp"
#include "slf/rat.hpp"

namespace slf {

enum class Policy { slf, srpt, setf, rr };

std::string policy_name(Policy p);
Policy parse_policy(const std::string& name);  // throws InputError

struct JobState {
  JobId id = 0;
  Rat elapsed;
  Rat remaining;  // unused when !declared
  bool known = false;
  bool declared = true;
};

struct Allocation {
  std::vector<std::pair<JobId, Rat>> rates;  // positive rates only, ascending id

  Rat rate_of(JobId id) const;
  Rat total() const;
  bool empty() const { return rates.empty(); }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Disjoint, sorted, non-empty [start, end) intervals. Overlapping or touching input is merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<Rat, Rat>> intervals);

  const std::vector<std::pair<Rat, Rat>>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  bool contains(const Rat& t) const;
  bool is_start(const Rat& t) const;
  bool is_end(const Rat& t) const;
  std::optional<Rat> next_boundary_after(const Rat& t) const;
  Rat measure_between(const Rat& a, const Rat& b) const;

 private:
  std::vector<std::pair<Rat, Rat>> iv_;
};

enum class EventKind { arrival, known, completion, mode_switch, forbidden_start, forbidden_end };
std::string event_kind_name(EventKind k);

struct Event {
  Rat t;
  EventKind kind;
  JobId job = 0;  // 0 for events not tied to a job
};

struct Segment {
  Rat start;
  Rat end;
  Allocation alloc;
};

struct Schedule {
  Policy policy = Policy::slf;
  Rat epsilon;
  Rat speed{1};
  std::vector<Job> jobs;  // sizes as finally declared
  std::map<JobId, Rat> initial_elapsed;
  std::vector<Segment> segments;
  std::map<JobId, Rat> completions;
  std::map<JobId, Rat> known_times;
  std::vector<Event> events;
  Rat horizon;  // time at which simulation stopped

  const Job& job(JobId id) const;
};

struct SimOptions {
  Rat speed{1};
  IntervalSet forbidden;
  std::map<JobId, Rat> initial_elapsed;  // water-filling style starting levels
  bool record_segments = true;
};

// Stepping simulator. Jobs can be added and sizes declared while running,
// which is how the adaptive adversary plays against a policy.
class Simulator {
 public:
  Simulator(const Instance& inst, Policy policy, SimOptions opts = {});

  const Rat& now() const { return now_; }
  void add_job(const Job& job);
  void declare(JobId id, const Rat& size);

  // Processes every event at now() and returns the allocation used from now() on.
  const Allocation& settle();
  // Next time something changes, or nullopt when the machine will stay idle forever.
  std::optional<Rat> next_event();
  // Moves to min(next_event(), limit).
  void advance(const std::optional<Rat>& limit = std::nullopt);
  void run_until(const Rat& t);
  void run_to_end();
  bool finished();

  const std::vector<JobState>& active();
  bool has_job(JobId id) const { return index_.count(id) != 0; }
  Rat elapsed(JobId id) const;
  bool completed(JobId id) const;
  std::size_t active_count();

  const Schedule& schedule() const { return sched_; }
  Schedule take_schedule();

 private:
  struct Rec {
    Job job;
    Rat elapsed;
    Rat threshold;  // (1-eps) p
    bool released = false;
    bool known = false;
    bool done = false;
  };

  void admit(std::size_t idx);
  void refresh_flags();
  Allocation allocate() const;
  std::optional<Rat> crossing_dt() const;

  Policy policy_;
  SimOptions opts_;
  Rat eps_;
  Rat now_{0};
  std::vector<Rec> recs_;
  std::unordered_map<JobId, std::size_t> index_;
  std::vector<std::size_t> pending_;  // sorted by release tag then id
  std::size_t pending_pos_ = 0;
  std::vector<JobState> view_;            // active jobs
  std::vector<std::size_t> view_rec_;     // view_ index -> recs_ index
  Allocation alloc_;
  bool settled_ = false;
  bool crossing_hit_ = false;
  Schedule sched_;
};

Schedule simulate(const Instance& inst, Policy policy, const SimOptions& opts);
Schedule simulate(const Instance& inst, Policy policy, const Rat& speed = Rat(1),
                  const IntervalSet& forbidden = IntervalSet());

// Elapsed time of every job at t (released or not).
std::map<JobId, Rat> elapsed_at(const Schedule& sched, const Rat& t);
// Active jobs at t: released by t (arrivals at t included), not completed by t.
std::map<JobId, JobState> state_at(const Schedule& sched, const Instance& inst, const Rat& t);
std::size_t active_count(const Schedule& sched, const Rat& t);
// Jobs with positive rate on a positive-measure part of (a, b].
std::set<JobId> touched_jobs(const Schedule& sched, const Rat& a, const Rat& b);
// Sorted, de-duplicated segment boundaries and release times.
std::vector<Rat> event_times(const Schedule& sched);
// Adjacent segments with equal allocations are fused.
std::vector<Segment> normalized_segments(const Schedule& sched);
// Walks the segments handing out elapsed times at each segment start.
void for_each_segment(const Schedule& sched,
                      const std::function<void(const Segment&, const std::map<JobId, Rat>&)>& fn);

}  // namespace slf
