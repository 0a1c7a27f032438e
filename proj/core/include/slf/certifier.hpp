// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slf/assignment.hpp"
#include "slf/instance.hpp"
#include "slf/sim.hpp"

namespace slf {

struct WorkSplit {
  Rat s;
  Rat ell;
  Rat gamma;
  JobId leader = 0;
  std::optional<JobId> z;  // last job OPT touched before ell
  std::map<JobId, Rat> delta, tau, tau_star;
  Rat delta_total, tau_total, tau_star_total;
  Rat nu, nu_star;
  std::set<JobId> j_new, O, A, O_plus, A_plus, D, K_s, U_s, K_ell;
};

struct IterationRecord {
  std::string kind;  // known-run | move | update | final-arrivals
  Rat s;
  Rat s_next;
  std::optional<JobId> leader;
  std::optional<Rat> b_s;
  std::optional<Rat> ell_s;
  std::optional<std::pair<Rat, Rat>> move;  // MoveJobs(x, y)
  std::vector<JobId> moved;
  std::string branch;  // split | update1 | update2
  bool inv1 = false, inv2 = false, inv3 = false;
  Rat phi;  // prefix expansion of the assignment produced by this step
};

struct Certificate {
  Instance original;
  Instance transformed;
  Rat target_time;
  AssignmentChecked assignment;
  std::vector<IterationRecord> transcript;
};

struct CounterexampleReport {
  std::string check;
  std::string detail;
  Rat s;
  Instance transformed;
  std::vector<IterationRecord> transcript;
};

class CertificationFailure : public std::runtime_error {
 public:
  explicit CertificationFailure(CounterexampleReport r)
      : std::runtime_error(r.check + ": " + r.detail), report(std::move(r)) {}
  CounterexampleReport report;
};

Instance move_jobs(const Instance& inst, const Rat& x, const Rat& y);

// The Fast-Forward preconditions, the SLF-at-ℓ lemma, the Fact identities and the
// τ/Δ case table are all checked; a failure throws CertificationFailure.
WorkSplit compute_work_split(const Instance& inst, const Rat& s, const Rat& ell, const std::set<JobId>& j_new);

// σ must be the canonical assignment at s right before J_new arrives.
Graph update_valid_assignment(const Instance& inst, const std::set<JobId>& j_new, const Rat& s, const Rat& ell,
                              const Graph& sigma);

Certificate create_valid_assignment(const Instance& inst, const Rat& t);

bool check_t_equivalence(const Instance& j, const Instance& j_prime, const Rat& t);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
};

VerifyReport verify_certificate(const Certificate& cert);

}  // namespace slf
